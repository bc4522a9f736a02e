#pragma once

// The truncated bigraded DG algebra T(S^{-1} m#) dual to the bar construction.
//
// Coordinate conventions (fixed here once, everything downstream relies on
// them):
//  * T^n_{-s} carries the word basis dual to the monomial basis of
//    (m^{(x)n})_s; words are ordered by Adams composition (lex), then
//    per-factor index (row-major).
//  * bar differential on (m^{(x)n})_s:
//      d(a_1 (x) ... (x) a_n) = sum_{j=1}^{n-1} (-1)^j
//                               a_1 (x) ... (x) a_j a_{j+1} (x) ... (x) a_n
//  * cobar differential on word coordinates: del^n = -(bar d^{-(n+1)})^T.
//    This is the matrix of f |-> -(-1)^{deg f} f o d expressed in the letter-
//    tensor basis, for which the product lambda_2 is plain concatenation; the
//    sign twist of the dual-basis identification cancels the (-1)^{deg f}.
//    With these two choices del is a degree-1 derivation for concatenation
//    and G^2 = -(xi_s)^T holds literally.
//  * Koszul signs use homological degree only; Adams degree contributes none.

#include "aext/graded_algebra.hpp"
#include "aext/truncation.hpp"

#include <map>
#include <optional>
#include <vector>

namespace aext {

template <class K> struct FieldCost { static constexpr double factor = 1.0; };
template <> struct FieldCost<Rat> { static constexpr double factor = 16.0; };

// Dense element of one bidegree of the cobar complex.
template <class K> struct CobarVec {
  int hom = 0;
  int adams = 0;  // stored positive: the element lives in Adams degree -adams
  Vec<K> v;
  bool zero() const {
    for (int i = 0; i < v.size(); ++i)
      if (!is_zero(v(i))) return false;
    return true;
  }
};

// Word basis of T^n_{-s}.
struct TensorShape {
  int n = 0, s = 0;
  std::vector<std::vector<int>> comps;  // Adams compositions, lex ascending
  std::vector<int> offsets;
  std::vector<int> block_dims;
  int dim = 0;
  std::map<std::vector<int>, int> comp_index;
};

template <class K>
class CobarComplex {
 public:
  CobarComplex(const GradedAlgebra<K>* alg, int max_hom, int max_adams,
               double cell_budget = 2.0e9)
      : alg_(alg), max_hom_(max_hom), max_adams_(max_adams), budget_(cell_budget) {
    int rows = max_hom_ + 2, cols = max_adams_ + 1;
    shapes_.resize(rows * cols);
    bar_cache_.resize(rows * cols);
    del_cache_.resize(rows * cols);
  }

  const GradedAlgebra<K>& algebra() const { return *alg_; }
  int max_hom() const { return max_hom_; }
  int max_adams() const { return max_adams_; }
  double budget() const { return budget_; }
  double cost_factor() const { return FieldCost<K>::factor; }

  // dim T^n_{-s} without materializing anything
  long long dim(int n, int s) const {
    if (n == 0) return s == 0 ? 1 : 0;
    if (s < n) return 0;
    long long total = 0;
    for (int i = 1; i <= s - (n - 1); ++i)
      if (alg_->dimA(i) > 0) total += alg_->dimA(i) * dim(n - 1, s - i);
    return total;
  }

  void check_range(int n, int s) const {
    if (s > max_adams_) throw Truncated(n, s, "Adams degree beyond cutoff");
    if (n > max_hom_ + 1) throw Truncated(n, s, "homological degree beyond cutoff");
  }

  const TensorShape& shape(int n, int s) const {
    check_range(n, s);
    auto& slot = shapes_[idx(n, s)];
    if (!slot) {
      TensorShape sh;
      sh.n = n;
      sh.s = s;
      std::vector<int> cur;
      enumerate(n, s, cur, sh);
      slot = std::move(sh);
    }
    return *slot;
  }

  // decode dense index -> (composition id, per-factor indices)
  std::pair<int, std::vector<int>> decode(const TensorShape& sh, int dense) const {
    int c = static_cast<int>(std::upper_bound(sh.offsets.begin(), sh.offsets.end(), dense) -
                             sh.offsets.begin()) - 1;
    int rem = dense - sh.offsets[c];
    const auto& comp = sh.comps[c];
    std::vector<int> fidx(comp.size());
    for (int t = static_cast<int>(comp.size()) - 1; t >= 0; --t) {
      int ad = alg_->dimA(comp[t]);
      fidx[t] = rem % ad;
      rem /= ad;
    }
    return {c, std::move(fidx)};
  }

  int encode(const TensorShape& sh, const std::vector<int>& comp,
             const std::vector<int>& fidx) const {
    int c = sh.comp_index.at(comp);
    int idx = 0;
    for (std::size_t t = 0; t < comp.size(); ++t)
      idx = idx * alg_->dimA(comp[t]) + fidx[t];
    return sh.offsets[c] + idx;
  }

  // bar differential d^{-n}_s : (m^{(x)n})_s -> (m^{(x)(n-1)})_s
  const Mat<K>& bar_d(int n, int s) const {
    check_range(n, s);
    auto& slot = bar_cache_[idx(n, s)];
    if (slot) return *slot;
    const TensorShape& src = shape(n, s);
    const TensorShape& dst = shape(n - 1, s);
    Mat<K> m = Mat<K>::Zero(dst.dim, src.dim);
    for (std::size_t c = 0; c < src.comps.size(); ++c) {
      const auto& comp = src.comps[c];
      std::vector<int> fidx(comp.size(), 0);
      for (int dense = src.offsets[c]; dense < src.offsets[c] + src.block_dims[c];
           ++dense) {
        {
          int rem = dense - src.offsets[c];
          for (int t = n - 1; t >= 0; --t) {
            int ad = alg_->dimA(comp[t]);
            fidx[t] = rem % ad;
            rem /= ad;
          }
        }
        for (int j = 0; j + 1 < n; ++j) {
          // merge factors j, j+1; sign (-1)^{j+1}
          const Vec<K>& prod =
              alg_->product(comp[j], fidx[j], comp[j + 1], fidx[j + 1]);
          std::vector<int> mcomp;
          mcomp.reserve(n - 1);
          for (int t = 0; t < j; ++t) mcomp.push_back(comp[t]);
          mcomp.push_back(comp[j] + comp[j + 1]);
          for (int t = j + 2; t < n; ++t) mcomp.push_back(comp[t]);
          std::vector<int> midx(n - 1);
          for (int t = 0; t < j; ++t) midx[t] = fidx[t];
          for (int t = j + 2; t < n; ++t) midx[t - 1] = fidx[t];
          bool neg = (j % 2 == 0);  // (-1)^{j+1} with j zero-based
          for (int b = 0; b < prod.size(); ++b) {
            if (is_zero(prod(b))) continue;
            midx[j] = b;
            int row = encode(dst, mcomp, midx);
            m(row, dense) += neg ? -prod(b) : prod(b);
          }
        }
      }
    }
    slot = std::move(m);
    return *slot;
  }

  // cobar differential del^n_{-s} : T^n_{-s} -> T^{n+1}_{-s}
  const Mat<K>& del(int n, int s) const {
    check_range(n + 1, s);
    auto& slot = del_cache_[idx(n, s)];
    if (slot) return *slot;
    Mat<K> m = -bar_d(n + 1, s).transpose();
    slot = std::move(m);
    return *slot;
  }

  CobarVec<K> apply_del(const CobarVec<K>& x) const {
    const Mat<K>& d = del(x.hom, x.adams);
    return CobarVec<K>{x.hom + 1, x.adams, d * x.v};
  }

  CobarVec<K> zero_vec(int n, int s) const {
    return CobarVec<K>{n, s, Vec<K>::Zero(shape(n, s).dim)};
  }

  // concatenation product (the unit is the empty word at bidegree (0, 0))
  CobarVec<K> concat(const CobarVec<K>& a, const CobarVec<K>& b) const {
    if (a.hom == 0) return CobarVec<K>{b.hom, a.adams + b.adams, b.v * a.v(0)};
    if (b.hom == 0) return CobarVec<K>{a.hom, a.adams + b.adams, a.v * b.v(0)};
    const TensorShape& sa = shape(a.hom, a.adams);
    const TensorShape& sb = shape(b.hom, b.adams);
    CobarVec<K> out = zero_vec(a.hom + b.hom, a.adams + b.adams);
    const TensorShape& so = shape(out.hom, out.adams);
    for (int i = 0; i < sa.dim; ++i) {
      if (is_zero(a.v(i))) continue;
      auto [ca, fa] = decode(sa, i);
      for (int j = 0; j < sb.dim; ++j) {
        if (is_zero(b.v(j))) continue;
        auto [cb, fb] = decode(sb, j);
        std::vector<int> comp = sa.comps[ca];
        comp.insert(comp.end(), sb.comps[cb].begin(), sb.comps[cb].end());
        std::vector<int> fidx = fa;
        fidx.insert(fidx.end(), fb.begin(), fb.end());
        out.v(encode(so, comp, fidx)) += a.v(i) * b.v(j);
      }
    }
    return out;
  }

  // human-readable word expansion of a cobar vector
  std::string str(const CobarVec<K>& x) const {
    if (x.hom == 0) return FieldOps<K>::str(x.v(0));
    const TensorShape& sh = shape(x.hom, x.adams);
    std::string out;
    for (int i = 0; i < sh.dim; ++i) {
      if (is_zero(x.v(i))) continue;
      auto [c, fidx] = decode(sh, i);
      if (!out.empty()) out += " + ";
      out += FieldOps<K>::str(x.v(i)) + "*[";
      for (std::size_t t = 0; t < fidx.size(); ++t) {
        if (t) out += "|";
        out += alg_->basis(sh.comps[c][t]).labels[fidx[t]] + "#";
      }
      out += "]";
    }
    return out.empty() ? "0" : out;
  }

  // Estimated scalar-op cost guard for one reduction of an r x c matrix.
  void charge(int n, int s, double ops) const {
    if (ops * FieldCost<K>::factor > budget_)
      throw Truncated(n, s, "bidegree exceeds the cell cost budget");
  }

 private:
  int idx(int n, int s) const { return n * (max_adams_ + 1) + s; }

  void enumerate(int n, int s, std::vector<int>& cur, TensorShape& sh) const {
    if (n == 0) {
      if (s == 0) {
        int bd = 1;
        for (int i : cur) bd *= alg_->dimA(i);
        sh.comps.push_back(cur);
        sh.offsets.push_back(sh.dim);
        sh.block_dims.push_back(bd);
        sh.comp_index.emplace(cur, static_cast<int>(sh.comps.size()) - 1);
        sh.dim += bd;
      }
      return;
    }
    for (int i = 1; i <= s - (n - 1); ++i) {
      if (alg_->dimA(i) <= 0) continue;
      cur.push_back(i);
      enumerate(n - 1, s - i, cur, sh);
      cur.pop_back();
    }
  }

  const GradedAlgebra<K>* alg_;
  int max_hom_, max_adams_;
  double budget_;
  mutable std::vector<std::optional<TensorShape>> shapes_;
  mutable std::vector<std::optional<Mat<K>>> bar_cache_;
  mutable std::vector<std::optional<Mat<K>>> del_cache_;
};

// Koszul sign exponent for applying f_1 (x) ... (x) f_m (hom degrees fdeg)
// to blocks of hom degrees xdeg: sum over pairs l > k of fdeg[l] * xdeg[k].
inline int koszul_sign_exp(const std::vector<int>& fdeg, const std::vector<int>& xdeg) {
  int e = 0;
  for (std::size_t l = 1; l < fdeg.size(); ++l)
    for (std::size_t k = 0; k < l; ++k) e += fdeg[l] * xdeg[k];
  return e & 1;
}

}  // namespace aext
