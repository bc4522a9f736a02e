#pragma once

// Degreewise model of A = k<Q>/(R): graded bases by row reduction of the
// ideal's degree pieces over the deglex monomial list, normal forms, the
// indecomposable split A_s = Q_s (+) D_s, the section xi_s of -mu_s, the
// iterated section theta_s into the tensor algebra on Q, and nu_s = mu o
// theta_s. Everything is built inductively in s and cached; degree s only
// depends on degrees below it.

#include "aext/linalg.hpp"
#include "aext/monomial.hpp"
#include "aext/presentation.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace aext {

// Basis layout of the tensor algebra on Q in one Adams degree: compositions
// (i_1,...,i_n) of s with every dim Q_{i_t} > 0, grouped by tensor length n
// ascending, compositions lex, per-factor Q-indices row-major.
struct TqShape {
  std::vector<std::vector<int>> comps;
  std::vector<int> offsets;  // dense offset of each composition block
  std::vector<int> block_dims;
  int dim = 0;
  std::map<std::vector<int>, int> comp_index;

  int index_of(int comp, const std::vector<int>& factor_idx,
               const std::vector<int>& factor_dims) const {
    int idx = 0;
    for (std::size_t t = 0; t < factor_idx.size(); ++t)
      idx = idx * factor_dims[t] + factor_idx[t];
    return offsets[comp] + idx;
  }
};

template <class K>
class GradedAlgebra {
 public:
  GradedAlgebra(AlgebraPresentation pres, int max_adams)
      : pres_(std::move(pres)), ops_(pres_.field_p), max_adams_(max_adams) {
    names_ = pres_.gen_names();
    deg_.resize(max_adams_ + 1);
    for (int s = 0; s <= max_adams_; ++s) build_degree(s);
  }

  const AlgebraPresentation& presentation() const { return pres_; }
  const FieldOps<K>& ops() const { return ops_; }
  int max_adams() const { return max_adams_; }
  const std::vector<std::string>& gen_names() const { return names_; }

  int dimA(int s) const { return s > max_adams_ ? -1 : deg_[s].basis.dim(); }
  const Basis& basis(int s) const { return deg_[s].basis; }
  const NcMonomial& basis_monomial(int s, int k) const {
    return deg_[s].mons[deg_[s].basis_to_mon[k]];
  }
  int dimQ(int s) const { return static_cast<int>(deg_[s].q_positions.size()); }
  // positions of the Q_s monomials inside the A_s basis
  const std::vector<int>& q_positions(int s) const { return deg_[s].q_positions; }
  const Mat<K>& d_columns(int s) const { return deg_[s].d_cols; }
  const Mat<K>& xi(int s) const { return deg_[s].xi; }
  const Mat<K>& theta(int s) const { return deg_[s].theta; }
  const Mat<K>& nu(int s) const { return deg_[s].nu; }
  const TqShape& tq_shape(int s) const { return deg_[s].tq; }
  const Mat<K>& mu_restricted(int s) const { return deg_[s].mu_res; }
  const Mat<K>& mu_full(int s) const { return deg_[s].mu_full; }

  // mu domain layout: blocks Q_i (x) A_{s-i} for i = 1..s (restricted: s-1)
  int mu_block_offset(int s, int i) const { return deg_[s].mu_offsets[i]; }
  int mu_full_dim(int s) const { return deg_[s].mu_full_dim; }
  int mu_res_dim(int s) const { return deg_[s].mu_res_dim; }

  // Normal form of the concatenation of two basis monomials, as coordinates
  // in the basis of A_{i+j}. Memoized; this is the multiplication table.
  const Vec<K>& product(int i, int ai, int j, int bj) const {
    std::uint64_t key = (((std::uint64_t)i * 4096 + ai) * 4096 + j) * 4096 + bj;
    auto it = product_cache_.find(key);
    if (it != product_cache_.end()) return it->second;
    const NcMonomial& ma = basis_monomial(i, ai);
    const NcMonomial& mb = basis_monomial(j, bj);
    std::vector<int> w = ma.word;
    w.insert(w.end(), mb.word.begin(), mb.word.end());
    Vec<K> v = normal_form_word(pres_.make_monomial(std::move(w)));
    return product_cache_.emplace(key, std::move(v)).first->second;
  }

  // Normal form of a free-algebra monomial of degree <= max_adams.
  Vec<K> normal_form_word(const NcMonomial& m) const {
    const DegreeData& d = deg_[m.adams];
    auto it = d.mon_index.find(m);
    if (it == d.mon_index.end())
      throw std::logic_error("monomial outside the enumerated range");
    int col = it->second;
    Vec<K> v = Vec<K>::Zero(d.basis.dim());
    int row = d.pivot_row[col];
    if (row < 0) {
      v(d.mon_to_basis[col]) = K(1);
    } else {
      for (int j = col + 1; j < static_cast<int>(d.mons.size()); ++j)
        if (d.mon_to_basis[j] >= 0 && !is_zero(d.ideal.rref(row, j)))
          v(d.mon_to_basis[j]) = -d.ideal.rref(row, j);
    }
    return v;
  }

  Vec<K> normal_form(const NcPolynomial& p) const {
    if (p.terms.empty()) throw std::logic_error("normal_form of 0 needs a degree");
    Vec<K> v = Vec<K>::Zero(dimA(p.adams()));
    for (const auto& [m, c] : p.terms)
      v += ops_.from_int(c) * normal_form_word(m);
    return v;
  }

  // dim of the degree-s piece of the two-sided ideal (R)
  int ideal_dim(int s) const { return deg_[s].ideal.rank(); }
  int free_dim(int s) const { return static_cast<int>(deg_[s].mons.size()); }

  // theta followed by nu^{-1}: the inverse of (id (x) mu) on Q_i (x)
  // theta(A_j), used to lift relation vectors into the tensor algebra on Q.
  Vec<K> lift_to_tq(int s, const Vec<K>& mu_res_vec) const {
    const DegreeData& d = deg_[s];
    Vec<K> out = Vec<K>::Zero(d.tq.dim);
    for (int i = 1; i <= s - 1; ++i) {
      int nq = dimQ(i), na = dimA(s - i);
      if (nq == 0 || na == 0) continue;
      const Mat<K>& th = deg_[s - i].theta;
      const Mat<K>& ninv = deg_[s - i].nu_inv;
      for (int q = 0; q < nq; ++q) {
        Vec<K> a = Vec<K>::Zero(na);
        bool any = false;
        for (int m = 0; m < na; ++m) {
          const K& c = mu_res_vec(d.mu_offsets[i] + q * na + m);
          if (!is_zero(c)) { a(m) = c; any = true; }
        }
        if (!any) continue;
        Vec<K> t = th * (ninv * a);
        accumulate_prepended(s, i, q, t, out);
      }
    }
    return out;
  }

  // multiplication TQ(s) -> A_s (multiply out each composition word)
  Vec<K> tq_multiply(int s, const Vec<K>& tq_vec) const {
    const DegreeData& d = deg_[s];
    Vec<K> out = Vec<K>::Zero(d.basis.dim());
    for (std::size_t c = 0; c < d.tq.comps.size(); ++c) {
      const auto& comp = d.tq.comps[c];
      int bd = d.tq.block_dims[c];
      for (int idx = 0; idx < bd; ++idx) {
        const K& coeff = tq_vec(d.tq.offsets[c] + idx);
        if (is_zero(coeff)) continue;
        // decode factor indices, build the word
        std::vector<int> word;
        int rem = idx;
        std::vector<int> fidx(comp.size());
        for (int t = static_cast<int>(comp.size()) - 1; t >= 0; --t) {
          int qd = dimQ(comp[t]);
          fidx[t] = rem % qd;
          rem /= qd;
        }
        for (std::size_t t = 0; t < comp.size(); ++t) {
          const NcMonomial& qm =
              basis_monomial(comp[t], q_positions(comp[t])[fidx[t]]);
          word.insert(word.end(), qm.word.begin(), qm.word.end());
        }
        out += coeff * normal_form_word(pres_.make_monomial(std::move(word)));
      }
    }
    return out;
  }

 private:
  struct DegreeData {
    std::vector<NcMonomial> mons;
    std::map<NcMonomial, int, DeglexLess> mon_index;
    RowEchelon<K> ideal;
    std::vector<int> pivot_row;     // monomial -> rref row or -1
    std::vector<int> mon_to_basis;  // monomial -> basis position or -1
    std::vector<int> basis_to_mon;
    Basis basis;
    std::vector<int> q_positions;
    Mat<K> d_cols;
    std::vector<int> mu_offsets;  // per i, offset of block Q_i (x) A_{s-i}
    int mu_res_dim = 0, mu_full_dim = 0;
    Mat<K> mu_res, mu_full;
    RowEchelon<K> mu_res_ech;
    Mat<K> xi;
    TqShape tq;
    Mat<K> theta, nu, nu_inv;
  };

  void build_degree(int s) {
    DegreeData& d = deg_[s];
    enumerate_monomials(s, d);
    build_ideal(s, d);
    int n_basis = 0;
    d.pivot_row.assign(d.mons.size(), -1);
    for (int r = 0; r < d.ideal.rank(); ++r) d.pivot_row[d.ideal.pivots[r]] = r;
    d.mon_to_basis.assign(d.mons.size(), -1);
    for (std::size_t j = 0; j < d.mons.size(); ++j) {
      if (d.pivot_row[j] < 0) {
        d.mon_to_basis[j] = n_basis++;
        d.basis_to_mon.push_back(static_cast<int>(j));
        d.basis.labels.push_back(monomial_str(d.mons[j], names_));
      }
    }
    if (s == 0) {
      d.tq.dim = 0;
      return;
    }
    build_split(s, d);
    build_tq(s, d);
  }

  void enumerate_monomials(int s, DegreeData& d) {
    std::vector<int> word;
    std::vector<NcMonomial> all;
    enumerate_words(s, word, all);
    std::sort(all.begin(), all.end(), [](const NcMonomial& a, const NcMonomial& b) {
      return DeglexLess()(a, b);
    });
    d.mons = std::move(all);
    for (std::size_t j = 0; j < d.mons.size(); ++j)
      d.mon_index.emplace(d.mons[j], static_cast<int>(j));
  }

  void enumerate_words(int remaining, std::vector<int>& word,
                       std::vector<NcMonomial>& out) {
    if (remaining == 0) {
      out.push_back(pres_.make_monomial(word));
      return;
    }
    for (std::size_t g = 0; g < pres_.generators.size(); ++g) {
      int deg = pres_.generators[g].adams;
      if (deg <= remaining) {
        word.push_back(static_cast<int>(g));
        enumerate_words(remaining - deg, word, out);
        word.pop_back();
      }
    }
  }

  // span{ u * r * v } over monomials u, v with deg u + deg r + deg v = s
  void build_ideal(int s, DegreeData& d) {
    const int cols = static_cast<int>(d.mons.size());
    std::vector<Vec<K>> rows;
    for (const NcPolynomial& rel : pres_.relations) {
      int dr = rel.adams();
      if (dr > s) continue;
      for (int du = 0; du + dr <= s; ++du) {
        int dv = s - dr - du;
        for (const NcMonomial& u : deg_[du].mons) {
          for (const NcMonomial& v : deg_[dv].mons) {
            Vec<K> row = Vec<K>::Zero(cols);
            for (const auto& [m, c] : rel.terms) {
              std::vector<int> w = u.word;
              w.insert(w.end(), m.word.begin(), m.word.end());
              w.insert(w.end(), v.word.begin(), v.word.end());
              NcMonomial urv = pres_.make_monomial(std::move(w));
              row(d.mon_index.at(urv)) += ops_.from_int(c);
            }
            rows.push_back(std::move(row));
          }
        }
      }
    }
    Mat<K> m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) m.row(r) = rows[r].transpose();
    d.ideal = row_reduce(m);
  }

  void build_split(int s, DegreeData& d) {
    const int na = d.basis.dim();
    // domain layout
    d.mu_offsets.assign(s + 2, 0);
    int off = 0;
    for (int i = 1; i <= s; ++i) {
      d.mu_offsets[i] = off;
      off += dimQ(i) * dimA(s - i);
      if (i == s - 1) d.mu_res_dim = off;
    }
    if (s == 1) d.mu_res_dim = 0;
    d.mu_full_dim = off;
    d.mu_offsets[s + 1] = off;

    d.mu_full = Mat<K>::Zero(na, d.mu_full_dim);
    for (int i = 1; i <= s; ++i) {
      int nq = dimQ(i), nb = dimA(s - i);
      for (int q = 0; q < nq; ++q)
        for (int b = 0; b < nb; ++b)
          d.mu_full.col(d.mu_offsets[i] + q * nb + b) =
              product(i, q_positions(i)[q], s - i, b);
    }
    d.mu_res = d.mu_full.leftCols(d.mu_res_dim);

    // D_s = canonical image of mu restricted to i <= s-1; Q_s = standard
    // complement (always whole monomials; products of positives have no
    // length-one coordinates, so generator monomials are never pivots)
    d.d_cols = image_basis(d.mu_res);
    std::vector<int> q_basis_pos = canonical_complement(d.d_cols, na);
    d.q_positions = q_basis_pos;

    // xi: on Q_s send q to -(q (x) 1); on D_s take the pivot-supported
    // preimage of -d under mu_res (eq. 5.1.1 forces the signs)
    d.mu_res_ech = row_reduce(d.mu_res, /*with_transform=*/true);
    Mat<K> basis_change(na, na);  // columns: [Q std vectors | D columns]
    int nq = static_cast<int>(d.q_positions.size());
    for (int q = 0; q < nq; ++q)
      basis_change.col(q) = Vec<K>::Unit(na, d.q_positions[q]);
    for (int m = 0; m < d.d_cols.cols(); ++m)
      basis_change.col(nq + m) = d.d_cols.col(m);
    Mat<K> to_qd = invert(basis_change);  // coordinates in the split basis

    d.xi = Mat<K>::Zero(d.mu_full_dim, na);
    Mat<K> xi_on_q = Mat<K>::Zero(d.mu_full_dim, nq);
    for (int q = 0; q < nq; ++q) {
      int pos = (s == 1) ? d.mu_offsets[1] + q * dimA(0)
                         : d.mu_offsets[s] + q * dimA(0);
      xi_on_q(pos, q) = (s == 1) ? K(1) : -K(1);  // xi_1 = id by convention
    }
    Mat<K> xi_on_d = Mat<K>::Zero(d.mu_full_dim, d.d_cols.cols());
    for (int m = 0; m < d.d_cols.cols(); ++m) {
      Vec<K> rhs = -d.d_cols.col(m);
      Vec<K> sol = solve_pivot(d.mu_res_ech, d.mu_res_dim, rhs);
      xi_on_d.col(m).head(d.mu_res_dim) = sol;
    }
    for (int a = 0; a < na; ++a) {
      Vec<K> coords = to_qd * Vec<K>::Unit(na, a);
      for (int q = 0; q < nq; ++q)
        if (!is_zero(coords(q))) d.xi.col(a) += coords(q) * xi_on_q.col(q);
      for (int m = 0; m < d.d_cols.cols(); ++m)
        if (!is_zero(coords(nq + m))) d.xi.col(a) += coords(nq + m) * xi_on_d.col(m);
    }
  }

  void build_tq(int s, DegreeData& d) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    enumerate_comps(s, cur, comps);
    std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    int off = 0;
    for (auto& c : comps) {
      int bd = 1;
      for (int i : c) bd *= dimQ(i);
      d.tq.comps.push_back(c);
      d.tq.offsets.push_back(off);
      d.tq.block_dims.push_back(bd);
      d.tq.comp_index.emplace(c, static_cast<int>(d.tq.comps.size()) - 1);
      off += bd;
    }
    d.tq.dim = off;

    // theta_s = sum_i (id_{Q_i} (x) theta_{s-i}) o xi_s, theta on A_0 drops
    // the factor
    const int na = d.basis.dim();
    d.theta = Mat<K>::Zero(d.tq.dim, na);
    for (int a = 0; a < na; ++a) {
      for (int i = 1; i <= s; ++i) {
        int nq = dimQ(i), nb = dimA(s - i);
        for (int q = 0; q < nq; ++q) {
          if (i == s) {
            const K& c = d.xi(d.mu_offsets[s] + q * dimA(0), a);
            if (is_zero(c)) continue;
            int comp = d.tq.comp_index.at(std::vector<int>{s});
            d.theta(d.tq.offsets[comp] + q, a) += c;
          } else {
            Vec<K> sub = Vec<K>::Zero(nb);
            bool any = false;
            for (int b = 0; b < nb; ++b) {
              const K& c = d.xi(d.mu_offsets[i] + q * nb + b, a);
              if (!is_zero(c)) { sub(b) = c; any = true; }
            }
            if (!any) continue;
            Vec<K> t = deg_[s - i].theta * sub;
            Vec<K> col = d.theta.col(a);
            accumulate_prepended(s, i, q, t, col);
            d.theta.col(a) = col;
          }
        }
      }
    }
    d.nu = tq_multiply_matrix(s, d.theta);
    d.nu_inv = invert(d.nu);  // Lemma 5.2 requires mu o theta invertible
  }

  void enumerate_comps(int remaining, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out) const {
    if (remaining == 0) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    for (int i = 1; i <= remaining; ++i) {
      if (dimQ(i) == 0) continue;
      cur.push_back(i);
      enumerate_comps(remaining - i, cur, out);
      cur.pop_back();
    }
  }

  // scatter q_(i,qidx) (x) (vector in TQ(s-i)) into TQ(s)
  void accumulate_prepended(int s, int i, int qidx, const Vec<K>& sub,
                            Vec<K>& out) const {
    const TqShape& src = deg_[s - i].tq;
    const TqShape& dst = deg_[s].tq;
    for (std::size_t c = 0; c < src.comps.size(); ++c) {
      std::vector<int> comp = src.comps[c];
      comp.insert(comp.begin(), i);
      int dc = dst.comp_index.at(comp);
      int bd = src.block_dims[c];
      for (int idx = 0; idx < bd; ++idx) {
        const K& v = sub(src.offsets[c] + idx);
        if (is_zero(v)) continue;
        out(dst.offsets[dc] + qidx * bd + idx) += v;
      }
    }
  }

  Mat<K> tq_multiply_matrix(int s, const Mat<K>& tq_cols) const {
    Mat<K> out(dimA(s), tq_cols.cols());
    for (int c = 0; c < tq_cols.cols(); ++c) out.col(c) = tq_multiply(s, tq_cols.col(c));
    return out;
  }

  AlgebraPresentation pres_;
  FieldOps<K> ops_;
  int max_adams_;
  std::vector<std::string> names_;
  std::vector<DegreeData> deg_;
  mutable std::unordered_map<std::uint64_t, Vec<K>> product_cache_;
};

}  // namespace aext
