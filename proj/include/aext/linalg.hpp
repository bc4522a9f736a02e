#pragma once

// Deterministic exact linear algebra on dense Eigen matrices: reduced row
// echelon form, kernels, images, canonical complements and duals. Pivoting is
// first-nonzero (no magnitude heuristics), so every result is a pure function
// of the input entries and their order.

#include "aext/field.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace aext {

template <class K> using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K> using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

// Ordered list of basis-element labels.
struct Basis {
  std::vector<std::string> labels;
  Basis() = default;
  explicit Basis(std::vector<std::string> l) : labels(std::move(l)) {}
  int dim() const { return static_cast<int>(labels.size()); }
  // Dual basis: toggles a trailing '#' on each label.
  Basis dual() const {
    Basis d;
    d.labels.reserve(labels.size());
    for (const auto& l : labels) {
      if (!l.empty() && l.back() == '#')
        d.labels.push_back(l.substr(0, l.size() - 1));
      else
        d.labels.push_back(l + "#");
    }
    return d;
  }
};

// Column j of `mat` is the image of source basis vector j.
template <class K> struct LinearMap {
  Basis source, target;
  Mat<K> mat;
};

template <class K> struct RowEchelon {
  Mat<K> rref;              // unique reduced row-echelon form
  std::vector<int> pivots;  // strictly increasing pivot column list
  Mat<K> transform;         // transform * input = rref (optional, see flag)
  bool has_transform = false;
  int rank() const { return static_cast<int>(pivots.size()); }
};

template <class K>
RowEchelon<K> row_reduce(const Mat<K>& input, bool with_transform = false) {
  RowEchelon<K> out;
  Mat<K> m = input;
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  Mat<K> t;
  if (with_transform) t = Mat<K>::Identity(rows, rows);
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int piv = -1;
    for (int r = rank; r < rows; ++r)
      if (!is_zero(m(r, c))) { piv = r; break; }
    if (piv < 0) continue;
    if (piv != rank) {
      m.row(piv).swap(m.row(rank));
      if (with_transform) t.row(piv).swap(t.row(rank));
    }
    K inv = K(1) / m(rank, c);
    if (!(inv == K(1))) {
      for (int j = c; j < cols; ++j) m(rank, j) = m(rank, j) * inv;
      if (with_transform) t.row(rank) *= inv;
    }
    for (int r = 0; r < rows; ++r) {
      if (r == rank || is_zero(m(r, c))) continue;
      K f = m(r, c);
      for (int j = c; j < cols; ++j)
        if (!is_zero(m(rank, j))) m(r, j) = m(r, j) - f * m(rank, j);
      if (with_transform) t.row(r) -= f * t.row(rank);
    }
    out.pivots.push_back(c);
    ++rank;
  }
  out.rref = std::move(m);
  out.transform = std::move(t);
  out.has_transform = with_transform;
  return out;
}

template <class K> int rank_of(const Mat<K>& m) {
  return row_reduce(m).rank();
}

// Basis of ker(m), one column per free variable, in ascending free-column
// order. The pivot coordinates of each vector are read off the RREF rows.
template <class K> Mat<K> kernel_basis(const Mat<K>& m) {
  RowEchelon<K> e = row_reduce(m);
  const int cols = static_cast<int>(m.cols());
  std::vector<bool> is_pivot(cols, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Mat<K> ker = Mat<K>::Zero(cols, static_cast<int>(free_cols.size()));
  for (int k = 0; k < static_cast<int>(free_cols.size()); ++k) {
    int fc = free_cols[k];
    ker(fc, k) = K(1);
    for (int r = 0; r < e.rank(); ++r)
      if (!is_zero(e.rref(r, fc))) ker(e.pivots[r], k) = -e.rref(r, fc);
  }
  return ker;
}

// Canonical basis of the column space: the nonzero rows of rref(m^T),
// returned as columns. Unique for the subspace, independent of the spanning
// set presented, so equal subspaces compare equal columnwise.
template <class K> Mat<K> image_basis(const Mat<K>& m) {
  Mat<K> mt = m.transpose();
  RowEchelon<K> e = row_reduce(mt);
  Mat<K> img(m.rows(), e.rank());
  for (int r = 0; r < e.rank(); ++r) img.col(r) = e.rref.row(r).transpose();
  return img;
}

// Same canonical reduction, fed column-by-column to keep peak cost at
// rank * width instead of materializing a huge transpose on fat inputs.
template <class K> class EchelonAccumulator {
 public:
  explicit EchelonAccumulator(int width) : width_(width) {}
  // Returns true when v enlarged the span.
  bool insert(Vec<K> v) {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!is_zero(v(pivcol_[i]))) v -= v(pivcol_[i]) * rows_[i];
    int p = -1;
    for (int c = 0; c < width_; ++c)
      if (!is_zero(v(c))) { p = c; break; }
    if (p < 0) return false;
    v *= (K(1) / v(p));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!is_zero(rows_[i](p))) rows_[i] -= rows_[i](p) * v;
    // keep rows ordered by pivot column
    std::size_t pos = 0;
    while (pos < rows_.size() && pivcol_[pos] < p) ++pos;
    rows_.insert(rows_.begin() + pos, std::move(v));
    pivcol_.insert(pivcol_.begin() + pos, p);
    return true;
  }
  bool contains(Vec<K> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (!is_zero(v(pivcol_[i]))) v -= v(pivcol_[i]) * rows_[i];
    for (int c = 0; c < width_; ++c)
      if (!is_zero(v(c))) return false;
    return true;
  }
  int rank() const { return static_cast<int>(rows_.size()); }
  Mat<K> columns() const {
    Mat<K> m = Mat<K>::Zero(width_, rank());
    for (int i = 0; i < rank(); ++i) m.col(i) = rows_[i];
    return m;
  }

 private:
  int width_;
  std::vector<Vec<K>> rows_;
  std::vector<int> pivcol_;
};

// Standard-vector complement: indices i not hit by a pivot of rref(sub^T).
// Rejects dependent input.
template <class K>
std::vector<int> canonical_complement(const Mat<K>& sub_columns, int ambient_dim) {
  Mat<K> t = sub_columns.transpose();
  RowEchelon<K> e = row_reduce(t);
  if (e.rank() != static_cast<int>(sub_columns.cols()))
    throw std::invalid_argument("canonical_complement: dependent input vectors");
  std::vector<bool> is_pivot(ambient_dim, false);
  for (int c : e.pivots) is_pivot[c] = true;
  std::vector<int> out;
  for (int i = 0; i < ambient_dim; ++i)
    if (!is_pivot[i]) out.push_back(i);
  return out;
}

template <class K>
Mat<K> columns_from_indices(const std::vector<int>& idx, int dim) {
  Mat<K> m = Mat<K>::Zero(dim, static_cast<int>(idx.size()));
  for (int k = 0; k < static_cast<int>(idx.size()); ++k) m(idx[k], k) = K(1);
  return m;
}

// Graded k-linear dual: transpose the matrix, swap bases for their duals.
template <class K> LinearMap<K> dual_map(const LinearMap<K>& f) {
  return LinearMap<K>{f.target.dual(), f.source.dual(), f.mat.transpose()};
}

// The pivot-supported solution of m x = b: free coordinates zero, pivot
// coordinates read from transform * b. Throws if inconsistent.
template <class K>
Vec<K> solve_pivot(const RowEchelon<K>& e, int cols, const Vec<K>& b) {
  if (!e.has_transform)
    throw std::logic_error("solve_pivot needs an echelon with transform");
  Vec<K> y = e.transform * b;
  for (int r = e.rank(); r < static_cast<int>(y.size()); ++r)
    if (!is_zero(y(r))) throw std::domain_error("solve_pivot: inconsistent system");
  Vec<K> x = Vec<K>::Zero(cols);
  for (int r = 0; r < e.rank(); ++r) x(e.pivots[r]) = y(r);
  return x;
}

// Inverse of a square matrix via Gauss-Jordan; throws if singular.
template <class K> Mat<K> invert(const Mat<K>& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: not square");
  RowEchelon<K> e = row_reduce(m, /*with_transform=*/true);
  if (e.rank() != m.rows()) throw std::domain_error("invert: singular matrix");
  return e.transform;
}

}  // namespace aext
