#pragma once

// Exact dense linear algebra over a field scalar K: reduced row echelon form,
// kernels, solving, and canonical subspaces. Everything is deterministic and
// tolerance-free; subspace equality is matrix equality of RREF bases.

#include <optional>
#include <utility>
#include <vector>

#include "approxcat/field.hpp"

namespace approxcat {

using Index = Eigen::Index;

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K>
bool mat_eq(const Mat<K>& a, const Mat<K>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

template <class K>
bool vec_eq(const Vec<K>& a, const Vec<K>& b) {
  if (a.size() != b.size()) return false;
  for (Index i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

template <class K>
bool is_zero_mat(const Mat<K>& a) {
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!field_traits<K>::is_zero(a(i, j))) return false;
  return true;
}

namespace detail {

// Fp matrices may hold unbound literals (from Eigen's Zero/Identity). Bind
// them to the modulus found among the entries so elimination is sound.
template <int R, int C>
std::uint32_t modulus_of(const Eigen::Matrix<Fp, R, C>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j).bound()) return m(i, j).modulus();
  return 0;
}
template <int R, int C>
void bind_entries(Eigen::Matrix<Fp, R, C>& m, std::uint32_t p) {
  if (p == 0) return;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).bound()) m(i, j) = Fp(m(i, j).raw(), p);
}
inline void bind_matrix(Mat<Fp>& m) { bind_entries(m, modulus_of(m)); }
inline void bind_matrix(Mat<Rat>&) {}

}  // namespace detail

template <class K, int R, int C>
void bind_to_field(Eigen::Matrix<K, R, C>& m, const FieldSpec& f) {
  if constexpr (field_traits<K>::prime_field) detail::bind_entries(m, f.p);
}

template <class K>
struct RrefResult {
  Mat<K> r;
  std::vector<Index> pivots;
  Index rank = 0;
};

template <class K>
RrefResult<K> rref(const Mat<K>& input) {
  RrefResult<K> out;
  out.r = input;
  detail::bind_matrix(out.r);
  Mat<K>& a = out.r;
  const Index rows = a.rows(), cols = a.cols();
  Index lead = 0;
  for (Index col = 0; col < cols && lead < rows; ++col) {
    Index piv = -1;
    for (Index i = lead; i < rows; ++i)
      if (!field_traits<K>::is_zero(a(i, col))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) a.row(piv).swap(a.row(lead));
    K inv = K(1) / a(lead, col);
    for (Index j = col; j < cols; ++j) a(lead, j) = a(lead, j) * inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == lead) continue;
      K f = a(i, col);
      if (field_traits<K>::is_zero(f)) continue;
      for (Index j = col; j < cols; ++j) a(i, j) = a(i, j) - f * a(lead, j);
    }
    out.pivots.push_back(col);
    ++lead;
  }
  out.rank = static_cast<Index>(out.pivots.size());
  return out;
}

template <class K>
Index rank(const Mat<K>& m) {
  return rref(m).rank;
}

// Row span of `basis` in K^ambient, stored canonically: basis rows are the
// nonzero rows of an RREF, so two equal subspaces have identical matrices.
template <class K>
struct Subspace {
  Index ambient = 0;
  Mat<K> basis;  // dim() x ambient, RREF

  Index dim() const { return basis.rows(); }
  bool is_zero() const { return basis.rows() == 0; }
};

template <class K>
Subspace<K> row_space(const Mat<K>& m) {
  RrefResult<K> r = rref(m);
  Subspace<K> s;
  s.ambient = m.cols();
  s.basis = r.r.topRows(r.rank);
  return s;
}

template <class K>
Subspace<K> zero_subspace(Index ambient) {
  Subspace<K> s;
  s.ambient = ambient;
  s.basis = Mat<K>(0, ambient);
  return s;
}

template <class K>
Subspace<K> full_subspace(Index ambient, const FieldSpec& f) {
  Subspace<K> s;
  s.ambient = ambient;
  s.basis = Mat<K>::Identity(ambient, ambient);
  bind_to_field(s.basis, f);
  return s;
}

template <class K>
bool subspace_eq(const Subspace<K>& u, const Subspace<K>& v) {
  return u.ambient == v.ambient && mat_eq(u.basis, v.basis);
}

// Coordinates of x in the row span of an RREF basis, if x lies in it.
// Reading pivot columns gives the unique candidate; membership is verified
// by exact reconstruction.
template <class K>
std::optional<Vec<K>> coords_in_rref_span(const Mat<K>& rref_basis,
                                          const std::vector<Index>& pivots,
                                          const Vec<K>& x) {
  Vec<K> c(rref_basis.rows());
  for (Index i = 0; i < rref_basis.rows(); ++i) c(i) = x(pivots[i]);
  Vec<K> rec = Vec<K>::Zero(x.size());
  for (Index i = 0; i < rref_basis.rows(); ++i)
    for (Index j = 0; j < x.size(); ++j) rec(j) += c(i) * rref_basis(i, j);
  for (Index j = 0; j < x.size(); ++j)
    if (!(rec(j) == x(j))) return std::nullopt;
  return c;
}

template <class K>
std::vector<Index> rref_pivots(const Mat<K>& rref_basis) {
  std::vector<Index> piv;
  for (Index i = 0; i < rref_basis.rows(); ++i) {
    Index j = 0;
    while (j < rref_basis.cols() && field_traits<K>::is_zero(rref_basis(i, j)))
      ++j;
    piv.push_back(j);
  }
  return piv;
}

template <class K>
bool subspace_contains(const Subspace<K>& s, const Vec<K>& x) {
  detail::require(x.size() == s.ambient, "subspace_contains: ambient mismatch");
  return coords_in_rref_span<K>(s.basis, rref_pivots(s.basis), x).has_value();
}

template <class K>
bool subspace_le(const Subspace<K>& u, const Subspace<K>& v) {
  detail::require(u.ambient == v.ambient, "subspace_le: ambient mismatch");
  auto piv = rref_pivots(v.basis);
  for (Index i = 0; i < u.basis.rows(); ++i) {
    Vec<K> row = u.basis.row(i).transpose();
    if (!coords_in_rref_span<K>(v.basis, piv, row)) return false;
  }
  return true;
}

// Kernel of m as a subspace of the column domain K^cols, canonical.
template <class K>
Subspace<K> kernel(const Mat<K>& m) {
  RrefResult<K> r = rref(m);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index p : r.pivots) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index j = 0; j < cols; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat<K> gens = Mat<K>::Zero(static_cast<Index>(free_cols.size()), cols);
  for (Index k = 0; k < static_cast<Index>(free_cols.size()); ++k) {
    Index f = free_cols[k];
    gens(k, f) = K(1);
    for (Index i = 0; i < r.rank; ++i) gens(k, r.pivots[i]) = -r.r(i, f);
  }
  Subspace<K> s = row_space(gens);
  s.ambient = cols;
  return s;
}

// A solution of m x = b with free variables set to zero, or nullopt when the
// system is inconsistent.
template <class K>
std::optional<Vec<K>> solve(const Mat<K>& m, const Vec<K>& b) {
  detail::require(b.size() == m.rows(), "solve: dimension mismatch");
  Mat<K> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  RrefResult<K> r = rref(aug);
  for (Index p : r.pivots)
    if (p == m.cols()) return std::nullopt;
  Vec<K> x = Vec<K>::Zero(m.cols());
  for (Index i = 0; i < r.rank; ++i) x(r.pivots[i]) = r.r(i, m.cols());
  return x;
}

// Columnwise solve: some X with m X = B, or nullopt.
template <class K>
std::optional<Mat<K>> solve_matrix(const Mat<K>& m, const Mat<K>& b) {
  detail::require(b.rows() == m.rows(), "solve_matrix: dimension mismatch");
  Mat<K> x(m.cols(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    auto col = solve<K>(m, b.col(j));
    if (!col) return std::nullopt;
    x.col(j) = *col;
  }
  return x;
}

template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  if (rank(m) != m.rows()) return std::nullopt;
  Mat<K> id = Mat<K>::Identity(m.rows(), m.rows());
  detail::bind_matrix(id);
  return solve_matrix(m, id);
}

template <class K>
Subspace<K> subspace_sum(const Subspace<K>& u, const Subspace<K>& v) {
  detail::require(u.ambient == v.ambient, "subspace_sum: ambient mismatch");
  Mat<K> stacked(u.basis.rows() + v.basis.rows(), u.ambient);
  stacked.topRows(u.basis.rows()) = u.basis;
  stacked.bottomRows(v.basis.rows()) = v.basis;
  Subspace<K> s = row_space(stacked);
  s.ambient = u.ambient;
  return s;
}

template <class K>
Subspace<K> subspace_intersect(const Subspace<K>& u, const Subspace<K>& v) {
  detail::require(u.ambient == v.ambient, "subspace_intersect: ambient mismatch");
  const Index ru = u.basis.rows(), rv = v.basis.rows();
  // x = a U = b V; kernel of [U^T | -V^T] yields the (a, b) pairs.
  Mat<K> sys(u.ambient, ru + rv);
  sys.leftCols(ru) = u.basis.transpose();
  sys.rightCols(rv) = -v.basis.transpose();
  Subspace<K> pairs = kernel(sys);
  Mat<K> gens = Mat<K>::Zero(pairs.dim(), u.ambient);
  for (Index k = 0; k < pairs.dim(); ++k)
    for (Index i = 0; i < ru; ++i)
      for (Index j = 0; j < u.ambient; ++j)
        gens(k, j) += pairs.basis(k, i) * u.basis(i, j);
  Subspace<K> s = row_space(gens);
  s.ambient = u.ambient;
  return s;
}

// Projection with kernel exactly `sub`, expressed in the coordinates of
// `ambient` (rows of ambient.basis). For a full ambient space those
// coordinates are the standard ones.
template <class K>
struct QuotientMap {
  Mat<K> projection;  // dim x ambient.dim()
  Index dim = 0;
};

// Projection K^n -> K^(n-r) whose kernel is exactly the row span of the RREF
// matrix `sub_rref` (r x n): identity on non-pivot coordinates after reducing
// modulo the subspace.
template <class K>
Mat<K> quotient_projection_full(const Mat<K>& sub_rref, Index n) {
  const Index r = sub_rref.rows();
  std::vector<Index> piv = rref_pivots(sub_rref);
  std::vector<bool> is_pivot(n, false);
  for (Index p : piv)
    if (p < n) is_pivot[p] = true;
  std::vector<Index> free_cols;
  for (Index j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  Mat<K> proj = Mat<K>::Zero(static_cast<Index>(free_cols.size()), n);
  for (Index k = 0; k < static_cast<Index>(free_cols.size()); ++k) {
    proj(k, free_cols[k]) = K(1);
    for (Index i = 0; i < r; ++i)
      proj(k, piv[i]) = -sub_rref(i, free_cols[k]);
  }
  return proj;
}

template <class K>
QuotientMap<K> quotient(const Subspace<K>& ambient, const Subspace<K>& sub) {
  detail::require(ambient.ambient == sub.ambient,
                  "quotient: ambient mismatch");
  detail::require(subspace_le(sub, ambient), "quotient: sub not contained");
  // Express sub in ambient coordinates, then project the coordinate space.
  auto piv = rref_pivots(ambient.basis);
  Mat<K> sub_in_coords(sub.dim(), ambient.dim());
  for (Index i = 0; i < sub.dim(); ++i) {
    Vec<K> row = sub.basis.row(i).transpose();
    auto c = coords_in_rref_span<K>(ambient.basis, piv, row);
    if (!c) detail::internal_error("quotient: containment check failed");
    sub_in_coords.row(i) = c->transpose();
  }
  RrefResult<K> rr = rref(sub_in_coords);
  Mat<K> canon = rr.r.topRows(rr.rank);
  QuotientMap<K> q;
  q.projection = quotient_projection_full<K>(canon, ambient.dim());
  q.dim = q.projection.rows();
  return q;
}

// Preimage {x : m x in w} of a subspace under a linear map.
template <class K>
Subspace<K> preimage(const Mat<K>& m, const Subspace<K>& w) {
  detail::require(w.ambient == m.rows(), "preimage: ambient mismatch");
  Mat<K> proj = quotient_projection_full<K>(w.basis, w.ambient);
  Mat<K> composite = proj * m;
  detail::bind_matrix(composite);
  Subspace<K> s = kernel(composite);
  s.ambient = m.cols();
  return s;
}

// Column span as a subspace of the row-index space.
template <class K>
Subspace<K> column_space(const Mat<K>& m) {
  return row_space<K>(m.transpose());
}

template <class K>
Mat<K> vstack(const Mat<K>& a, const Mat<K>& b) {
  detail::require(a.cols() == b.cols(), "vstack: width mismatch");
  Mat<K> r(a.rows() + b.rows(), a.cols());
  r.topRows(a.rows()) = a;
  r.bottomRows(b.rows()) = b;
  return r;
}

template <class K>
Mat<K> hstack(const Mat<K>& a, const Mat<K>& b) {
  detail::require(a.rows() == b.rows(), "hstack: height mismatch");
  Mat<K> r(a.rows(), a.cols() + b.cols());
  r.leftCols(a.cols()) = a;
  r.rightCols(b.cols()) = b;
  return r;
}

template <class K>
Mat<K> block_diag(const Mat<K>& a, const Mat<K>& b) {
  Mat<K> r = Mat<K>::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  r.topLeftCorner(a.rows(), a.cols()) = a;
  r.bottomRightCorner(b.rows(), b.cols()) = b;
  return r;
}

// Row-major flattening, the convention used for all hom-space coordinates.
template <class K>
Vec<K> flatten(const Mat<K>& m) {
  Vec<K> v(m.rows() * m.cols());
  Index k = 0;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) v(k++) = m(i, j);
  return v;
}

template <class K>
Mat<K> unflatten(const Vec<K>& v, Index rows, Index cols) {
  detail::require(v.size() == rows * cols, "unflatten: size mismatch");
  Mat<K> m(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = v(k++);
  return m;
}

}  // namespace approxcat
