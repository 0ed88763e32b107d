#pragma once

// Test-side oracles, deliberately independent of the library's elimination
// and Ext machinery: naive Gaussian elimination on vector-of-vector storage,
// and exhaustive F2 enumeration for hom/ext dimensions via bitmasks.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "approxcat/quiver.hpp"

namespace oracle {

using approxcat::Index;

// Plain row-echelon elimination over the scalar K using only K's field ops.
template <class K>
struct NaiveElim {
  std::vector<std::vector<K>> rows;
  int nrows = 0, ncols = 0;

  explicit NaiveElim(const approxcat::Mat<K>& m)
      : nrows(static_cast<int>(m.rows())), ncols(static_cast<int>(m.cols())) {
    rows.assign(nrows, std::vector<K>(ncols, K(0)));
    for (int i = 0; i < nrows; ++i)
      for (int j = 0; j < ncols; ++j) rows[i][j] = m(i, j);
  }

  // Forward elimination; returns pivot columns.
  std::vector<int> echelon() {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < ncols && r < nrows; ++c) {
      int sel = -1;
      for (int i = r; i < nrows; ++i)
        if (!approxcat::field_traits<K>::is_zero(rows[i][c])) {
          sel = i;
          break;
        }
      if (sel < 0) continue;
      std::swap(rows[sel], rows[r]);
      K inv = K(1) / rows[r][c];
      for (int j = 0; j < ncols; ++j) rows[r][j] = rows[r][j] * inv;
      for (int i = 0; i < nrows; ++i) {
        if (i == r) continue;
        K f = rows[i][c];
        if (approxcat::field_traits<K>::is_zero(f)) continue;
        for (int j = 0; j < ncols; ++j)
          rows[i][j] = rows[i][j] - f * rows[r][j];
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }
};

template <class K>
int naive_rank(const approxcat::Mat<K>& m) {
  NaiveElim<K> e(m);
  return static_cast<int>(e.echelon().size());
}

template <class K>
int naive_kernel_dim(const approxcat::Mat<K>& m) {
  return static_cast<int>(m.cols()) - naive_rank(m);
}

// Consistency of m x = b by rank comparison of augmented system.
template <class K>
bool naive_solvable(const approxcat::Mat<K>& m, const approxcat::Vec<K>& b) {
  approxcat::Mat<K> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  return naive_rank(aug) == naive_rank(m);
}

// ---------------------------------------------------------------------------
// Exhaustive F2 counting oracles (bitmask enumeration; dims must be tiny).

struct F2RepData {
  std::vector<int> dims;                          // per vertex
  std::vector<std::vector<std::vector<int>>> maps;  // per arrow, row-major 0/1
};

inline F2RepData to_f2data(const approxcat::Rep<approxcat::Fp>& r) {
  F2RepData d;
  for (Index x : r.dims) d.dims.push_back(static_cast<int>(x));
  for (const auto& m : r.maps) {
    std::vector<std::vector<int>> rows;
    for (Index i = 0; i < m.rows(); ++i) {
      std::vector<int> row;
      for (Index j = 0; j < m.cols(); ++j)
        row.push_back(static_cast<int>(m(i, j).canonical(2)));
      rows.push_back(row);
    }
    d.maps.push_back(rows);
  }
  return d;
}

// Count the morphisms M -> N over F2 by enumerating every tuple of 0/1
// matrices and checking every commuting square; returns log2 of the count.
inline int f2_hom_dim_oracle(const approxcat::Quiver& q, const F2RepData& m,
                             const F2RepData& n) {
  const int nv = q.vertex_count();
  std::vector<int> bits(nv), off(nv + 1, 0);
  for (int v = 0; v < nv; ++v) {
    bits[v] = n.dims[v] * m.dims[v];
    off[v + 1] = off[v] + bits[v];
  }
  const int total = off[nv];
  if (total > 24) throw std::runtime_error("f2 oracle: too many unknowns");
  auto entry = [&](std::uint64_t word, int v, int r, int c) -> int {
    return static_cast<int>((word >> (off[v] + r * m.dims[v] + c)) & 1u);
  };
  long long count = 0;
  for (std::uint64_t word = 0; word < (1ull << total); ++word) {
    bool ok = true;
    for (int a = 0; a < q.arrow_count() && ok; ++a) {
      const auto& ar = q.arrow(a);
      for (int i = 0; i < n.dims[ar.target] && ok; ++i)
        for (int j = 0; j < m.dims[ar.source] && ok; ++j) {
          int lhs = 0, rhs = 0;
          for (int k = 0; k < n.dims[ar.source]; ++k)
            lhs ^= n.maps[a][i][k] & entry(word, ar.source, k, j);
          for (int l = 0; l < m.dims[ar.target]; ++l)
            rhs ^= entry(word, ar.target, i, l) & m.maps[a][l][j];
          if (lhs != rhs) ok = false;
        }
    }
    if (ok) ++count;
  }
  int dim = 0;
  while ((1ll << dim) < count) ++dim;
  if ((1ll << dim) != count) throw std::runtime_error("f2 oracle: not a power of 2");
  return dim;
}

// Ext^1(A, B) over F2 by enumerating middle terms in standard form: C with
// C_v = B_v + A_v, C_alpha = [[B_alpha, t_alpha], [0, A_alpha]]. Distinct
// classes = all t-words / coboundary words of h |-> (B_a h_s - h_t A_a).
inline int f2_ext_dim_oracle(const approxcat::Quiver& q, const F2RepData& a,
                             const F2RepData& b) {
  const int na = q.arrow_count(), nv = q.vertex_count();
  std::vector<int> toff(na + 1, 0);
  for (int i = 0; i < na; ++i)
    toff[i + 1] = toff[i] + b.dims[q.arrow(i).target] * a.dims[q.arrow(i).source];
  const int tbits = toff[na];
  std::vector<int> hoff(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    hoff[v + 1] = hoff[v] + b.dims[v] * a.dims[v];
  const int hbits = hoff[nv];
  if (tbits > 24 || hbits > 24)
    throw std::runtime_error("f2 ext oracle: too many unknowns");

  std::set<std::uint64_t> coboundaries;
  for (std::uint64_t h = 0; h < (1ull << hbits); ++h) {
    auto hent = [&](int v, int r, int c) -> int {
      return static_cast<int>((h >> (hoff[v] + r * a.dims[v] + c)) & 1u);
    };
    std::uint64_t word = 0;
    int bit = 0;
    for (int ai = 0; ai < na; ++ai) {
      const auto& ar = q.arrow(ai);
      for (int i = 0; i < b.dims[ar.target]; ++i)
        for (int j = 0; j < a.dims[ar.source]; ++j) {
          int val = 0;
          for (int k = 0; k < b.dims[ar.source]; ++k)
            val ^= b.maps[ai][i][k] & hent(ar.source, k, j);
          for (int l = 0; l < a.dims[ar.target]; ++l)
            val ^= hent(ar.target, i, l) & a.maps[ai][l][j];
          word |= static_cast<std::uint64_t>(val) << bit;
          ++bit;
        }
    }
    coboundaries.insert(word);
  }
  long long classes = (1ll << tbits) / static_cast<long long>(coboundaries.size());
  int dim = 0;
  while ((1ll << dim) < classes) ++dim;
  if ((1ll << dim) != classes)
    throw std::runtime_error("f2 ext oracle: class count not a power of 2");
  return dim;
}

}  // namespace oracle
