#pragma once

// Shared test fixtures: standard quivers and deterministic random data.

#include <random>

#include "approxcat/quiver.hpp"

namespace fixtures {

using namespace approxcat;

inline QuiverPtr a2(FieldSpec f = FieldSpec::prime(2)) {
  return Quiver::make({"1", "2"}, {{"a", 0, 1}}, f);
}

// Vertices 1, 2, 3 with arrows a: 2 -> 1, b: 3 -> 2, c: 3 -> 1.
inline QuiverPtr happel_unger(FieldSpec f = FieldSpec::prime(2)) {
  return Quiver::make({"1", "2", "3"},
                      {{"a", 1, 0}, {"b", 2, 1}, {"c", 2, 0}}, f);
}

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next(std::uint64_t bound) { return eng() % bound; }
};

template <class K>
K random_scalar(Rng& rng, const FieldSpec& f) {
  if constexpr (field_traits<K>::prime_field) {
    return K(static_cast<long long>(rng.next(f.p)), f.p);
  } else {
    long long num = static_cast<long long>(rng.next(9)) - 4;
    long long den = 1 + static_cast<long long>(rng.next(4));
    return Rat(num, den);
  }
}

template <class K>
Mat<K> random_matrix(Rng& rng, Index rows, Index cols, const FieldSpec& f) {
  Mat<K> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = random_scalar<K>(rng, f);
  return m;
}

template <class K>
Rep<K> random_rep(Rng& rng, QuiverPtr q, Index max_dim) {
  std::vector<Index> dims;
  for (int v = 0; v < q->vertex_count(); ++v)
    dims.push_back(static_cast<Index>(rng.next(max_dim + 1)));
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const auto& ar = q->arrow(a);
    maps.push_back(
        random_matrix<K>(rng, dims[ar.target], dims[ar.source], q->field()));
  }
  return make_rep<K>(q, dims, maps);
}

// Random element of Hom(m, n), drawn as a random coordinate vector.
template <class K>
RepMorphism<K> random_hom(Rng& rng, const HomSpace<K>& hs) {
  Vec<K> c(hs.dim());
  for (Index i = 0; i < hs.dim(); ++i)
    c(i) = random_scalar<K>(rng, hs.dom.quiver->field());
  return hs.from_coords(c);
}

}  // namespace fixtures
