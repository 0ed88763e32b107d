#include "doctest.h"

#include "approxcat/exactlin.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace approxcat;

namespace {

Mat<Fp> f2mat(std::initializer_list<std::initializer_list<int>> rows) {
  Mat<Fp> m(static_cast<Index>(rows.size()),
            rows.size() ? static_cast<Index>(rows.begin()->size()) : 0);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (int x : r) m(i, j++) = Fp(x, 2);
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("rref: identity, zero, dependent rows") {
  Mat<Fp> id = f2mat({{1, 0}, {0, 1}});
  auto r = rref(id);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<Index>{0, 1});
  CHECK(mat_eq(r.r, id));

  Mat<Fp> z = Mat<Fp>::Zero(3, 2);
  auto rz = rref(z);
  CHECK(rz.rank == 0);
  CHECK(rz.pivots.empty());
  CHECK(is_zero_mat(rz.r));

  // Hand row-reduction: [[1,1],[1,1]] over F2 -> [[1,1],[0,0]].
  Mat<Fp> ones = f2mat({{1, 1}, {1, 1}});
  auto ro = rref(ones);
  CHECK(ro.rank == 1);
  CHECK(mat_eq(ro.r, f2mat({{1, 1}, {0, 0}})));
}

TEST_CASE("kernel: trivial, full, hand case") {
  CHECK(kernel(f2mat({{1, 0}, {0, 1}})).dim() == 0);
  Mat<Fp> z = Mat<Fp>::Zero(2, 3);
  CHECK(kernel(z).dim() == 3);
  // [[1,1]] over F2: kernel = span{(1,1)}, found by enumerating F2^2.
  auto k = kernel(f2mat({{1, 1}}));
  CHECK(k.dim() == 1);
  CHECK(mat_eq(k.basis, f2mat({{1, 1}})));
}

TEST_CASE("solve: identity, inconsistent, canonical free vars") {
  Vec<Fp> b(2);
  b << Fp(1, 2), Fp(0, 2);
  auto x = solve<Fp>(f2mat({{1, 0}, {0, 1}}), b);
  REQUIRE(x.has_value());
  CHECK((*x)(0) == Fp(1, 2));

  Mat<Fp> z = Mat<Fp>::Zero(2, 2);
  bind_to_field(z, FieldSpec::prime(2));
  CHECK_FALSE(solve<Fp>(z, b).has_value());

  // [[1,1]]x = [1] over F2 -> (1,0): free variable pinned to zero.
  Vec<Fp> one(1);
  one << Fp(1, 2);
  auto y = solve<Fp>(f2mat({{1, 1}}), one);
  REQUIRE(y.has_value());
  CHECK((*y)(0) == Fp(1, 2));
  CHECK((*y)(1) == Fp(0, 2));
}

TEST_CASE("subspace sum/intersect on F2 standard cases") {
  auto e1 = row_space(f2mat({{1, 0}}));
  auto e2 = row_space(f2mat({{0, 1}}));
  CHECK(subspace_intersect(e1, e2).dim() == 0);
  CHECK(subspace_sum(e1, e2).dim() == 2);

  // intersect(span{(1,1,0)}, span{(1,1,1),(0,0,1)}) = span{(1,1,0)},
  // checked against enumeration of F2^3 by hand.
  auto u = row_space(f2mat({{1, 1, 0}}));
  auto v = row_space(f2mat({{1, 1, 1}, {0, 0, 1}}));
  auto i = subspace_intersect(u, v);
  CHECK(i.dim() == 1);
  CHECK(mat_eq(i.basis, f2mat({{1, 1, 0}})));
}

TEST_CASE("quotient and preimage basics") {
  FieldSpec f2 = FieldSpec::prime(2);
  auto full = full_subspace<Fp>(3, f2);
  auto sub = row_space(f2mat({{1, 0, 1}}));
  auto q = quotient(full, sub);
  CHECK(q.dim == 2);
  // Kernel of the projection is exactly the subspace.
  Vec<Fp> v(3);
  v << Fp(1, 2), Fp(0, 2), Fp(1, 2);
  Vec<Fp> img = q.projection * v;
  CHECK(is_zero_mat<Fp>(img));

  auto pre = preimage(f2mat({{1, 0}, {0, 1}, {0, 0}}), sub);
  // m x = (x0, x1, 0) lies in span{(1,0,1)} only for x = 0.
  CHECK(pre.dim() == 0);
}

TEST_CASE("modularity witness: exhaustive at ambient dim 3 over F2") {
  // All pairs of subspaces of F2^3, generated from all 0/1 matrices with
  // up to 2 rows; checks dim(u)+dim(v) = dim(u+v)+dim(u n v).
  std::vector<Subspace<Fp>> all;
  for (int rows = 0; rows <= 2; ++rows) {
    for (std::uint64_t word = 0; word < (1ull << (3 * rows)); ++word) {
      Mat<Fp> m(rows, 3);
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < 3; ++j)
          m(i, j) = Fp(static_cast<long long>((word >> (3 * i + j)) & 1), 2);
      all.push_back(row_space(m));
    }
  }
  for (const auto& u : all)
    for (const auto& v : all) {
      auto s = subspace_sum(u, v);
      auto i = subspace_intersect(u, v);
      CHECK(u.dim() + v.dim() == s.dim() + i.dim());
      CHECK(subspace_le(i, u));
      CHECK(subspace_le(u, s));
    }
}

TEST_CASE("modularity witness: random subspace pairs in F2^6") {
  fixtures::Rng rng(29);
  FieldSpec f2 = FieldSpec::prime(2);
  for (int trial = 0; trial < 100; ++trial) {
    Index ru = static_cast<Index>(rng.next(4));
    Index rv = static_cast<Index>(rng.next(4));
    auto u = row_space(fixtures::random_matrix<Fp>(rng, ru, 6, f2));
    auto v = row_space(fixtures::random_matrix<Fp>(rng, rv, 6, f2));
    CHECK(u.dim() + v.dim() ==
          subspace_sum(u, v).dim() + subspace_intersect(u, v).dim());
  }
}

TEST_CASE("randomized agreement with naive elimination oracle (F3 and Q)") {
  fixtures::Rng rng(7);
  FieldSpec f3 = FieldSpec::prime(3);
  for (int trial = 0; trial < 60; ++trial) {
    Index r = 1 + static_cast<Index>(rng.next(6));
    Index c = 1 + static_cast<Index>(rng.next(6));
    Mat<Fp> m = fixtures::random_matrix<Fp>(rng, r, c, f3);
    CHECK(rank(m) == oracle::naive_rank(m));
    auto k = kernel(m);
    CHECK(k.dim() == oracle::naive_kernel_dim(m));
    for (Index i = 0; i < k.dim(); ++i) {
      Vec<Fp> prod = m * k.basis.row(i).transpose();
      CHECK(is_zero_mat<Fp>(prod));
    }

    Mat<Rat> mq = fixtures::random_matrix<Rat>(rng, r, c, FieldSpec::rational());
    CHECK(rank(mq) == oracle::naive_rank(mq));
    Vec<Rat> b = fixtures::random_matrix<Rat>(rng, r, 1, FieldSpec::rational());
    auto x = solve<Rat>(mq, b);
    CHECK(x.has_value() == oracle::naive_solvable(mq, b));
    if (x) {
      Vec<Rat> res = mq * *x - b;
      CHECK(is_zero_mat<Rat>(res));
    }
  }
}

TEST_CASE("field scalars: canonical forms and mixed-modulus protection") {
  CHECK(Fp(5, 3) == Fp(2, 3));
  CHECK(Fp(-1, 7) == Fp(6, 7));
  CHECK((Fp(2, 5) / Fp(3, 5)) * Fp(3, 5) == Fp(2, 5));
  CHECK_THROWS_AS(Fp(1, 2) + Fp(1, 3), std::logic_error);
  CHECK_THROWS_AS(Fp(1, 5) / Fp(0, 5), std::logic_error);

  // Unbound literals bind on contact and compare through the modulus.
  Fp lit(3);
  CHECK(lit + Fp(1, 2) == Fp(0, 2));
  CHECK(Fp(0) == Fp(0, 7));

  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK((Rat(-2, 3)).str() == "-2/3");
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::logic_error);

  // Arbitrary precision: repeated squaring blows far past 64 bits and the
  // inverse recovers exactly.
  Rat big(10, 3);
  for (int i = 0; i < 6; ++i) big = big * big;
  CHECK(big.num().str().size() > 60);
  CHECK(big * big.inverse() == Rat(1));
}

TEST_CASE("rref involution and transpose rank, randomized") {
  fixtures::Rng rng(11);
  FieldSpec f2 = FieldSpec::prime(2);
  for (int trial = 0; trial < 40; ++trial) {
    Index r = static_cast<Index>(rng.next(5));
    Index c = static_cast<Index>(rng.next(5));
    Mat<Fp> m = fixtures::random_matrix<Fp>(rng, r, c, f2);
    auto r1 = rref(m);
    auto r2 = rref(r1.r);
    CHECK(mat_eq(r1.r, r2.r));
    CHECK(rank(m) == rank<Fp>(m.transpose().eval()));
    CHECK(kernel(m).dim() + rank(m) == c);
  }
}
