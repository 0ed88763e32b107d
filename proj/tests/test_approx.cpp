#include "doctest.h"

#include "approxcat/approx.hpp"
#include "support/fixtures.hpp"

using namespace approxcat;
using fixtures::a2;
using fixtures::happel_unger;

namespace {

struct A2Objects {
  Rep<Fp> s1, s2, p1;

  explicit A2Objects(QuiverPtr q)
      : s1(simple<Fp>(q, 0)), s2(simple<Fp>(q, 1)), p1(projective<Fp>(q, 0)) {}
};

}  // namespace

TEST_CASE("sum_preenvelope: padding, duplicates, monic composition") {
  auto q = a2();
  A2Objects obj(q);
  auto rad = radical(obj.p1);

  // j2 = 0: the sum is j1 padded by a zero block.
  auto padded = sum_preenvelope(rad.inclusion, zero_morphism(obj.s2, obj.s1));
  CHECK(morphism_eq(compose(padded.onto1, padded.j), rad.inclusion));
  CHECK(is_zero_morphism(compose(padded.onto2, padded.j)));

  // j1 = j2: both components factor through either projection.
  auto dup = sum_preenvelope(rad.inclusion, rad.inclusion);
  CHECK(morphism_eq(compose(dup.onto1, dup.j), compose(dup.onto2, dup.j)));

  // Monic variant: when a component is an inflation the tuple stays one.
  CHECK(padded.is_inflation);
  CHECK(dup.is_inflation);
  // A genuinely non-injective pair: both components zero onto nonzero B.
  auto flat = sum_preenvelope(zero_morphism(obj.s2, obj.s1),
                              zero_morphism(obj.s2, obj.s1));
  CHECK_FALSE(flat.is_inflation);
}

TEST_CASE("bet_preenvelope on A2: the worked example") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;

  // a = 1_{S(1)}, B = S(2): the index set has two classes; the split one
  // contributes S(2) + S(1), the nonsplit one P(1); the pushout has
  // dimension vector (2, 1).
  auto sp = bet_preenvelope(identity_arrow(obj.s1), obj.s2,
                            BetMode::enumerate, cache);
  CHECK(sp.cosyzygy_summands.size() == 2);
  CHECK(sp.j.cod.dims == std::vector<Index>{2, 1});
  CHECK(vertexwise_injective(sp.j));
  // Hard postcondition re-checked here: Ext(a, j) = 0.
  CHECK(is_zero_mat(ext_matrix(identity_morphism(obj.s1), sp.j, cache)));

  // Basis mode: possibly different middle, same verification outcomes.
  auto spb = bet_preenvelope(identity_arrow(obj.s1), obj.s2, BetMode::basis,
                             cache);
  auto probes = probe_objects<Fp>(q, 4);
  auto r1 = verify_special_preenvelope(sp, probes, cache);
  auto r2 = verify_special_preenvelope(spb, probes, cache);
  CHECK(r1.all_passed());
  CHECK(r2.all_passed());
  CHECK(reports_agree(r1, r2));
}

TEST_CASE("bet_preenvelope trivial case: vanishing index set") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  // Ext(anything, -) from a projective domain arrow vanishes: a = 1_{P(1)}
  // against B = S(2) gives Ext(P(1), S(2)) = 0, so j = 1_B.
  auto sp = bet_preenvelope(identity_arrow(obj.p1), obj.s2,
                            BetMode::enumerate, cache);
  CHECK(morphism_eq(sp.j, identity_morphism(obj.s2)));
  CHECK(sp.cosyzygy_summands.empty());
  auto probes = probe_objects<Fp>(q, 4);
  CHECK(verify_special_preenvelope(sp, probes, cache).all_passed());
}

TEST_CASE("bet degenerate inputs: zero object and zero arrow") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  Rep<Fp> z = zero_rep<Fp>(q);

  // Approximating the zero object: everything is trivial but well-formed.
  auto spz = bet_preenvelope(identity_arrow(obj.s1), z, BetMode::enumerate,
                             cache);
  CHECK(morphism_eq(spz.j, identity_morphism(z)));
  auto probes = probe_objects<Fp>(q, 2);
  CHECK(verify_special_preenvelope(spz, probes, cache).all_passed());

  // A zero arrow between nonzero objects still yields a valid construction.
  ArrowObject<Fp> za{zero_morphism(obj.s1, obj.s1)};
  auto spa = bet_preenvelope(za, obj.s2, BetMode::enumerate, cache);
  CHECK(is_zero_mat(ext_matrix(za.f, spa.j, cache)));
  CHECK(verify_special_preenvelope(spa, probes, cache).all_passed());
}

TEST_CASE("bet cap and rational-field enumerate refusal") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  CHECK_THROWS_AS(bet_preenvelope(identity_arrow(obj.s1), obj.s2,
                                  BetMode::enumerate, cache, 1),
                  CapExceeded);

  auto qq = a2(FieldSpec::rational());
  ExtCache<Rat> rcache;
  Rep<Rat> s1 = simple<Rat>(qq, 0), s2 = simple<Rat>(qq, 1);
  CHECK_THROWS(bet_preenvelope(identity_arrow(s1), s2, BetMode::enumerate,
                               rcache));
  // Basis mode works over Q and satisfies the postcondition.
  auto sp = bet_preenvelope(identity_arrow(s1), s2, BetMode::basis, rcache);
  CHECK(is_zero_mat(ext_matrix(identity_morphism(s1), sp.j, rcache)));
}

TEST_CASE("bet_precover duals the construction") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  // b = 1_{S(2)}, A = S(1): Ext(S(1), S(2)) = k indexes the pullbacks.
  auto sp = bet_precover(identity_arrow(obj.s2), obj.s1, BetMode::enumerate,
                         cache);
  CHECK(sp.syzygy_summands.size() == 2);
  CHECK(vertexwise_surjective(sp.e));
  CHECK(is_zero_mat(ext_matrix(sp.e, identity_morphism(obj.s2), cache)));
  auto probes = probe_objects<Fp>(q, 4);
  auto report = verify_special_precover(sp, probes, cache);
  CHECK(report.all_passed());

  // Trivial side: Ext(A, B0) = 0 gives e = 1_A.
  auto triv = bet_precover(identity_arrow(obj.s1), obj.s2, BetMode::enumerate,
                           cache);
  CHECK(morphism_eq(triv.e, identity_morphism(obj.s2)));
}

TEST_CASE("intersect_preenvelopes: trivial partner, self, battery") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  auto probes = probe_objects<Fp>(q, 4);

  auto sp1 = bet_preenvelope(identity_arrow(obj.s1), obj.s2,
                             BetMode::enumerate, cache);
  auto sp2 = bet_preenvelope(identity_arrow(obj.p1), obj.s2,
                             BetMode::enumerate, cache);  // trivial ladder

  auto meet = intersect_preenvelopes(sp1, sp2, cache);
  // Certificates: the intersection preenvelope factors through both sides.
  REQUIRE(meet.factor_certificates.size() == 2);
  CHECK(morphism_eq(meet.j,
                    compose(meet.factor_certificates[0].f0, sp1.j)));
  CHECK(morphism_eq(meet.j,
                    compose(meet.factor_certificates[1].f0, sp2.j)));
  auto report = verify_special_preenvelope(meet, probes, cache);
  CHECK(report.all_passed());
  // Intersecting with the trivial side preserves verification outcomes.
  CHECK(reports_agree(report, verify_special_preenvelope(sp1, probes, cache)));

  // Self-intersection still verifies for Intersection(s, s).
  auto self_meet = intersect_preenvelopes(sp1, sp1, cache);
  CHECK(verify_special_preenvelope(self_meet, probes, cache).all_passed());
}

TEST_CASE("iterated vs one-shot intersection on a triple") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  auto probes = probe_objects<Fp>(q, 3);

  std::vector<SpecialPreenvelope<Fp>> sps;
  sps.push_back(bet_preenvelope(identity_arrow(obj.s1), obj.s2,
                                BetMode::enumerate, cache));
  sps.push_back(bet_preenvelope(ArrowObject<Fp>{radical(obj.p1).inclusion},
                                obj.s2, BetMode::enumerate, cache));
  sps.push_back(bet_preenvelope(identity_arrow(obj.p1), obj.s2,
                                BetMode::enumerate, cache));

  auto both = iterated_intersection(sps, cache);
  auto rf = verify_special_preenvelope(both.folded, probes, cache);
  auto ro = verify_special_preenvelope(both.one_shot, probes, cache);
  CHECK(rf.all_passed());
  CHECK(ro.all_passed());
  CHECK(reports_agree(rf, ro));

  // Singleton list: identity fold.
  auto single = iterated_intersection({sps[0]}, cache);
  CHECK(morphism_eq(single.folded.j, sps[0].j));
}

TEST_CASE("falsification fixtures: corrupted inputs fail with witnesses") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  auto probes = probe_objects<Fp>(q, 4);
  auto sp = bet_preenvelope(identity_arrow(obj.s1), obj.s2,
                            BetMode::enumerate, cache);

  // (iii) fails when j is zeroed out: members of the fiber no longer factor.
  SpecialPreenvelope<Fp> corrupt_j = sp;
  corrupt_j.j = zero_morphism(sp.j.dom, sp.j.cod);
  auto r3 = verify_special_preenvelope(corrupt_j, probes, cache);
  const CheckResult* f3 = r3.find("factorization");
  REQUIRE(f3 != nullptr);
  CHECK(f3->status == "fail");
  CHECK_FALSE(f3->witness.empty());
  // (i) also fails: j no longer matches the ladder.
  CHECK(r3.find("ladder_valid")->status == "fail");

  // (iv) fails under a wrong ideal: claim orthogonality against 1_{S(2)}
  // whose fibers contain morphisms pairing nontrivially with the cosyzygy.
  SpecialPreenvelope<Fp> wrong_ideal = sp;
  wrong_ideal.ideal =
      IdealSpec<Fp>::right_orthogonal({identity_arrow(obj.p1)});
  auto r4 = verify_special_preenvelope(wrong_ideal, probes, cache);
  const CheckResult* f4 = r4.find("cosyzygy_orthogonality");
  REQUIRE(f4 != nullptr);
  CHECK(f4->status == "fail");
  CHECK_FALSE(f4->witness.empty());

  // (ii) fails when the preenvelope is replaced by a morphism outside the
  // ideal: rebuild a ladder-compatible j that is not in the fiber.
  // Use the wrong-ideal trick on a fresh copy restricted to (ii).
  SpecialPreenvelope<Fp> outside = sp;
  outside.ideal = IdealSpec<Fp>::generated(
      {zero_morphism(obj.s2, obj.s2)});  // the zero ideal
  auto r2 = verify_special_preenvelope(outside, probes, cache);
  CHECK(r2.find("preenvelope_in_ideal")->status == "fail");

  // (v) fails when the summand record lies about the biproduct.
  SpecialPreenvelope<Fp> wrong_summands = sp;
  wrong_summands.cosyzygy_summands = {identity_arrow(obj.s1),
                                      identity_arrow(obj.p1)};
  auto r5 = verify_special_preenvelope(wrong_summands, probes, cache);
  // Either the dimension bookkeeping or the singularity check trips.
  CHECK(r5.find("canonical_decomposition")->status == "fail");
}

TEST_CASE("unit-like ideal verifies vacuously") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  auto probes = probe_objects<Fp>(q, 4);
  // RightOrthogonal of a projective identity arrow is everything; the
  // trivial BET output for it passes the battery.
  auto sp = bet_preenvelope(identity_arrow(obj.p1), obj.s2,
                            BetMode::enumerate, cache);
  auto report = verify_special_preenvelope(sp, probes, cache);
  CHECK(report.all_passed());
  for (const auto& c : report.checks)
    CHECK((c.status == "pass" || c.status == "skipped"));
}

TEST_CASE("ME-coproduct compatibility: block sums of witnesses stay ME") {
  auto q = a2();
  A2Objects obj(q);
  ExtCache<Fp> cache;
  // Two ME-conflations over (a, b) = (deflation arrow, 1_{S(2)}) with
  // witnesses zeta1, zeta2; their block sum is an ME witness for the block
  // conflation over (a + a, b + b).
  ArrowObject<Fp> a{cokernel_rep(radical(obj.p1).inclusion).projection};
  ArrowObject<Fp> b = identity_arrow(obj.s2);
  const auto& e10 = cache.get(a.cod(), b.dom());
  REQUIRE(e10.dim() == 1);
  Vec<Fp> z1(1), z2(1);
  z1 << Fp(1, 2);
  z2 << Fp(0, 2);

  auto sum_a = arrow_direct_sum<Fp>({a, a}, q);
  auto sum_b = arrow_direct_sum<Fp>({b, b}, q);
  ArrExtSpace<Fp> big(sum_a.sum, sum_b.sum, cache);
  const auto& e10big = cache.get(sum_a.sum.cod(), sum_b.sum.dom());
  // Block witness: coordinates of the direct-sum class.
  auto m1 = me_extension(b, a, z1, cache);
  auto m2 = me_extension(b, a, z2, cache);
  // The direct sum of the two middle conflations classifies in the big
  // space; its class must be an ME class there.
  auto dsum = direct_sum<Fp>({m1.middle.middle(), m2.middle.middle()}, q);
  auto infl = direct_sum_morphism<Fp>(
      {m1.middle.inflation, m2.middle.inflation}, sum_b.dom_sum, dsum);
  auto defl = direct_sum_morphism<Fp>(
      {m1.middle.deflation, m2.middle.deflation}, dsum, sum_a.cod_sum);
  Conflation<Fp> block = make_conflation(infl, defl);
  Vec<Fp> zeta_big = e10big.classify(block);
  Vec<Fp> cls = big.leibniz_matrix() * zeta_big;
  bind_to_field(cls, q->field());
  auto witness = big.me_witness(cls);
  CHECK(witness.has_value());
}
