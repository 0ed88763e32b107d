#pragma once

// The constructive approximation theorems: special preenvelopes and
// precovers, their sums, the Bongartz-Eklof-Trlifaj pushout construction,
// intersection of special preenvelopes along the pushout of their ladders,
// finite iterated/one-shot intersections, and the exact verification battery.

#include <cstdint>
#include <string>
#include <vector>

#include "approxcat/ideals.hpp"

namespace approxcat {

enum class BetMode { enumerate, basis };

inline const char* bet_mode_name(BetMode m) {
  return m == BetMode::enumerate ? "enumerate" : "basis";
}

struct CapExceeded : std::runtime_error {
  std::uint64_t index_size;
  std::uint64_t cap;
  CapExceeded(std::uint64_t n, std::uint64_t cap_value)
      : std::runtime_error("enumeration refused: the index set has " +
                           std::to_string(n) +
                           " elements, over bet_enumeration_cap = " +
                           std::to_string(cap_value)),
        index_size(n),
        cap(cap_value) {}
};

// A special J-preenvelope j: B -> C0 with its defining ladder of conflations
// 1_B -> c -> a, the cosyzygy arrow a, and the ideal it approximates.
template <class K>
struct SpecialPreenvelope {
  Rep<K> b;
  RepMorphism<K> j;                 // = ladder.inflation.f0
  ArrowConflation<K> ladder;        // sub = 1_B
  ArrowObject<K> cosyzygy;          // = ladder.quot
  std::vector<ArrowObject<K>> cosyzygy_summands;
  IdealSpec<K> ideal;
  std::vector<ArrowMorphism<K>> factor_certificates;  // intersections only
  std::string provenance;
};

template <class K>
struct SpecialPrecover {
  Rep<K> a;
  RepMorphism<K> e;                 // = ladder.deflation.f1
  ArrowConflation<K> ladder;        // quot = 1_A
  ArrowObject<K> syzygy;            // = ladder.sub
  std::vector<ArrowObject<K>> syzygy_summands;
  IdealSpec<K> ideal;
  std::vector<ArrowMorphism<K>> factor_certificates;
  std::string provenance;
};

// ---------------------------------------------------------------------------
// Preenvelope sum

template <class K>
struct SumPreenvelope {
  RepMorphism<K> j;  // (j1; j2): B -> J1 + J2
  RepMorphism<K> onto1, onto2;
  bool is_inflation = false;
};

template <class K>
SumPreenvelope<K> sum_preenvelope(const RepMorphism<K>& j1,
                                  const RepMorphism<K>& j2) {
  detail::require(rep_eq(j1.dom, j2.dom), "sum_preenvelope: domains differ");
  auto ds = direct_sum<K>({j1.cod, j2.cod}, j1.dom.quiver);
  SumPreenvelope<K> out;
  out.j = tuple_into_sum<K>({j1, j2}, ds);
  out.onto1 = ds.projections[0];
  out.onto2 = ds.projections[1];
  if (!morphism_eq(compose(out.onto1, out.j), j1) ||
      !morphism_eq(compose(out.onto2, out.j), j2))
    detail::internal_error("sum_preenvelope: factorization certificates fail");
  out.is_inflation = vertexwise_injective(out.j);
  return out;
}

// ---------------------------------------------------------------------------
// BET construction

namespace detail {

// All coordinate vectors of F_p^e in odometer order, 0 first.
template <class K>
std::vector<Vec<K>> enumerate_classes(Index e, const FieldSpec& f,
                                      std::uint64_t cap) {
  require(f.is_prime_field(),
          "enumerate mode requires a finite prime field");
  std::uint64_t total = 1;
  for (Index i = 0; i < e; ++i) {
    total *= f.p;
    if (total > cap) throw CapExceeded(total, cap);
  }
  std::vector<Vec<K>> out;
  std::vector<std::uint32_t> digits(static_cast<size_t>(e), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Vec<K> v(e);
    for (Index i = 0; i < e; ++i)
      v(i) = field_traits<K>::from_int(digits[static_cast<size_t>(i)], f);
    out.push_back(std::move(v));
    for (Index i = 0; i < e; ++i) {
      if (++digits[static_cast<size_t>(i)] < f.p) break;
      digits[static_cast<size_t>(i)] = 0;
    }
  }
  return out;
}

template <class K>
std::vector<Vec<K>> basis_classes(Index e, const FieldSpec& f) {
  std::vector<Vec<K>> out;
  for (Index i = 0; i < e; ++i) {
    Vec<K> v = Vec<K>::Zero(e);
    v(i) = field_traits<K>::from_int(1, f);
    bind_to_field(v, f);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

// Special a^perp-preenvelope of B: realize one arrow conflation
// 1_B -> c^zeta -> a per index class, push them all out over 1_B, and take
// the domain morphism of the resulting inflation. The theorem's conclusion
// ext_matrix(a, j) = 0 is re-verified unconditionally.
template <class K>
SpecialPreenvelope<K> bet_preenvelope(const ArrowObject<K>& a, const Rep<K>& b,
                                      BetMode mode, ExtCache<K>& cache,
                                      std::uint64_t enumeration_cap = 256) {
  QuiverPtr q = b.quiver;
  ArrExtSpace<K> space(a, identity_arrow(b), cache);
  const FieldSpec& f = q->field();

  std::vector<Vec<K>> classes;
  if (space.dim() > 0) {
    classes = mode == BetMode::enumerate
                  ? detail::enumerate_classes<K>(space.dim(), f,
                                                 enumeration_cap)
                  : detail::basis_classes<K>(space.dim(), f);
  }

  SpecialPreenvelope<K> out;
  out.b = b;
  out.ideal = IdealSpec<K>::right_orthogonal({a});
  out.provenance = std::string("bet_preenvelope(") + bet_mode_name(mode) +
                   ", |I|=" + std::to_string(classes.size()) + ")";
  if (classes.empty()) {
    out.ladder = trivial_arrow_conflation(b);
    out.j = identity_morphism(b);
    out.cosyzygy = out.ladder.quot;
  } else {
    bool first = true;
    ArrowConflation<K> acc;
    for (const Vec<K>& c : classes) {
      ArrowConflation<K> xi = space.realize(space.pair_of_coords(c));
      if (first) {
        acc = xi;
        first = false;
      } else {
        acc = arrow_pushout_two_inflations(acc, xi).conflation;
      }
      out.cosyzygy_summands.push_back(a);
    }
    out.ladder = acc;
    out.j = acc.inflation.f0;
    out.cosyzygy = acc.quot;
  }

  Mat<K> post = ext_matrix(a.f, out.j, cache);
  if (!is_zero_mat(post))
    detail::internal_error(
        "bet_preenvelope: hard postcondition Ext(a, j) = 0 failed");
  return out;
}

// Dual special perp-b-precover of A along pullbacks indexed by Ext(A, B0).
template <class K>
SpecialPrecover<K> bet_precover(const ArrowObject<K>& b, const Rep<K>& a,
                                BetMode mode, ExtCache<K>& cache,
                                std::uint64_t enumeration_cap = 256) {
  QuiverPtr q = a.quiver;
  ArrExtSpace<K> space(identity_arrow(a), b, cache);
  const FieldSpec& f = q->field();

  std::vector<Vec<K>> classes;
  if (space.dim() > 0) {
    classes = mode == BetMode::enumerate
                  ? detail::enumerate_classes<K>(space.dim(), f,
                                                 enumeration_cap)
                  : detail::basis_classes<K>(space.dim(), f);
  }

  SpecialPrecover<K> out;
  out.a = a;
  out.ideal = IdealSpec<K>::left_orthogonal({b});
  out.provenance = std::string("bet_precover(") + bet_mode_name(mode) +
                   ", |I|=" + std::to_string(classes.size()) + ")";
  if (classes.empty()) {
    // Mirror of the trivial ladder: 0 -> 1_A -> 1_A.
    ArrowObject<K> ia = identity_arrow(a);
    Rep<K> z = zero_rep<K>(q);
    ArrowObject<K> za = identity_arrow(z);
    ArrowMorphism<K> infl{za, ia, zero_morphism(z, a), zero_morphism(z, a)};
    ArrowMorphism<K> defl{ia, ia, identity_morphism(a), identity_morphism(a)};
    out.ladder = ArrowConflation<K>{za, ia, ia, std::move(infl),
                                    std::move(defl)};
    out.e = identity_morphism(a);
    out.syzygy = out.ladder.sub;
  } else {
    bool first = true;
    ArrowConflation<K> acc;
    for (const Vec<K>& c : classes) {
      ArrowConflation<K> xi = space.realize(space.pair_of_coords(c));
      if (first) {
        acc = xi;
        first = false;
      } else {
        acc = arrow_pullback_two_deflations(acc, xi).conflation;
      }
      out.syzygy_summands.push_back(b);
    }
    out.ladder = acc;
    out.e = acc.deflation.f1;
    out.syzygy = acc.sub;
  }

  Mat<K> post = ext_matrix(out.e, b.f, cache);
  if (!is_zero_mat(post))
    detail::internal_error(
        "bet_precover: hard postcondition Ext(e, b) = 0 failed");
  return out;
}

// ---------------------------------------------------------------------------
// Intersection of special preenvelopes by the pushout of their ladders

template <class K>
SpecialPreenvelope<K> intersect_preenvelopes(const SpecialPreenvelope<K>& sp1,
                                             const SpecialPreenvelope<K>& sp2,
                                             ExtCache<K>& cache) {
  detail::require(rep_eq(sp1.b, sp2.b),
                  "intersect_preenvelopes: objects differ");
  auto po = arrow_pushout_two_inflations(sp1.ladder, sp2.ladder);

  SpecialPreenvelope<K> out;
  out.b = sp1.b;
  out.ladder = po.conflation;
  out.j = po.conflation.inflation.f0;
  out.cosyzygy = po.conflation.quot;
  out.cosyzygy_summands = {sp1.cosyzygy, sp2.cosyzygy};
  out.ideal = IdealSpec<K>::intersection(sp1.ideal, sp2.ideal);
  out.factor_certificates = {po.into1, po.into2};
  out.provenance = "intersect(" + sp1.provenance + ", " + sp2.provenance + ")";

  // Membership certificates: the new preenvelope factors through both
  // inputs, m0 = h0^i m0^i exactly.
  if (!morphism_eq(out.j, compose(po.into1.f0, sp1.j)) ||
      !morphism_eq(out.j, compose(po.into2.f0, sp2.j)))
    detail::internal_error("intersect_preenvelopes: certificates fail");
  (void)cache;
  return out;
}

template <class K>
SpecialPrecover<K> intersect_precovers(const SpecialPrecover<K>& sp1,
                                       const SpecialPrecover<K>& sp2,
                                       ExtCache<K>& cache) {
  detail::require(rep_eq(sp1.a, sp2.a), "intersect_precovers: objects differ");
  auto pb = arrow_pullback_two_deflations(sp1.ladder, sp2.ladder);

  SpecialPrecover<K> out;
  out.a = sp1.a;
  out.ladder = pb.conflation;
  out.e = pb.conflation.deflation.f1;
  out.syzygy = pb.conflation.sub;
  out.syzygy_summands = {sp1.syzygy, sp2.syzygy};
  out.ideal = IdealSpec<K>::intersection(sp1.ideal, sp2.ideal);
  out.factor_certificates = {pb.onto1, pb.onto2};
  out.provenance = "intersect(" + sp1.provenance + ", " + sp2.provenance + ")";
  if (!morphism_eq(out.e, compose(sp1.e, pb.onto1.f1)) ||
      !morphism_eq(out.e, compose(sp2.e, pb.onto2.f1)))
    detail::internal_error("intersect_precovers: certificates fail");
  (void)cache;
  return out;
}

// ---------------------------------------------------------------------------
// Finite one-shot pushout (the coproduct-of-conflations construction)

namespace detail {

template <class K>
struct MultiLevelPushout {
  Rep<K> object;
  RepMorphism<K> proj;  // B + (sum of middles) -> object
  RepMorphism<K> diag;  // B -> object
  std::vector<RepMorphism<K>> into;
  RepMorphism<K> onto_quots;
  DirectSum<K> mid_sum;
};

// Pushout of the biproduct of conflations along the sum morphism:
// cokernel of (s; -sum m_i): B^n -> B + (+C_i).
template <class K>
MultiLevelPushout<K> level_multi_pushout(
    const std::vector<RepMorphism<K>>& ms,
    const std::vector<RepMorphism<K>>& ps, const DirectSum<K>& quot_sum) {
  require(!ms.empty(), "level_multi_pushout: empty list");
  QuiverPtr q = ms.front().dom.quiver;
  const Rep<K>& b = ms.front().dom;

  std::vector<Rep<K>> mids;
  for (const auto& m : ms) {
    require(rep_eq(m.dom, b), "level_multi_pushout: domains differ");
    mids.push_back(m.cod);
  }
  MultiLevelPushout<K> out;
  out.mid_sum = direct_sum<K>(mids, q);
  auto big = direct_sum<K>({b, out.mid_sum.sum}, q);
  std::vector<Rep<K>> bs(ms.size(), b);
  auto bsum = direct_sum<K>(bs, q);

  // u: B^n -> B + (+C_i), beta |-> (sum beta_i, -(m_i beta_i)_i).
  RepMorphism<K> u = zero_morphism(bsum.sum, big.sum);
  for (size_t i = 0; i < ms.size(); ++i) {
    RepMorphism<K> to_b =
        compose(big.injections[0], bsum.projections[i]);
    RepMorphism<K> to_mid = compose(
        big.injections[1],
        compose(out.mid_sum.injections[i],
                morphism_scale(K(-1), compose(ms[i], bsum.projections[i]))));
    u = morphism_add(u, morphism_add(to_b, to_mid));
  }
  QuotRep<K> cok = cokernel_rep(u);
  out.object = cok.rep;
  out.proj = cok.projection;
  out.diag = compose(cok.projection, big.injections[0]);
  for (size_t i = 0; i < ms.size(); ++i)
    out.into.push_back(compose(
        cok.projection, compose(big.injections[1], out.mid_sum.injections[i])));
  // Deflation onto the biproduct of the given quotients.
  RepMorphism<K> blocks = direct_sum_morphism<K>(ps, out.mid_sum, quot_sum);
  RepMorphism<K> w = cotuple_from_sum<K>(
      {zero_morphism(b, quot_sum.sum), blocks}, big);
  out.onto_quots = factor_through_surjection(cok.projection, w);
  return out;
}

}  // namespace detail

// One-shot pushout of finitely many preenvelope ladders over the common 1_B.
template <class K>
SpecialPreenvelope<K> one_shot_intersection(
    const std::vector<SpecialPreenvelope<K>>& sps, ExtCache<K>& cache) {
  detail::require(!sps.empty(), "one_shot_intersection: empty list");
  if (sps.size() == 1) return sps.front();
  QuiverPtr q = sps.front().b.quiver;
  const Rep<K>& b = sps.front().b;
  for (const auto& sp : sps)
    detail::require(rep_eq(sp.b, b), "one_shot_intersection: objects differ");

  std::vector<RepMorphism<K>> m0, p0, m1, p1;
  std::vector<Rep<K>> q0reps, q1reps;
  for (const auto& sp : sps) {
    m0.push_back(sp.ladder.inflation.f0);
    p0.push_back(sp.ladder.deflation.f0);
    m1.push_back(sp.ladder.inflation.f1);
    p1.push_back(sp.ladder.deflation.f1);
    q0reps.push_back(sp.ladder.quot.dom());
    q1reps.push_back(sp.ladder.quot.cod());
  }
  auto q0sum = direct_sum<K>(q0reps, q);
  auto q1sum = direct_sum<K>(q1reps, q);
  auto lvl0 = detail::level_multi_pushout<K>(m0, p0, q0sum);
  auto lvl1 = detail::level_multi_pushout<K>(m1, p1, q1sum);

  std::vector<RepMorphism<K>> midmaps;
  for (const auto& sp : sps) midmaps.push_back(sp.ladder.mid.f);
  RepMorphism<K> mids =
      direct_sum_morphism<K>(midmaps, lvl0.mid_sum, lvl1.mid_sum);
  // Induced arrow map on the one-shot pushouts, through the big projections.
  auto big0 = direct_sum<K>({b, lvl0.mid_sum.sum}, q);
  auto big1 = direct_sum<K>({b, lvl1.mid_sum.sum}, q);
  RepMorphism<K> bigmap = direct_sum_morphism<K>(
      {identity_morphism(b), mids}, big0, big1);
  RepMorphism<K> carrow =
      factor_through_surjection(lvl0.proj, compose(lvl1.proj, bigmap));
  ArrowObject<K> pushout{carrow};

  std::vector<RepMorphism<K>> quotmaps;
  for (const auto& sp : sps) quotmaps.push_back(sp.ladder.quot.f);
  ArrowObject<K> quot{direct_sum_morphism<K>(quotmaps, q0sum, q1sum)};

  SpecialPreenvelope<K> out;
  out.b = b;
  ArrowObject<K> ib = identity_arrow(b);
  ArrowMorphism<K> infl =
      make_arrow_morphism(ib, pushout, lvl0.diag, lvl1.diag);
  ArrowMorphism<K> defl =
      make_arrow_morphism(pushout, quot, lvl0.onto_quots, lvl1.onto_quots);
  out.ladder = make_arrow_conflation(ib, pushout, quot, std::move(infl),
                                     std::move(defl));
  out.j = out.ladder.inflation.f0;
  out.cosyzygy = out.ladder.quot;
  for (const auto& sp : sps) out.cosyzygy_summands.push_back(sp.cosyzygy);
  out.ideal = sps[0].ideal;
  for (size_t i = 1; i < sps.size(); ++i)
    out.ideal = IdealSpec<K>::intersection(out.ideal, sps[i].ideal);
  out.provenance = "one_shot_intersection(" + std::to_string(sps.size()) + ")";
  for (size_t i = 0; i < sps.size(); ++i) {
    if (!morphism_eq(out.j, compose(lvl0.into[i], sps[i].j)))
      detail::internal_error("one_shot_intersection: certificate fails");
  }
  (void)cache;
  return out;
}

template <class K>
struct IteratedIntersection {
  SpecialPreenvelope<K> folded;
  SpecialPreenvelope<K> one_shot;
};

template <class K>
IteratedIntersection<K> iterated_intersection(
    const std::vector<SpecialPreenvelope<K>>& sps, ExtCache<K>& cache) {
  detail::require(!sps.empty(), "iterated_intersection: empty list");
  IteratedIntersection<K> out{sps.front(), sps.front()};
  for (size_t i = 1; i < sps.size(); ++i)
    out.folded = intersect_preenvelopes(out.folded, sps[i], cache);
  out.one_shot = one_shot_intersection(sps, cache);
  return out;
}

// ---------------------------------------------------------------------------
// Verification battery

struct CheckResult {
  std::string name;
  std::string status;  // pass | fail | skipped
  std::string witness;
  bool exhaustive = true;
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> probe_inventory;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.status == "fail") return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

// Image of precomposition with j inside Hom(B, Y), as a subspace in the
// hom-basis coordinates of Hom(B, Y).
template <class K>
Subspace<K> precomposition_image(const RepMorphism<K>& j, const Rep<K>& y,
                                 const HomSpace<K>& hom_b_y) {
  HomSpace<K> from_c = hom_space(j.cod, y);
  Mat<K> rows = Mat<K>::Zero(from_c.dim(), hom_b_y.dim());
  for (Index i = 0; i < from_c.dim(); ++i)
    rows.row(i) = hom_b_y.coords(compose(from_c.basis[i], j)).transpose();
  Subspace<K> s = row_space(rows);
  s.ambient = hom_b_y.dim();
  return s;
}

template <class K>
Subspace<K> postcomposition_image(const RepMorphism<K>& e, const Rep<K>& y,
                                  const HomSpace<K>& hom_y_a) {
  HomSpace<K> into_c = hom_space(y, e.dom);
  Mat<K> rows = Mat<K>::Zero(into_c.dim(), hom_y_a.dim());
  for (Index i = 0; i < into_c.dim(); ++i)
    rows.row(i) = hom_y_a.coords(compose(e, into_c.basis[i])).transpose();
  Subspace<K> s = row_space(rows);
  s.ambient = hom_y_a.dim();
  return s;
}

// Canonical decomposition check: the map Ext(+A_i, B) -> prod Ext(A_i, B)
// induced by pullback along the structural injections is an isomorphism.
template <class K>
bool canonical_decomposition_holds(const std::vector<Rep<K>>& parts,
                                   const Rep<K>& b, ExtCache<K>& cache,
                                   std::string* witness) {
  QuiverPtr q = b.quiver;
  auto ds = direct_sum<K>(parts, q);
  const ExtSpace<K>& total = cache.get(ds.sum, b);
  Index expected = 0;
  std::vector<Mat<K>> blocks;
  for (size_t i = 0; i < parts.size(); ++i) {
    const ExtSpace<K>& comp = cache.get(parts[i], b);
    expected += comp.dim();
    blocks.push_back(pull_matrix(total, ds.injections[i], comp));
  }
  if (total.dim() != expected) {
    if (witness)
      *witness = "dim Ext(sum, B) = " + std::to_string(total.dim()) +
                 " but sum of parts = " + std::to_string(expected);
    return false;
  }
  Mat<K> canonical = Mat<K>::Zero(expected, total.dim());
  Index off = 0;
  for (auto& blockm : blocks) {
    canonical.middleRows(off, blockm.rows()) = blockm;
    off += blockm.rows();
  }
  bind_to_field(canonical, q->field());
  if (rank(canonical) != expected) {
    if (witness) *witness = "canonical matrix is singular";
    return false;
  }
  return true;
}

}  // namespace detail

// The full exact battery for a special preenvelope: ladder validity, ideal
// membership of j, the factorization property against every probe, cosyzygy
// orthogonality against every probe pair, and the componentwise
// decomposition of Ext at the cosyzygy biproduct.
template <class K>
VerificationReport verify_special_preenvelope(
    const SpecialPreenvelope<K>& sp,
    const std::vector<std::pair<std::string, Rep<K>>>& probes,
    ExtCache<K>& cache) {
  VerificationReport report;
  for (const auto& [name, rep] : probes) {
    std::string dims;
    for (Index d : rep.dims) dims += std::to_string(d) + " ";
    report.probe_inventory.push_back(name + " [dims " + dims + "]");
  }

  // (i) ladder validity.
  {
    CheckResult c{"ladder_valid", "pass", "", true};
    auto chk = is_arrow_conflation(sp.ladder);
    if (!chk.ok) {
      c.status = "fail";
      c.witness = chk.diagnostic;
    } else if (!morphism_eq(sp.ladder.sub.f, identity_morphism(sp.b))) {
      c.status = "fail";
      c.witness = "ladder sub arrow is not 1_B";
    } else if (!morphism_eq(sp.j, sp.ladder.inflation.f0)) {
      c.status = "fail";
      c.witness = "preenvelope differs from the ladder domain morphism";
    }
    report.checks.push_back(std::move(c));
  }

  // (ii) membership of j in the ideal.
  {
    CheckResult c{"preenvelope_in_ideal", "pass", "", true};
    if (!contains(sp.ideal, sp.j, cache)) {
      c.status = "fail";
      c.witness = "j lies outside its ideal fiber at (B, C0)";
    }
    report.checks.push_back(std::move(c));
  }

  // (iii) factorization: every fiber member through every probe factors
  // through j, as an exact subspace containment.
  {
    CheckResult c{"factorization", "pass", "", false};
    for (const auto& [name, y] : probes) {
      IdealFiber<K> fib = fiber(sp.ideal, sp.b, y, cache);
      Subspace<K> image = detail::precomposition_image(sp.j, y, fib.hom);
      if (!subspace_le(fib.sub, image)) {
        c.status = "fail";
        for (Index i = 0; i < fib.dim(); ++i)
          if (!subspace_contains(image, Vec<K>(fib.sub.basis.row(i).transpose()))) {
            c.witness = "fiber member " + std::to_string(i) + " at probe " +
                        name + " does not factor through j";
            break;
          }
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  // (iv) cosyzygy orthogonality: ext_matrix(cosyzygy, j') = 0 for every
  // fiber basis member j' over every probe pair.
  {
    CheckResult c{"cosyzygy_orthogonality", "pass", "", false};
    for (const auto& [xname, x] : probes) {
      for (const auto& [yname, y] : probes) {
        IdealFiber<K> fib = fiber(sp.ideal, x, y, cache);
        for (Index i = 0; i < fib.dim(); ++i) {
          RepMorphism<K> jp = fib.basis_morphism(i);
          Mat<K> m = ext_matrix(sp.cosyzygy.f, jp, cache);
          if (!is_zero_mat(m)) {
            c.status = "fail";
            c.witness = "Ext(cosyzygy, fiber member " + std::to_string(i) +
                        ") nonzero at (" + xname + ", " + yname + ")";
            break;
          }
        }
        if (c.status == "fail") break;
      }
      if (c.status == "fail") break;
    }
    report.checks.push_back(std::move(c));
  }

  // (v) canonical decomposition at the cosyzygy biproduct.
  {
    CheckResult c{"canonical_decomposition", "pass", "", true};
    if (sp.cosyzygy_summands.empty()) {
      c.status = "skipped";
      c.witness = "cosyzygy has no recorded biproduct structure";
    } else {
      // The recorded summands must assemble to the actual cosyzygy.
      QuiverPtr q = sp.b.quiver;
      std::vector<ArrowObject<K>> summands = sp.cosyzygy_summands;
      auto assembled = arrow_direct_sum<K>(summands, q);
      if (!arrow_eq(assembled.sum, sp.cosyzygy)) {
        c.status = "fail";
        c.witness = "recorded summands do not assemble to the cosyzygy";
      } else {
        std::vector<Rep<K>> parts;
        for (const auto& s : sp.cosyzygy_summands) parts.push_back(s.dom());
        std::string witness;
        if (!detail::canonical_decomposition_holds<K>(parts, sp.b, cache,
                                                      &witness)) {
          c.status = "fail";
          c.witness = witness;
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

template <class K>
VerificationReport verify_special_precover(
    const SpecialPrecover<K>& sp,
    const std::vector<std::pair<std::string, Rep<K>>>& probes,
    ExtCache<K>& cache) {
  VerificationReport report;
  for (const auto& [name, rep] : probes) {
    std::string dims;
    for (Index d : rep.dims) dims += std::to_string(d) + " ";
    report.probe_inventory.push_back(name + " [dims " + dims + "]");
  }

  {
    CheckResult c{"ladder_valid", "pass", "", true};
    auto chk = is_arrow_conflation(sp.ladder);
    if (!chk.ok) {
      c.status = "fail";
      c.witness = chk.diagnostic;
    } else if (!morphism_eq(sp.ladder.quot.f, identity_morphism(sp.a))) {
      c.status = "fail";
      c.witness = "ladder quot arrow is not 1_A";
    } else if (!morphism_eq(sp.e, sp.ladder.deflation.f1)) {
      c.status = "fail";
      c.witness = "precover differs from the ladder codomain morphism";
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"precover_in_ideal", "pass", "", true};
    if (!contains(sp.ideal, sp.e, cache)) {
      c.status = "fail";
      c.witness = "e lies outside its ideal fiber at (C1, A)";
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"factorization", "pass", "", false};
    for (const auto& [name, y] : probes) {
      IdealFiber<K> fib = fiber(sp.ideal, y, sp.a, cache);
      Subspace<K> image = detail::postcomposition_image(sp.e, y, fib.hom);
      if (!subspace_le(fib.sub, image)) {
        c.status = "fail";
        c.witness = "fiber at probe " + name + " does not factor through e";
        break;
      }
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"syzygy_orthogonality", "pass", "", false};
    for (const auto& [xname, x] : probes) {
      for (const auto& [yname, y] : probes) {
        IdealFiber<K> fib = fiber(sp.ideal, x, y, cache);
        for (Index i = 0; i < fib.dim(); ++i) {
          RepMorphism<K> jp = fib.basis_morphism(i);
          Mat<K> m = ext_matrix(jp, sp.syzygy.f, cache);
          if (!is_zero_mat(m)) {
            c.status = "fail";
            c.witness = "Ext(fiber member " + std::to_string(i) +
                        ", syzygy) nonzero at (" + xname + ", " + yname + ")";
            break;
          }
        }
        if (c.status == "fail") break;
      }
      if (c.status == "fail") break;
    }
    report.checks.push_back(std::move(c));
  }

  {
    CheckResult c{"canonical_decomposition", "pass", "", true};
    auto assembled_ok = [&]() {
      auto assembled =
          arrow_direct_sum<K>(sp.syzygy_summands, sp.a.quiver);
      return arrow_eq(assembled.sum, sp.syzygy);
    };
    if (sp.syzygy_summands.empty()) {
      c.status = "skipped";
      c.witness = "syzygy has no recorded biproduct structure";
    } else if (!assembled_ok()) {
      c.status = "fail";
      c.witness = "recorded summands do not assemble to the syzygy";
    } else {
      // Dual: Ext(A, +B_i) decomposes along the structural projections.
      QuiverPtr q = sp.a.quiver;
      std::vector<Rep<K>> parts;
      for (const auto& s : sp.syzygy_summands) parts.push_back(s.cod());
      auto ds = direct_sum<K>(parts, q);
      const ExtSpace<K>& total = cache.get(sp.a, ds.sum);
      Index expected = 0;
      std::vector<Mat<K>> blocks;
      for (size_t i = 0; i < parts.size(); ++i) {
        const ExtSpace<K>& comp = cache.get(sp.a, parts[i]);
        expected += comp.dim();
        blocks.push_back(push_matrix(total, ds.projections[i], comp));
      }
      if (total.dim() != expected) {
        c.status = "fail";
        c.witness = "dim Ext(A, sum) != sum of parts";
      } else {
        Mat<K> canonical = Mat<K>::Zero(expected, total.dim());
        Index off = 0;
        for (auto& blockm : blocks) {
          canonical.middleRows(off, blockm.rows()) = blockm;
          off += blockm.rows();
        }
        bind_to_field(canonical, q->field());
        if (rank(canonical) != expected) {
          c.status = "fail";
          c.witness = "canonical matrix is singular";
        }
      }
    }
    report.checks.push_back(std::move(c));
  }

  return report;
}

// Statuses of two reports agree check-by-check (used for mode independence
// and fold-vs-one-shot comparisons).
inline bool reports_agree(const VerificationReport& r1,
                          const VerificationReport& r2) {
  if (r1.checks.size() != r2.checks.size()) return false;
  for (size_t i = 0; i < r1.checks.size(); ++i)
    if (r1.checks[i].name != r2.checks[i].name ||
        r1.checks[i].status != r2.checks[i].status)
      return false;
  return true;
}

}  // namespace approxcat
