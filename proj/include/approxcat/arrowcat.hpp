#pragma once

// The arrow category of the representation category with its exact structure:
// hom spaces as pullbacks, conflations of arrows, the matched-pair Ext space,
// Leibniz Hom/Ext, null-homotopy, ME-extensions b * a, the pushout-pullback
// factorization, and pushouts/pullbacks of pairs of arrow conflations.

#include <optional>
#include <vector>

#include "approxcat/homext.hpp"

namespace approxcat {

template <class K>
bool arrow_eq(const ArrowObject<K>& x, const ArrowObject<K>& y) {
  return morphism_eq(x.f, y.f);
}

template <class K>
struct ArrowMorphism {
  ArrowObject<K> dom;
  ArrowObject<K> cod;
  RepMorphism<K> f0;  // dom.dom() -> cod.dom()
  RepMorphism<K> f1;  // dom.cod() -> cod.cod()
};

template <class K>
ArrowMorphism<K> make_arrow_morphism(ArrowObject<K> dom, ArrowObject<K> cod,
                                     RepMorphism<K> f0, RepMorphism<K> f1) {
  detail::require(rep_eq(f0.dom, dom.dom()) && rep_eq(f0.cod, cod.dom()) &&
                      rep_eq(f1.dom, dom.cod()) && rep_eq(f1.cod, cod.cod()),
                  "make_arrow_morphism: end mismatch");
  detail::require(morphism_eq(compose(cod.f, f0), compose(f1, dom.f)),
                  "make_arrow_morphism: square does not commute");
  return ArrowMorphism<K>{std::move(dom), std::move(cod), std::move(f0),
                          std::move(f1)};
}

template <class K>
ArrowMorphism<K> identity_arrow_morphism(const ArrowObject<K>& a) {
  return ArrowMorphism<K>{a, a, identity_morphism(a.dom()),
                          identity_morphism(a.cod())};
}

template <class K>
ArrowMorphism<K> compose(const ArrowMorphism<K>& g, const ArrowMorphism<K>& f) {
  detail::require(arrow_eq(f.cod, g.dom), "arrow compose: middle mismatch");
  return ArrowMorphism<K>{f.dom, g.cod, compose(g.f0, f.f0),
                          compose(g.f1, f.f1)};
}

template <class K>
struct ArrowDirectSum {
  ArrowObject<K> sum;
  DirectSum<K> dom_sum;  // biproduct of the domains
  DirectSum<K> cod_sum;  // biproduct of the codomains
};

template <class K>
ArrowDirectSum<K> arrow_direct_sum(const std::vector<ArrowObject<K>>& parts,
                                   QuiverPtr q) {
  std::vector<Rep<K>> doms, cods;
  std::vector<RepMorphism<K>> fs;
  for (const auto& a : parts) {
    doms.push_back(a.dom());
    cods.push_back(a.cod());
    fs.push_back(a.f);
  }
  ArrowDirectSum<K> out;
  out.dom_sum = direct_sum<K>(doms, q);
  out.cod_sum = direct_sum<K>(cods, q);
  RepMorphism<K> f = fs.empty()
                         ? zero_morphism(out.dom_sum.sum, out.cod_sum.sum)
                         : direct_sum_morphism(fs, out.dom_sum, out.cod_sum);
  out.sum = ArrowObject<K>{std::move(f)};
  return out;
}

// ---------------------------------------------------------------------------
// Arrow hom spaces and Leibniz Hom

// Hom_Arr(a, b) inside Hom(A0, B0) x Hom(A1, B1): the commuting pairs.
template <class K>
class ArrowHomSpace {
 public:
  ArrowHomSpace(ArrowObject<K> a, ArrowObject<K> b)
      : a_(std::move(a)),
        b_(std::move(b)),
        h00_(hom_space(a_.dom(), b_.dom())),
        h11_(hom_space(a_.cod(), b_.cod())),
        h01_(hom_space(a_.dom(), b_.cod())) {
    // Kernel of (f0, f1) |-> b f0 - f1 a.
    Mat<K> sys(h01_.dim(), h00_.dim() + h11_.dim());
    for (Index j = 0; j < h00_.dim(); ++j)
      sys.col(j) = h01_.coords(compose(b_.f, h00_.basis[j]));
    for (Index j = 0; j < h11_.dim(); ++j)
      sys.col(h00_.dim() + j) =
          -h01_.coords(compose(h11_.basis[j], a_.f));
    bind_to_field(sys, a_.f.dom.quiver->field());
    pairs_ = kernel(sys);
  }

  const ArrowObject<K>& a() const { return a_; }
  const ArrowObject<K>& b() const { return b_; }
  Index dim() const { return pairs_.dim(); }
  const HomSpace<K>& h00() const { return h00_; }
  const HomSpace<K>& h11() const { return h11_; }

  ArrowMorphism<K> from_pair_vector(const Vec<K>& x) const {
    RepMorphism<K> f0 = h00_.from_coords(x.head(h00_.dim()));
    RepMorphism<K> f1 = h11_.from_coords(x.tail(h11_.dim()));
    return ArrowMorphism<K>{a_, b_, std::move(f0), std::move(f1)};
  }

  ArrowMorphism<K> basis_element(Index i) const {
    return from_pair_vector(pairs_.basis.row(i).transpose());
  }

  Vec<K> pair_vector(const ArrowMorphism<K>& f) const {
    Vec<K> x(h00_.dim() + h11_.dim());
    x.head(h00_.dim()) = h00_.coords(f.f0);
    x.tail(h11_.dim()) = h11_.coords(f.f1);
    return x;
  }

  const Subspace<K>& pair_subspace() const { return pairs_; }

 private:
  ArrowObject<K> a_, b_;
  HomSpace<K> h00_, h11_, h01_;
  Subspace<K> pairs_;
};

template <class K>
std::vector<ArrowMorphism<K>> arrow_hom_basis(const ArrowObject<K>& a,
                                              const ArrowObject<K>& b) {
  ArrowHomSpace<K> hs(a, b);
  std::vector<ArrowMorphism<K>> out;
  for (Index i = 0; i < hs.dim(); ++i) out.push_back(hs.basis_element(i));
  return out;
}

// Leibniz Hom of a and b: v |-> (v a, b v), landing in the commuting pairs.
template <class K>
struct LeibnizHom {
  ArrowHomSpace<K> pairs;
  HomSpace<K> h10;  // Hom(A1, B0)
  Mat<K> matrix;    // (dim h00 + dim h11) x dim h10, pair-vector columns

  explicit LeibnizHom(const ArrowObject<K>& a, const ArrowObject<K>& b)
      : pairs(a, b), h10(hom_space(a.cod(), b.dom())) {
    matrix = Mat<K>(pairs.h00().dim() + pairs.h11().dim(), h10.dim());
    for (Index j = 0; j < h10.dim(); ++j) {
      const RepMorphism<K>& v = h10.basis[j];
      matrix.col(j).head(pairs.h00().dim()) =
          pairs.h00().coords(compose(v, a.f));
      matrix.col(j).tail(pairs.h11().dim()) =
          pairs.h11().coords(compose(b.f, v));
    }
    bind_to_field(matrix, a.f.dom.quiver->field());
  }

  // A diagonal v for the square f, if one exists.
  std::optional<RepMorphism<K>> lift(const ArrowMorphism<K>& f) const {
    auto sol = solve<K>(matrix, pairs.pair_vector(f));
    if (!sol) return std::nullopt;
    return h10.from_coords(*sol);
  }

  // a has the left lifting property against b (equivalently b the right
  // lifting property against a) iff the Leibniz Hom is onto the pairs.
  bool lifting_property() const { return rank(matrix) == pairs.dim(); }
};

// ---------------------------------------------------------------------------
// Conflations of arrows

template <class K>
struct ArrowConflation {
  ArrowObject<K> sub;   // b
  ArrowObject<K> mid;   // c
  ArrowObject<K> quot;  // a
  ArrowMorphism<K> inflation;  // b -> c, componentwise inflation
  ArrowMorphism<K> deflation;  // c -> a, componentwise deflation

  Conflation<K> row0() const {
    return Conflation<K>{inflation.f0, deflation.f0};
  }
  Conflation<K> row1() const {
    return Conflation<K>{inflation.f1, deflation.f1};
  }
};

template <class K>
ConflationCheck<K> is_arrow_conflation(const ArrowConflation<K>& xi) {
  ConflationCheck<K> out;
  auto c0 = is_conflation(xi.inflation.f0, xi.deflation.f0);
  if (!c0.ok) {
    c0.diagnostic = "domain row: " + c0.diagnostic;
    return c0;
  }
  auto c1 = is_conflation(xi.inflation.f1, xi.deflation.f1);
  if (!c1.ok) {
    c1.diagnostic = "codomain row: " + c1.diagnostic;
    return c1;
  }
  if (!morphism_eq(compose(xi.mid.f, xi.inflation.f0),
                   compose(xi.inflation.f1, xi.sub.f))) {
    out.ok = false;
    out.diagnostic = "inflation square does not commute";
    return out;
  }
  if (!morphism_eq(compose(xi.quot.f, xi.deflation.f0),
                   compose(xi.deflation.f1, xi.mid.f))) {
    out.ok = false;
    out.diagnostic = "deflation square does not commute";
    return out;
  }
  return out;
}

template <class K>
ArrowConflation<K> make_arrow_conflation(ArrowObject<K> sub, ArrowObject<K> mid,
                                         ArrowObject<K> quot,
                                         ArrowMorphism<K> inflation,
                                         ArrowMorphism<K> deflation) {
  ArrowConflation<K> xi{std::move(sub), std::move(mid), std::move(quot),
                        std::move(inflation), std::move(deflation)};
  auto check = is_arrow_conflation(xi);
  detail::require(check.ok,
                  ("make_arrow_conflation: " + check.diagnostic).c_str());
  return xi;
}

// The trivial conflation 1_B -> 1_B -> 0 (used for empty pushout folds).
template <class K>
ArrowConflation<K> trivial_arrow_conflation(const Rep<K>& b) {
  ArrowObject<K> ib = identity_arrow(b);
  Rep<K> z = zero_rep<K>(b.quiver);
  ArrowObject<K> za = identity_arrow(z);
  ArrowMorphism<K> infl{ib, ib, identity_morphism(b), identity_morphism(b)};
  ArrowMorphism<K> defl{ib, za, zero_morphism(b, z), zero_morphism(b, z)};
  return ArrowConflation<K>{ib, ib, za, std::move(infl), std::move(defl)};
}

// ---------------------------------------------------------------------------
// The matched-pair Ext space of two arrows

// Ext_Arr(a, b) as the pullback inside Ext(A0, B0) x Ext(A1, B1): pairs with
// push_b(x0) = pull_a(x1) in Ext(A0, B1). Elements are ambient pair vectors;
// a deterministic kernel basis provides coordinates.
template <class K>
class ArrExtSpace {
 public:
  ArrExtSpace(ArrowObject<K> a, ArrowObject<K> b, ExtCache<K>& cache)
      : a_(std::move(a)), b_(std::move(b)) {
    e00_ = cache.get_ptr(a_.dom(), b_.dom());
    e11_ = cache.get_ptr(a_.cod(), b_.cod());
    e01_ = cache.get_ptr(a_.dom(), b_.cod());
    e10_ = cache.get_ptr(a_.cod(), b_.dom());
    push_b_ = push_matrix(*e00_, b_.f, *e01_);
    pull_a_ = pull_matrix(*e11_, a_.f, *e01_);
    Mat<K> sys = hstack<K>(push_b_, (-pull_a_).eval());
    bind_to_field(sys, quiver()->field());
    pairs_ = kernel(sys);
    pivots_ = rref_pivots(pairs_.basis);
    leibniz_ = Mat<K>(pairs_.dim(), e10_->dim());
    Mat<K> pull_00 = pull_matrix(*e10_, a_.f, *e00_);
    Mat<K> push_11 = push_matrix(*e10_, b_.f, *e11_);
    for (Index j = 0; j < e10_->dim(); ++j) {
      Vec<K> pair(e00_->dim() + e11_->dim());
      pair.head(e00_->dim()) = pull_00.col(j);
      pair.tail(e11_->dim()) = push_11.col(j);
      bind_to_field(pair, quiver()->field());
      auto c = coords_in_rref_span<K>(pairs_.basis, pivots_, pair);
      if (!c) detail::internal_error("leibniz ext: image not matched");
      leibniz_.col(j) = *c;
    }
    bind_to_field(leibniz_, quiver()->field());
  }

  QuiverPtr quiver() const { return a_.f.dom.quiver; }
  const ArrowObject<K>& a() const { return a_; }
  const ArrowObject<K>& b() const { return b_; }
  Index dim() const { return pairs_.dim(); }
  const ExtSpace<K>& e00() const { return *e00_; }
  const ExtSpace<K>& e11() const { return *e11_; }
  const ExtSpace<K>& e01() const { return *e01_; }
  const ExtSpace<K>& e10() const { return *e10_; }

  // Pair vector (x0; x1) of the class with the given basis coordinates.
  Vec<K> pair_of_coords(const Vec<K>& c) const {
    detail::require(c.size() == dim(), "arr ext: bad coordinate length");
    Vec<K> x = Vec<K>::Zero(e00_->dim() + e11_->dim());
    for (Index i = 0; i < dim(); ++i)
      for (Index j = 0; j < x.size(); ++j) x(j) += c(i) * pairs_.basis(i, j);
    bind_to_field(x, quiver()->field());
    return x;
  }

  std::optional<Vec<K>> coords_of_pair(const Vec<K>& pair) const {
    return coords_in_rref_span<K>(pairs_.basis, pivots_, pair);
  }

  Vec<K> x0(const Vec<K>& pair) const { return pair.head(e00_->dim()); }
  Vec<K> x1(const Vec<K>& pair) const { return pair.tail(e11_->dim()); }

  // epsilon: the common middle class in Ext(A0, B1).
  Vec<K> epsilon(const Vec<K>& pair) const {
    Vec<K> lhs = push_b_ * x0(pair);
    Vec<K> rhs = pull_a_ * x1(pair);
    bind_to_field(lhs, quiver()->field());
    bind_to_field(rhs, quiver()->field());
    if (!vec_eq(lhs, rhs))
      detail::internal_error("epsilon: pair does not match");
    return lhs;
  }

  bool is_null_homotopic(const Vec<K>& pair) const {
    Vec<K> e = epsilon(pair);
    return is_zero_mat<K>(e);
  }

  // Leibniz Ext: Ext(A1, B0) -> matched pairs, in basis coordinates.
  const Mat<K>& leibniz_matrix() const { return leibniz_; }

  // epsilon of Leibniz = ext_matrix(a, b); asserted where used.
  Mat<K> epsilon_matrix() const {
    Mat<K> m(e01_->dim(), dim());
    for (Index j = 0; j < dim(); ++j) {
      Vec<K> c = Vec<K>::Zero(dim());
      c(j) = K(1);
      m.col(j) = epsilon(pair_of_coords(c));
    }
    bind_to_field(m, quiver()->field());
    return m;
  }

  // ME witness: some zeta with leibniz(zeta) = the class, if the class is ME.
  std::optional<Vec<K>> me_witness(const Vec<K>& coords) const {
    return solve<K>(leibniz_, coords);
  }

  // Honest diagram for a matched pair: rows realize x0 and x1, middle
  // vertical solved against both squares.
  ArrowConflation<K> realize(const Vec<K>& pair) const {
    Conflation<K> r0 = e00_->realize(x0(pair));
    Conflation<K> r1 = e11_->realize(x1(pair));
    RepMorphism<K> c = solve_middle(r0, r1);
    ArrowObject<K> mid{c};
    ArrowMorphism<K> infl{b_ /*sub arrow is b*/, mid, r0.inflation,
                          r1.inflation};
    ArrowMorphism<K> defl{mid, a_, r0.deflation, r1.deflation};
    ArrowConflation<K> xi{b_, mid, a_, std::move(infl), std::move(defl)};
    auto check = is_arrow_conflation(xi);
    if (!check.ok) detail::internal_error("arrow realize: " + check.diagnostic);
    return xi;
  }

 private:
  // Middle vertical c with c m0 = m1 b and p1 c = a p0.
  RepMorphism<K> solve_middle(const Conflation<K>& r0,
                              const Conflation<K>& r1) const {
    HomSpace<K> hs = hom_space(r0.middle(), r1.middle());
    HomSpace<K> lo = hom_space(r0.sub(), r1.middle());
    HomSpace<K> hi = hom_space(r0.middle(), r1.quot());
    Mat<K> sys(lo.dim() + hi.dim(), hs.dim());
    for (Index j = 0; j < hs.dim(); ++j) {
      sys.col(j).head(lo.dim()) =
          lo.coords(compose(hs.basis[j], r0.inflation));
      sys.col(j).tail(hi.dim()) =
          hi.coords(compose(r1.deflation, hs.basis[j]));
    }
    Vec<K> rhs(lo.dim() + hi.dim());
    rhs.head(lo.dim()) = lo.coords(compose(r1.inflation, b_.f));
    rhs.tail(hi.dim()) = hi.coords(compose(a_.f, r0.deflation));
    auto sol = solve<K>(sys, rhs);
    if (!sol) detail::internal_error("arrow realize: no middle vertical");
    return hs.from_coords(*sol);
  }

  ArrowObject<K> a_, b_;
  std::shared_ptr<const ExtSpace<K>> e00_, e11_, e01_, e10_;
  Mat<K> push_b_;   // Ext(A0,B0) -> Ext(A0,B1)
  Mat<K> pull_a_;   // Ext(A1,B1) -> Ext(A0,B1)
  Subspace<K> pairs_;
  std::vector<Index> pivots_;
  Mat<K> leibniz_;  // dim x dim Ext(A1,B0)
};

template <class K>
LeibnizHom<K> leibniz_hom(const ArrowObject<K>& a, const ArrowObject<K>& b) {
  return LeibnizHom<K>(a, b);
}

template <class K>
ArrExtSpace<K> arr_ext_space(const ArrowObject<K>& a, const ArrowObject<K>& b,
                             ExtCache<K>& cache) {
  return ArrExtSpace<K>(a, b, cache);
}

template <class K>
Mat<K> leibniz_ext_map(const ArrowObject<K>& a, const ArrowObject<K>& b,
                       ExtCache<K>& cache) {
  return ArrExtSpace<K>(a, b, cache).leibniz_matrix();
}

template <class K>
std::optional<Vec<K>> is_me(const ArrExtSpace<K>& space, const Vec<K>& coords) {
  return space.me_witness(coords);
}

// ---------------------------------------------------------------------------
// ME-extensions b * a

template <class K>
struct MeExtension {
  ArrowObject<K> c;            // the arrow b * a
  RepMorphism<K> c1;           // C0 -> middle of the realizing conflation
  RepMorphism<K> c2;           // middle -> C1
  Conflation<K> middle;        // realize(zeta): B0 -> C -> A1
  ArrowConflation<K> ladder;   // b -> c -> a, validated
};

// Build the ME ladder of zeta in Ext(A1, B0): the middle row realizes zeta,
// the top row is its pullback along a, the bottom row its pushout along b,
// and c = c2 c1 factors the middle vertical.
template <class K>
MeExtension<K> me_extension(const ArrowObject<K>& b, const ArrowObject<K>& a,
                            const Vec<K>& zeta, ExtCache<K>& cache) {
  const ExtSpace<K>& e10 = cache.get(a.cod(), b.dom());
  detail::require(zeta.size() == e10.dim(), "me_extension: bad zeta length");
  Conflation<K> mid = e10.realize(zeta);
  PulledConflation<K> topr = pullback_deflation(mid, a.f);
  PushedConflation<K> botr = pushout_inflation(mid, b.f);
  MeExtension<K> out;
  out.middle = mid;
  out.c1 = topr.comparison;  // C0 -> C
  out.c2 = botr.comparison;  // C -> C1
  out.c = ArrowObject<K>{compose(out.c2, out.c1)};
  ArrowMorphism<K> infl{b, out.c, topr.row.inflation, botr.row.inflation};
  ArrowMorphism<K> defl{out.c, a, topr.row.deflation, botr.row.deflation};
  out.ladder = ArrowConflation<K>{b, out.c, a, std::move(infl), std::move(defl)};
  auto check = is_arrow_conflation(out.ladder);
  if (!check.ok) detail::internal_error("me_extension: " + check.diagnostic);
  return out;
}

// ---------------------------------------------------------------------------
// Pushout-pullback factorization of a matched pair

template <class K>
struct PPFactorization {
  Conflation<K> top;     // realize(x0): B0 -> C0 -> A0
  Conflation<K> middle;  // realize(epsilon): B1 -> C -> A0
  Conflation<K> bottom;  // realize(x1): B1 -> C1 -> A1
  RepMorphism<K> c1;     // C0 -> C   (pushout comparison)
  RepMorphism<K> c2;     // C -> C1   (pullback comparison)
};

template <class K>
PPFactorization<K> pp_factorize(const ArrExtSpace<K>& space,
                                const Vec<K>& pair) {
  PPFactorization<K> out;
  out.top = space.e00().realize(space.x0(pair));
  out.bottom = space.e11().realize(space.x1(pair));
  out.middle = space.e01().realize(space.epsilon(pair));

  PushedConflation<K> up = pushout_inflation(out.top, space.b().f);
  auto iso1 = equivalence_iso(up.row, out.middle);
  if (!iso1) detail::internal_error("pp_factorize: upper middle mismatch");
  out.c1 = compose(*iso1, up.comparison);

  PulledConflation<K> down = pullback_deflation(out.bottom, space.a().f);
  auto iso2 = equivalence_iso(out.middle, down.row);
  if (!iso2) detail::internal_error("pp_factorize: lower middle mismatch");
  out.c2 = compose(down.comparison, *iso2);

  // Ladder squares of display: (b, c1, 1) then (1, c2, a).
  if (!morphism_eq(compose(out.c1, out.top.inflation),
                   compose(out.middle.inflation, space.b().f)))
    detail::internal_error("pp_factorize: upper inflation square");
  if (!morphism_eq(out.top.deflation,
                   compose(out.middle.deflation, out.c1)))
    detail::internal_error("pp_factorize: upper deflation square");
  if (!morphism_eq(compose(out.c2, out.middle.inflation),
                   out.bottom.inflation))
    detail::internal_error("pp_factorize: lower inflation square");
  if (!morphism_eq(compose(space.a().f, out.middle.deflation),
                   compose(out.bottom.deflation, out.c2)))
    detail::internal_error("pp_factorize: lower deflation square");
  return out;
}

// ---------------------------------------------------------------------------
// Arrow-level pushout of two conflations under a common sub arrow

template <class K>
struct ArrowInflationPushout {
  ArrowConflation<K> conflation;  // sub -> pushout -> quot1 + quot2
  ArrowMorphism<K> into1;         // mid1 -> pushout
  ArrowMorphism<K> into2;         // mid2 -> pushout
  DirectSum<K> quot_dom_sum;      // biproduct of the quotient domains
  DirectSum<K> quot_cod_sum;      // biproduct of the quotient codomains
};

namespace detail {

// One component level of the arrow pushout: the pushout object, the diagonal
// inflation, the two comparisons, the raw cokernel projection and the
// deflation onto the literal biproduct of the given quotients.
template <class K>
struct LevelPushout {
  Rep<K> object;
  RepMorphism<K> proj;   // C1 + C2 -> object
  RepMorphism<K> into1;  // C1 -> object
  RepMorphism<K> into2;
  RepMorphism<K> diag;   // B -> object
  RepMorphism<K> onto_quots;  // object -> A1 + A2
  DirectSum<K> mid_sum;
};

template <class K>
LevelPushout<K> level_pushout(const RepMorphism<K>& m1,
                              const RepMorphism<K>& m2,
                              const RepMorphism<K>& p1,
                              const RepMorphism<K>& p2,
                              const DirectSum<K>& quot_sum) {
  require(rep_eq(m1.dom, m2.dom), "arrow pushout: common domain required");
  require(vertexwise_injective(m1) && vertexwise_injective(m2),
          "arrow pushout: components must be inflations");
  QuiverPtr q = m1.dom.quiver;
  LevelPushout<K> out;
  out.mid_sum = direct_sum<K>({m1.cod, m2.cod}, q);
  RepMorphism<K> u = morphism_add(
      compose(out.mid_sum.injections[0], m1),
      compose(out.mid_sum.injections[1], morphism_scale(K(-1), m2)));
  QuotRep<K> cok = cokernel_rep(u);
  out.object = cok.rep;
  out.proj = cok.projection;
  out.into1 = compose(cok.projection, out.mid_sum.injections[0]);
  out.into2 = compose(cok.projection, out.mid_sum.injections[1]);
  out.diag = compose(out.into1, m1);
  if (!morphism_eq(out.diag, compose(out.into2, m2)))
    internal_error("arrow pushout: diagonal mismatch");
  RepMorphism<K> blocks =
      direct_sum_morphism<K>({p1, p2}, out.mid_sum, quot_sum);
  out.onto_quots = factor_through_surjection(cok.projection, blocks);
  return out;
}

}  // namespace detail

// Pushout of xi1, xi2 along their common sub arrow, with the full grid:
// the new conflation is sub -> mid1 u mid2 -> quot1 + quot2, and the domain
// morphism of its inflation is the pushout of the two domain inflations.
template <class K>
ArrowInflationPushout<K> arrow_pushout_two_inflations(
    const ArrowConflation<K>& xi1, const ArrowConflation<K>& xi2) {
  detail::require(arrow_eq(xi1.sub, xi2.sub),
                  "arrow_pushout_two_inflations: sub arrows differ");
  QuiverPtr q = xi1.sub.f.dom.quiver;

  ArrowInflationPushout<K> out;
  out.quot_dom_sum =
      direct_sum<K>({xi1.quot.dom(), xi2.quot.dom()}, q);
  out.quot_cod_sum =
      direct_sum<K>({xi1.quot.cod(), xi2.quot.cod()}, q);

  auto lvl0 = detail::level_pushout<K>(
      xi1.inflation.f0, xi2.inflation.f0, xi1.deflation.f0, xi2.deflation.f0,
      out.quot_dom_sum);
  auto lvl1 = detail::level_pushout<K>(
      xi1.inflation.f1, xi2.inflation.f1, xi1.deflation.f1, xi2.deflation.f1,
      out.quot_cod_sum);

  // Induced arrow map on the pushout objects.
  RepMorphism<K> mids = direct_sum_morphism<K>(
      {xi1.mid.f, xi2.mid.f}, lvl0.mid_sum, lvl1.mid_sum);
  RepMorphism<K> carrow =
      factor_through_surjection(lvl0.proj, compose(lvl1.proj, mids));
  ArrowObject<K> pushout{carrow};

  ArrowObject<K> quot{direct_sum_morphism<K>(
      {xi1.quot.f, xi2.quot.f}, out.quot_dom_sum, out.quot_cod_sum)};

  ArrowMorphism<K> infl =
      make_arrow_morphism(xi1.sub, pushout, lvl0.diag, lvl1.diag);
  ArrowMorphism<K> defl =
      make_arrow_morphism(pushout, quot, lvl0.onto_quots, lvl1.onto_quots);
  out.conflation = make_arrow_conflation(xi1.sub, pushout, quot,
                                         std::move(infl), std::move(defl));
  out.into1 = make_arrow_morphism(xi1.mid, pushout, lvl0.into1, lvl1.into1);
  out.into2 = make_arrow_morphism(xi2.mid, pushout, lvl0.into2, lvl1.into2);
  return out;
}

// Dual: pullback of two arrow conflations over a common quotient arrow.
template <class K>
struct ArrowDeflationPullback {
  ArrowConflation<K> conflation;  // sub1 + sub2 -> pullback -> quot
  ArrowMorphism<K> onto1;         // pullback -> mid1
  ArrowMorphism<K> onto2;
  DirectSum<K> sub_dom_sum;
  DirectSum<K> sub_cod_sum;
};

namespace detail {

template <class K>
struct LevelPullback {
  Rep<K> object;
  RepMorphism<K> incl;   // object -> C1 + C2
  RepMorphism<K> onto1;  // object -> C1
  RepMorphism<K> onto2;
  RepMorphism<K> diag;   // object -> A
  RepMorphism<K> from_subs;  // B1 + B2 -> object
  DirectSum<K> mid_sum;
};

template <class K>
LevelPullback<K> level_pullback(const RepMorphism<K>& p1,
                                const RepMorphism<K>& p2,
                                const RepMorphism<K>& m1,
                                const RepMorphism<K>& m2,
                                const DirectSum<K>& sub_sum) {
  require(rep_eq(p1.cod, p2.cod), "arrow pullback: common codomain required");
  require(vertexwise_surjective(p1) && vertexwise_surjective(p2),
          "arrow pullback: components must be deflations");
  QuiverPtr q = p1.cod.quiver;
  LevelPullback<K> out;
  out.mid_sum = direct_sum<K>({p1.dom, p2.dom}, q);
  RepMorphism<K> u = cotuple_from_sum<K>(
      {p1, morphism_scale(K(-1), p2)}, out.mid_sum);
  SubRep<K> ker = kernel_rep(u);
  out.object = ker.rep;
  out.incl = ker.inclusion;
  out.onto1 = compose(out.mid_sum.projections[0], ker.inclusion);
  out.onto2 = compose(out.mid_sum.projections[1], ker.inclusion);
  out.diag = compose(p1, out.onto1);
  if (!morphism_eq(out.diag, compose(p2, out.onto2)))
    internal_error("arrow pullback: diagonal mismatch");
  RepMorphism<K> blocks =
      direct_sum_morphism<K>({m1, m2}, sub_sum, out.mid_sum);
  out.from_subs = factor_through_injection(ker.inclusion, blocks);
  return out;
}

}  // namespace detail

template <class K>
ArrowDeflationPullback<K> arrow_pullback_two_deflations(
    const ArrowConflation<K>& xi1, const ArrowConflation<K>& xi2) {
  detail::require(arrow_eq(xi1.quot, xi2.quot),
                  "arrow_pullback_two_deflations: quot arrows differ");
  QuiverPtr q = xi1.quot.f.dom.quiver;

  ArrowDeflationPullback<K> out;
  out.sub_dom_sum = direct_sum<K>({xi1.sub.dom(), xi2.sub.dom()}, q);
  out.sub_cod_sum = direct_sum<K>({xi1.sub.cod(), xi2.sub.cod()}, q);

  auto lvl0 = detail::level_pullback<K>(
      xi1.deflation.f0, xi2.deflation.f0, xi1.inflation.f0, xi2.inflation.f0,
      out.sub_dom_sum);
  auto lvl1 = detail::level_pullback<K>(
      xi1.deflation.f1, xi2.deflation.f1, xi1.inflation.f1, xi2.inflation.f1,
      out.sub_cod_sum);

  RepMorphism<K> mids = direct_sum_morphism<K>(
      {xi1.mid.f, xi2.mid.f}, lvl0.mid_sum, lvl1.mid_sum);
  RepMorphism<K> carrow = factor_through_injection(
      lvl1.incl, compose(mids, lvl0.incl));
  ArrowObject<K> pullback{carrow};

  ArrowObject<K> sub{direct_sum_morphism<K>(
      {xi1.sub.f, xi2.sub.f}, out.sub_dom_sum, out.sub_cod_sum)};

  ArrowMorphism<K> infl =
      make_arrow_morphism(sub, pullback, lvl0.from_subs, lvl1.from_subs);
  ArrowMorphism<K> defl =
      make_arrow_morphism(pullback, xi1.quot, lvl0.diag, lvl1.diag);
  out.conflation = make_arrow_conflation(sub, pullback, xi1.quot,
                                         std::move(infl), std::move(defl));
  out.onto1 = make_arrow_morphism(pullback, xi1.mid, lvl0.onto1, lvl1.onto1);
  out.onto2 = make_arrow_morphism(pullback, xi2.mid, lvl0.onto2, lvl1.onto2);
  return out;
}

}  // namespace approxcat
