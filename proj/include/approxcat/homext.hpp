#pragma once

// Conflations (short exact sequences of representations), the Ext^1 group
// with realization against a fixed projective-cover presentation, its
// pushout/pullback actions, the induced map Ext(a, b) for arrows, and the
// pushout of a pair of inflations with its 3x3 grid.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "approxcat/quiver.hpp"

namespace approxcat {

// An object of the arrow category: a morphism viewed as an object.
template <class K>
struct ArrowObject {
  RepMorphism<K> f;

  const Rep<K>& dom() const { return f.dom; }
  const Rep<K>& cod() const { return f.cod; }
};

template <class K>
ArrowObject<K> identity_arrow(const Rep<K>& m) {
  return ArrowObject<K>{identity_morphism(m)};
}

// ---------------------------------------------------------------------------
// Conflations

template <class K>
struct Conflation {
  RepMorphism<K> inflation;  // B -> C
  RepMorphism<K> deflation;  // C -> A

  const Rep<K>& sub() const { return inflation.dom; }
  const Rep<K>& middle() const { return inflation.cod; }
  const Rep<K>& quot() const { return deflation.cod; }
};

template <class K>
struct ConflationCheck {
  bool ok = true;
  std::string diagnostic;
};

template <class K>
ConflationCheck<K> is_conflation(const RepMorphism<K>& m,
                                 const RepMorphism<K>& p) {
  ConflationCheck<K> out;
  auto fail = [&](const std::string& why) {
    out.ok = false;
    out.diagnostic = why;
    return out;
  };
  if (!rep_eq(m.cod, p.dom)) return fail("middle objects differ");
  const Quiver& q = *m.dom.quiver;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const std::string& name = q.vertex_names()[v];
    if (rank(m.comp(v)) != m.dom.dim(v))
      return fail("inflation not injective at vertex " + name);
    if (rank(p.comp(v)) != p.cod.dim(v))
      return fail("deflation not surjective at vertex " + name);
    Mat<K> comp = p.comp(v) * m.comp(v);
    if (!is_zero_mat(comp))
      return fail("composite nonzero at vertex " + name);
    Subspace<K> im = column_space(m.comp(v));
    Subspace<K> ker = kernel(p.comp(v));
    if (!subspace_eq(im, ker))
      return fail("image != kernel at vertex " + name);
  }
  return out;
}

template <class K>
Conflation<K> make_conflation(RepMorphism<K> m, RepMorphism<K> p) {
  auto check = is_conflation(m, p);
  detail::require(check.ok, "make_conflation: not exact");
  return Conflation<K>{std::move(m), std::move(p)};
}

template <class K>
Conflation<K> split_conflation(const Rep<K>& b, const Rep<K>& a) {
  auto ds = direct_sum<K>({b, a}, b.quiver);
  return Conflation<K>{ds.injections[0], ds.projections[1]};
}

// Retraction r with r m = 1 (the split test for a conflation).
template <class K>
std::optional<RepMorphism<K>> find_retraction(const Conflation<K>& c);

// Middle isomorphism theta with theta m1 = m2 and p2 theta = p1, when the
// two conflations (with identical end terms) are equivalent.
template <class K>
std::optional<RepMorphism<K>> equivalence_iso(const Conflation<K>& c1,
                                              const Conflation<K>& c2);

// ---------------------------------------------------------------------------
// Ext^1 with a fixed presentation

// Ext(A, B) presented by the projective-cover conflation
// Omega A -> P(A) ->> A: the cokernel of Hom(P(A), B) -> Hom(Omega A, B).
// Classes are coordinate vectors against a deterministic basis; stored
// representatives are morphisms Omega A -> B.
template <class K>
class ExtSpace {
 public:
  ExtSpace(Rep<K> a, Rep<K> b) : a_(std::move(a)), b_(std::move(b)) {
    detail::require(a_.quiver == b_.quiver, "ext_space: quiver mismatch");
    cover_ = projective_cover(a_);
    omega_ = kernel_rep(cover_.deflation);
    hom_omega_b_ = hom_space(omega_.rep, b_);
    hom_p_b_ = hom_space(cover_.cover, b_);

    // Image of the restriction map Hom(P, B) -> Hom(Omega, B).
    Mat<K> restricted(hom_p_b_.dim(), hom_omega_b_.dim());
    for (Index i = 0; i < hom_p_b_.dim(); ++i) {
      RepMorphism<K> r = compose(hom_p_b_.basis[i], omega_.inclusion);
      restricted.row(i) = hom_omega_b_.coords(r).transpose();
    }
    Subspace<K> image = row_space(restricted);
    image.ambient = hom_omega_b_.dim();
    projection_ = quotient_projection_full<K>(image.basis, hom_omega_b_.dim());
    bind_to_field(projection_, a_.quiver->field());
    dim_ = projection_.rows();
    if (dim_ > 0) {
      Mat<K> id = Mat<K>::Identity(dim_, dim_);
      bind_to_field(id, a_.quiver->field());
      auto sec = solve_matrix<K>(projection_, id);
      if (!sec) detail::internal_error("ext_space: no section");
      section_ = std::move(*sec);
    } else {
      section_ = Mat<K>(hom_omega_b_.dim(), 0);
    }
  }

  const Rep<K>& a() const { return a_; }
  const Rep<K>& b() const { return b_; }
  Index dim() const { return dim_; }
  const ProjectiveCover<K>& cover() const { return cover_; }
  const SubRep<K>& omega() const { return omega_; }

  Vec<K> zero_class() const { return Vec<K>::Zero(dim_); }

  // Class of a representative morphism Omega A -> B.
  Vec<K> class_of(const RepMorphism<K>& t) const {
    Vec<K> c = projection_ * hom_omega_b_.coords(t);
    Vec<K> out = c;
    bind_to_field(out, a_.quiver->field());
    return out;
  }

  // A representative Omega A -> B of the class with the given coordinates.
  RepMorphism<K> representative(const Vec<K>& coords) const {
    detail::require(coords.size() == dim_, "ext class: bad coordinate length");
    if (dim_ == 0) return zero_morphism(omega_.rep, b_);
    Vec<K> h = section_ * coords;
    return hom_omega_b_.from_coords(h);
  }

  // Pushout of the cover conflation along a representative of x.
  Conflation<K> realize(const Vec<K>& x) const {
    RepMorphism<K> t = representative(x);
    auto ds = direct_sum<K>({b_, cover_.cover}, a_.quiver);
    // Relations (-t w, iota w).
    RepMorphism<K> u = morphism_add(
        compose(ds.injections[0], morphism_scale(K(-1), t)),
        compose(ds.injections[1], omega_.inclusion));
    QuotRep<K> cok = cokernel_rep(u);
    RepMorphism<K> m = compose(cok.projection, ds.injections[0]);
    RepMorphism<K> w = cotuple_from_sum<K>(
        {zero_morphism(b_, a_), cover_.deflation}, ds);
    RepMorphism<K> p = factor_through_surjection(cok.projection, w);
    auto check = is_conflation(m, p);
    if (!check.ok)
      detail::internal_error("realize: " + check.diagnostic);
    return Conflation<K>{std::move(m), std::move(p)};
  }

  // Connecting class of a conflation with end terms (A, B): lift the cover
  // deflation through p, restrict to Omega, and factor through m.
  Vec<K> classify(const Conflation<K>& c) const {
    detail::require(rep_eq(c.sub(), b_) && rep_eq(c.quot(), a_),
                    "classify: end terms do not match this ext space");
    HomSpace<K> hom_p_c = hom_space(cover_.cover, c.middle());
    HomSpace<K> hom_p_a = hom_space(cover_.cover, a_);
    Mat<K> post(hom_p_a.dim(), hom_p_c.dim());
    for (Index j = 0; j < hom_p_c.dim(); ++j)
      post.col(j) = hom_p_a.coords(compose(c.deflation, hom_p_c.basis[j]));
    auto sol = solve<K>(post, hom_p_a.coords(cover_.deflation));
    if (!sol) detail::internal_error("classify: no lift through deflation");
    RepMorphism<K> h = hom_p_c.from_coords(*sol);
    RepMorphism<K> t = factor_through_injection(
        c.inflation, compose(h, omega_.inclusion));
    return class_of(t);
  }

 private:
  Rep<K> a_, b_;
  ProjectiveCover<K> cover_;
  SubRep<K> omega_;
  HomSpace<K> hom_omega_b_;
  HomSpace<K> hom_p_b_;
  Mat<K> projection_;  // dim x dim Hom(Omega, B)
  Mat<K> section_;     // dim Hom(Omega, B) x dim
  Index dim_ = 0;
};

// Write-once cache of ext spaces keyed by the operand digests; constructions
// are deterministic, so shared reuse is sound.
template <class K>
class ExtCache {
 public:
  const ExtSpace<K>& get(const Rep<K>& a, const Rep<K>& b) {
    return *get_ptr(a, b);
  }

  std::shared_ptr<const ExtSpace<K>> get_ptr(const Rep<K>& a,
                                             const Rep<K>& b) {
    auto key = std::make_pair(rep_digest(a), rep_digest(b));
    auto it = spaces_.find(key);
    if (it == spaces_.end())
      it = spaces_.emplace(key, std::make_shared<ExtSpace<K>>(a, b)).first;
    return it->second;
  }

 private:
  std::map<std::pair<std::string, std::string>,
           std::shared_ptr<const ExtSpace<K>>>
      spaces_;
};

template <class K>
ExtSpace<K> ext_space(const Rep<K>& a, const Rep<K>& b) {
  return ExtSpace<K>(a, b);
}

// ---------------------------------------------------------------------------
// Functorial actions in coordinates

// Matrix of Ext(A, B) -> Ext(A, B'), x |-> [b o t_x].
template <class K>
Mat<K> push_matrix(const ExtSpace<K>& src, const RepMorphism<K>& b,
                   const ExtSpace<K>& dst) {
  detail::require(rep_eq(src.b(), b.dom) && rep_eq(dst.b(), b.cod) &&
                      rep_eq(src.a(), dst.a()),
                  "push_matrix: end mismatch");
  Mat<K> m(dst.dim(), src.dim());
  for (Index j = 0; j < src.dim(); ++j) {
    Vec<K> e = src.zero_class();
    e(j) = K(1);
    bind_to_field(e, src.a().quiver->field());
    m.col(j) = dst.class_of(compose(b, src.representative(e)));
  }
  return m;
}

// Matrix of Ext(A, B) -> Ext(A', B) along a: A' -> A: lift a to a comparison
// of covers, restrict to the syzygies, and precompose representatives.
template <class K>
Mat<K> pull_matrix(const ExtSpace<K>& src, const RepMorphism<K>& a,
                   const ExtSpace<K>& dst) {
  detail::require(rep_eq(src.a(), a.cod) && rep_eq(dst.a(), a.dom) &&
                      rep_eq(src.b(), dst.b()),
                  "pull_matrix: end mismatch");
  const Rep<K>& p_src = src.cover().cover;
  const Rep<K>& p_dst = dst.cover().cover;
  HomSpace<K> hom_pp = hom_space(p_dst, p_src);
  HomSpace<K> hom_pa = hom_space(p_dst, src.a());
  Mat<K> post(hom_pa.dim(), hom_pp.dim());
  for (Index j = 0; j < hom_pp.dim(); ++j)
    post.col(j) =
        hom_pa.coords(compose(src.cover().deflation, hom_pp.basis[j]));
  auto sol =
      solve<K>(post, hom_pa.coords(compose(a, dst.cover().deflation)));
  if (!sol) detail::internal_error("pull_matrix: no cover comparison");
  RepMorphism<K> atilde = hom_pp.from_coords(*sol);
  RepMorphism<K> omega_a = factor_through_injection(
      src.omega().inclusion, compose(atilde, dst.omega().inclusion));

  Mat<K> m(dst.dim(), src.dim());
  for (Index j = 0; j < src.dim(); ++j) {
    Vec<K> e = src.zero_class();
    e(j) = K(1);
    bind_to_field(e, src.a().quiver->field());
    m.col(j) = dst.class_of(compose(src.representative(e), omega_a));
  }
  return m;
}

template <class K>
Vec<K> push_class(const ExtSpace<K>& src, const Vec<K>& x,
                  const RepMorphism<K>& b, const ExtSpace<K>& dst) {
  detail::require(rep_eq(src.b(), b.dom) && rep_eq(dst.b(), b.cod) &&
                      rep_eq(src.a(), dst.a()),
                  "push_class: end mismatch");
  return dst.class_of(compose(b, src.representative(x)));
}

template <class K>
Vec<K> pull_class(const ExtSpace<K>& src, const Vec<K>& x,
                  const RepMorphism<K>& a, const ExtSpace<K>& dst) {
  Mat<K> m = pull_matrix(src, a, dst);
  Vec<K> out = m * x;
  bind_to_field(out, src.a().quiver->field());
  return out;
}

// The diagonal of the Ext-orthogonality square: the matrix of
// Ext(A1, B0) -> Ext(A0, B1) for arrows a: A0 -> A1 and b: B0 -> B1.
// Both composition orders are computed and must agree.
template <class K>
Mat<K> ext_matrix(const RepMorphism<K>& a, const RepMorphism<K>& b,
                  ExtCache<K>& cache) {
  const ExtSpace<K>& e10 = cache.get(a.cod, b.dom);
  const ExtSpace<K>& e00 = cache.get(a.dom, b.dom);
  const ExtSpace<K>& e01 = cache.get(a.dom, b.cod);
  const ExtSpace<K>& e11 = cache.get(a.cod, b.cod);
  Mat<K> route1 = push_matrix(e00, b, e01) * pull_matrix(e10, a, e00);
  Mat<K> route2 = pull_matrix(e11, a, e01) * push_matrix(e10, b, e11);
  Mat<K> r1 = route1, r2 = route2;
  bind_to_field(r1, a.dom.quiver->field());
  bind_to_field(r2, a.dom.quiver->field());
  if (!mat_eq(r1, r2))
    detail::internal_error("ext_matrix: pull/push order disagreement");
  return r1;
}

template <class K>
Mat<K> ext_matrix(const ArrowObject<K>& a, const ArrowObject<K>& b,
                  ExtCache<K>& cache) {
  return ext_matrix(a.f, b.f, cache);
}

template <class K>
Mat<K> ext_matrix(const RepMorphism<K>& a, const RepMorphism<K>& b) {
  ExtCache<K> cache;
  return ext_matrix(a, b, cache);
}

// ---------------------------------------------------------------------------
// Diagram-level pushout/pullback of a single conflation

template <class K>
struct PushedConflation {
  Conflation<K> row;          // B' -> D -> A
  RepMorphism<K> comparison;  // C -> D
};

template <class K>
PushedConflation<K> pushout_inflation(const Conflation<K>& c,
                                      const RepMorphism<K>& b) {
  detail::require(rep_eq(b.dom, c.sub()), "pushout_inflation: end mismatch");
  auto ds = direct_sum<K>({b.cod, c.middle()}, b.dom.quiver);
  RepMorphism<K> u =
      morphism_add(compose(ds.injections[0], b),
                   compose(ds.injections[1],
                           morphism_scale(K(-1), c.inflation)));
  QuotRep<K> cok = cokernel_rep(u);
  RepMorphism<K> m = compose(cok.projection, ds.injections[0]);
  RepMorphism<K> g = compose(cok.projection, ds.injections[1]);
  RepMorphism<K> w = cotuple_from_sum<K>(
      {zero_morphism(b.cod, c.quot()), c.deflation}, ds);
  RepMorphism<K> p = factor_through_surjection(cok.projection, w);
  auto check = is_conflation(m, p);
  if (!check.ok) detail::internal_error("pushout_inflation: " + check.diagnostic);
  return PushedConflation<K>{Conflation<K>{std::move(m), std::move(p)},
                             std::move(g)};
}

template <class K>
struct PulledConflation {
  Conflation<K> row;          // B -> D -> A'
  RepMorphism<K> comparison;  // D -> C
};

template <class K>
PulledConflation<K> pullback_deflation(const Conflation<K>& c,
                                       const RepMorphism<K>& a) {
  detail::require(rep_eq(a.cod, c.quot()), "pullback_deflation: end mismatch");
  auto ds = direct_sum<K>({c.middle(), a.dom}, a.dom.quiver);
  RepMorphism<K> u = cotuple_from_sum<K>(
      {c.deflation, morphism_scale(K(-1), a)}, ds);
  SubRep<K> ker = kernel_rep(u);
  RepMorphism<K> g = compose(ds.projections[0], ker.inclusion);
  RepMorphism<K> p = compose(ds.projections[1], ker.inclusion);
  RepMorphism<K> into = tuple_into_sum<K>(
      {c.inflation, zero_morphism(c.sub(), a.dom)}, ds);
  RepMorphism<K> m = factor_through_injection(ker.inclusion, into);
  auto check = is_conflation(m, p);
  if (!check.ok)
    detail::internal_error("pullback_deflation: " + check.diagnostic);
  return PulledConflation<K>{Conflation<K>{std::move(m), std::move(p)},
                             std::move(g)};
}

// ---------------------------------------------------------------------------
// Pushout of two inflations with a common domain: the full 3x3 grid

template <class K>
struct InflationPushout {
  Rep<K> pushout;              // C1 u_B C2
  RepMorphism<K> inflation;    // B -> pushout, the diagonal m1 u m2
  RepMorphism<K> into1;        // C1 -> pushout
  RepMorphism<K> into2;        // C2 -> pushout
  Conflation<K> row1;          // B  -> C1 -> A1
  Conflation<K> col1;          // B  -> C2 -> A2
  Conflation<K> row2;          // C2 -> pushout -> A1
  Conflation<K> col2;          // C1 -> pushout -> A2
  Conflation<K> diagonal;      // B -> pushout -> A1 + A2
  DirectSum<K> quotient_sum;   // A1 + A2 biproduct data
};

template <class K>
InflationPushout<K> pushout_two_inflations(const RepMorphism<K>& m1,
                                           const RepMorphism<K>& m2) {
  detail::require(rep_eq(m1.dom, m2.dom),
                  "pushout_two_inflations: domains differ");
  detail::require(vertexwise_injective(m1) && vertexwise_injective(m2),
                  "pushout_two_inflations: inputs must be inflations");
  QuiverPtr q = m1.dom.quiver;
  auto ds = direct_sum<K>({m1.cod, m2.cod}, q);
  RepMorphism<K> u =
      morphism_add(compose(ds.injections[0], m1),
                   compose(ds.injections[1], morphism_scale(K(-1), m2)));
  QuotRep<K> cok = cokernel_rep(u);

  InflationPushout<K> out;
  out.pushout = cok.rep;
  out.into1 = compose(cok.projection, ds.injections[0]);
  out.into2 = compose(cok.projection, ds.injections[1]);
  out.inflation = compose(out.into1, m1);
  if (!morphism_eq(out.inflation, compose(out.into2, m2)))
    detail::internal_error("pushout_two_inflations: diagonal mismatch");

  QuotRep<K> a1 = cokernel_rep(m1);
  QuotRep<K> a2 = cokernel_rep(m2);
  out.row1 = make_conflation(m1, a1.projection);
  out.col1 = make_conflation(m2, a2.projection);

  RepMorphism<K> r1 = factor_through_surjection(
      cok.projection,
      cotuple_from_sum<K>({a1.projection, zero_morphism(m2.cod, a1.rep)}, ds));
  RepMorphism<K> r2 = factor_through_surjection(
      cok.projection,
      cotuple_from_sum<K>({zero_morphism(m1.cod, a2.rep), a2.projection}, ds));
  out.row2 = make_conflation(out.into2, r1);
  out.col2 = make_conflation(out.into1, r2);

  out.quotient_sum = direct_sum<K>({a1.rep, a2.rep}, q);
  RepMorphism<K> rr = tuple_into_sum<K>({r1, r2}, out.quotient_sum);
  out.diagonal = make_conflation(out.inflation, rr);

  // The defining square: pushing the biproduct conflation along the sum
  // morphism lands on the diagonal row.
  auto dsb = direct_sum<K>({m1.dom, m1.dom}, q);
  RepMorphism<K> s = cotuple_from_sum<K>(
      {identity_morphism(m1.dom), identity_morphism(m1.dom)}, dsb);
  RepMorphism<K> msum =
      direct_sum_morphism<K>({m1, m2}, dsb, ds);
  if (!morphism_eq(compose(out.inflation, s),
                   compose(cok.projection, msum)))
    detail::internal_error("pushout_two_inflations: key square fails");
  return out;
}

// Dual: pullback of two deflations with a common codomain.
template <class K>
struct DeflationPullback {
  Rep<K> pullback;             // C1 x_A C2
  RepMorphism<K> deflation;    // pullback -> A, the diagonal
  RepMorphism<K> onto1;        // pullback -> C1
  RepMorphism<K> onto2;        // pullback -> C2
  Conflation<K> row1;          // B1 -> C1 -> A
  Conflation<K> col1;          // B2 -> C2 -> A
  Conflation<K> row2;          // B2 -> pullback -> C1
  Conflation<K> col2;          // B1 -> pullback -> C2
  Conflation<K> diagonal;      // B1 + B2 -> pullback -> A
  DirectSum<K> kernel_sum;     // B1 + B2 biproduct data
};

template <class K>
DeflationPullback<K> pullback_two_deflations(const RepMorphism<K>& p1,
                                             const RepMorphism<K>& p2) {
  detail::require(rep_eq(p1.cod, p2.cod),
                  "pullback_two_deflations: codomains differ");
  detail::require(vertexwise_surjective(p1) && vertexwise_surjective(p2),
                  "pullback_two_deflations: inputs must be deflations");
  QuiverPtr q = p1.cod.quiver;
  auto ds = direct_sum<K>({p1.dom, p2.dom}, q);
  RepMorphism<K> u = cotuple_from_sum<K>(
      {p1, morphism_scale(K(-1), p2)}, ds);
  SubRep<K> ker = kernel_rep(u);

  DeflationPullback<K> out;
  out.pullback = ker.rep;
  out.onto1 = compose(ds.projections[0], ker.inclusion);
  out.onto2 = compose(ds.projections[1], ker.inclusion);
  out.deflation = compose(p1, out.onto1);
  if (!morphism_eq(out.deflation, compose(p2, out.onto2)))
    detail::internal_error("pullback_two_deflations: diagonal mismatch");

  SubRep<K> b1 = kernel_rep(p1);
  SubRep<K> b2 = kernel_rep(p2);
  out.row1 = make_conflation(b1.inclusion, p1);
  out.col1 = make_conflation(b2.inclusion, p2);

  RepMorphism<K> j2 = factor_through_injection(
      ker.inclusion,
      tuple_into_sum<K>({zero_morphism(b2.rep, p1.dom), b2.inclusion}, ds));
  RepMorphism<K> j1 = factor_through_injection(
      ker.inclusion,
      tuple_into_sum<K>({b1.inclusion, zero_morphism(b1.rep, p2.dom)}, ds));
  out.row2 = make_conflation(j2, out.onto1);
  out.col2 = make_conflation(j1, out.onto2);

  out.kernel_sum = direct_sum<K>({b1.rep, b2.rep}, q);
  RepMorphism<K> jj = factor_through_injection(
      ker.inclusion,
      direct_sum_morphism<K>({b1.inclusion, b2.inclusion}, out.kernel_sum, ds));
  out.diagonal = make_conflation(jj, out.deflation);
  return out;
}

// ---------------------------------------------------------------------------

template <class K>
std::optional<RepMorphism<K>> find_retraction(const Conflation<K>& c) {
  HomSpace<K> hs = hom_space(c.middle(), c.sub());
  HomSpace<K> end_b = hom_space(c.sub(), c.sub());
  Mat<K> post(end_b.dim(), hs.dim());
  for (Index j = 0; j < hs.dim(); ++j)
    post.col(j) = end_b.coords(compose(hs.basis[j], c.inflation));
  auto sol = solve<K>(post, end_b.coords(identity_morphism(c.sub())));
  if (!sol) return std::nullopt;
  return hs.from_coords(*sol);
}

template <class K>
std::optional<RepMorphism<K>> equivalence_iso(const Conflation<K>& c1,
                                              const Conflation<K>& c2) {
  detail::require(rep_eq(c1.sub(), c2.sub()) && rep_eq(c1.quot(), c2.quot()),
                  "equivalence_iso: end terms differ");
  HomSpace<K> hs = hom_space(c1.middle(), c2.middle());
  HomSpace<K> from_b = hom_space(c1.sub(), c2.middle());
  HomSpace<K> to_a = hom_space(c1.middle(), c2.quot());
  Mat<K> sys(from_b.dim() + to_a.dim(), hs.dim());
  for (Index j = 0; j < hs.dim(); ++j) {
    sys.col(j).head(from_b.dim()) =
        from_b.coords(compose(hs.basis[j], c1.inflation));
    sys.col(j).tail(to_a.dim()) =
        to_a.coords(compose(c2.deflation, hs.basis[j]));
  }
  Vec<K> rhs(from_b.dim() + to_a.dim());
  rhs.head(from_b.dim()) = from_b.coords(c2.inflation);
  rhs.tail(to_a.dim()) = to_a.coords(c1.deflation);
  auto sol = solve<K>(sys, rhs);
  if (!sol) return std::nullopt;
  RepMorphism<K> theta = hs.from_coords(*sol);
  if (!vertexwise_injective(theta) || !vertexwise_surjective(theta))
    detail::internal_error("equivalence_iso: solution not invertible");
  return theta;
}

}  // namespace approxcat
