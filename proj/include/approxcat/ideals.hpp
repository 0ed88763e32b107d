#pragma once

// Morphism ideals as intensional expression trees with fibers computed on
// demand at concrete object pairs: generated ideals, right/left orthogonals
// of finite arrow sets, object ideals, the projective/injective morphism
// ideals, sums and intersections.

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "approxcat/arrowcat.hpp"

namespace approxcat {

template <class K>
class IdealSpec {
 public:
  struct Generated {
    std::vector<RepMorphism<K>> gens;
  };
  struct RightOrthogonal {
    std::vector<ArrowObject<K>> arrows;
  };
  struct LeftOrthogonal {
    std::vector<ArrowObject<K>> arrows;
  };
  struct ObjectIdeal {
    std::vector<Rep<K>> objects;
  };
  struct Proj {};
  struct Inj {};
  struct Sum {
    IdealSpec lhs, rhs;
  };
  struct Intersection {
    IdealSpec lhs, rhs;
  };
  using Node = std::variant<Generated, RightOrthogonal, LeftOrthogonal,
                            ObjectIdeal, Proj, Inj, Sum, Intersection>;

  // Defaults to the zero ideal (generated by nothing).
  IdealSpec() : IdealSpec(Node(Generated{})) {}

  static IdealSpec generated(std::vector<RepMorphism<K>> gens) {
    return IdealSpec(Node(Generated{std::move(gens)}));
  }
  static IdealSpec right_orthogonal(std::vector<ArrowObject<K>> arrows) {
    return IdealSpec(Node(RightOrthogonal{std::move(arrows)}));
  }
  static IdealSpec left_orthogonal(std::vector<ArrowObject<K>> arrows) {
    return IdealSpec(Node(LeftOrthogonal{std::move(arrows)}));
  }
  static IdealSpec object_ideal(std::vector<Rep<K>> objects) {
    return IdealSpec(Node(ObjectIdeal{std::move(objects)}));
  }
  static IdealSpec proj() { return IdealSpec(Node(Proj{})); }
  static IdealSpec inj() { return IdealSpec(Node(Inj{})); }
  static IdealSpec sum(IdealSpec lhs, IdealSpec rhs) {
    return IdealSpec(Node(Sum{std::move(lhs), std::move(rhs)}));
  }
  static IdealSpec intersection(IdealSpec lhs, IdealSpec rhs) {
    return IdealSpec(Node(Intersection{std::move(lhs), std::move(rhs)}));
  }

  const Node& node() const { return *node_; }

  std::string describe() const {
    return std::visit(
        [this](const auto& n) -> std::string {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, Generated>)
            return "generated(" + std::to_string(n.gens.size()) + " gens)";
          else if constexpr (std::is_same_v<T, RightOrthogonal>)
            return "right_orthogonal(" + std::to_string(n.arrows.size()) +
                   " arrows)";
          else if constexpr (std::is_same_v<T, LeftOrthogonal>)
            return "left_orthogonal(" + std::to_string(n.arrows.size()) +
                   " arrows)";
          else if constexpr (std::is_same_v<T, ObjectIdeal>)
            return "object_ideal(" + std::to_string(n.objects.size()) +
                   " objects)";
          else if constexpr (std::is_same_v<T, Proj>)
            return "projective_morphisms";
          else if constexpr (std::is_same_v<T, Inj>)
            return "injective_morphisms";
          else if constexpr (std::is_same_v<T, Sum>)
            return "sum(" + n.lhs.describe() + ", " + n.rhs.describe() + ")";
          else
            return "intersection(" + n.lhs.describe() + ", " +
                   n.rhs.describe() + ")";
        },
        *node_);
  }

 private:
  explicit IdealSpec(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

// The fiber of an ideal at (A, B): a subspace of Hom(A, B) in hom-basis
// coordinates.
template <class K>
struct IdealFiber {
  Rep<K> a;
  Rep<K> b;
  HomSpace<K> hom;
  Subspace<K> sub;  // ambient dim = hom.dim()

  Index dim() const { return sub.dim(); }
  RepMorphism<K> basis_morphism(Index i) const {
    return hom.from_coords(sub.basis.row(i).transpose());
  }
  bool contains(const RepMorphism<K>& f) const {
    return subspace_contains(sub, hom.coords(f));
  }
};

namespace detail {

// Span of all composites h o g o f over hom bases, one generator at a time.
template <class K>
Subspace<K> generated_fiber(const std::vector<RepMorphism<K>>& gens,
                            const Rep<K>& a, const Rep<K>& b,
                            const HomSpace<K>& hom) {
  std::vector<Vec<K>> rows;
  for (const auto& g : gens) {
    HomSpace<K> pre = hom_space(a, g.dom);
    HomSpace<K> post = hom_space(g.cod, b);
    for (Index i = 0; i < pre.dim(); ++i)
      for (Index j = 0; j < post.dim(); ++j)
        rows.push_back(hom.coords(
            compose(post.basis[j], compose(g, pre.basis[i]))));
  }
  Mat<K> stacked = Mat<K>::Zero(static_cast<Index>(rows.size()), hom.dim());
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i)
    stacked.row(i) = rows[i].transpose();
  Subspace<K> s = row_space(stacked);
  s.ambient = hom.dim();
  return s;
}

template <class K>
Subspace<K> object_ideal_fiber(const std::vector<Rep<K>>& objects,
                               const Rep<K>& a, const Rep<K>& b,
                               const HomSpace<K>& hom) {
  std::vector<Vec<K>> rows;
  for (const auto& obj : objects) {
    HomSpace<K> pre = hom_space(a, obj);
    HomSpace<K> post = hom_space(obj, b);
    for (Index i = 0; i < pre.dim(); ++i)
      for (Index j = 0; j < post.dim(); ++j)
        rows.push_back(hom.coords(compose(post.basis[j], pre.basis[i])));
  }
  Mat<K> stacked = Mat<K>::Zero(static_cast<Index>(rows.size()), hom.dim());
  for (Index i = 0; i < static_cast<Index>(rows.size()); ++i)
    stacked.row(i) = rows[i].transpose();
  Subspace<K> s = row_space(stacked);
  s.ambient = hom.dim();
  return s;
}

// {j : Ext(s, j) = 0 for all s}: kernel of the stacked linear conditions
// xi |-> push(pull(xi, s), j) over a basis of each Ext(S1, A).
template <class K>
Subspace<K> right_orthogonal_fiber(const std::vector<ArrowObject<K>>& arrows,
                                   const Rep<K>& a, const Rep<K>& b,
                                   const HomSpace<K>& hom,
                                   ExtCache<K>& cache) {
  std::vector<Mat<K>> blocks;
  Index total_rows = 0;
  for (const auto& s : arrows) {
    const ExtSpace<K>& e_s1_a = cache.get(s.cod(), a);
    const ExtSpace<K>& e_s0_a = cache.get(s.dom(), a);
    const ExtSpace<K>& e_s0_b = cache.get(s.dom(), b);
    Mat<K> pull_s = pull_matrix(e_s1_a, s.f, e_s0_a);
    // Condition block: rows = e_s1_a.dim * e_s0_b.dim, cols = hom.dim.
    Mat<K> block =
        Mat<K>::Zero(e_s1_a.dim() * e_s0_b.dim(), hom.dim());
    for (Index j = 0; j < hom.dim(); ++j) {
      Mat<K> push_j = push_matrix(e_s0_a, hom.basis[j], e_s0_b);
      Mat<K> cond = push_j * pull_s;  // e_s0_b.dim x e_s1_a.dim
      Index r = 0;
      for (Index x = 0; x < cond.cols(); ++x)
        for (Index y = 0; y < cond.rows(); ++y) block(r++, j) = cond(y, x);
    }
    total_rows += block.rows();
    blocks.push_back(std::move(block));
  }
  Mat<K> sys = Mat<K>::Zero(total_rows, hom.dim());
  Index off = 0;
  for (const auto& blockm : blocks) {
    sys.middleRows(off, blockm.rows()) = blockm;
    off += blockm.rows();
  }
  bind_to_field(sys, a.quiver->field());
  Subspace<K> s = kernel(sys);
  s.ambient = hom.dim();
  return s;
}

// {j : Ext(j, s) = 0 for all s}: dual, linear in j through the pullback.
template <class K>
Subspace<K> left_orthogonal_fiber(const std::vector<ArrowObject<K>>& arrows,
                                  const Rep<K>& a, const Rep<K>& b,
                                  const HomSpace<K>& hom,
                                  ExtCache<K>& cache) {
  std::vector<Mat<K>> blocks;
  Index total_rows = 0;
  for (const auto& s : arrows) {
    const ExtSpace<K>& e_b_s0 = cache.get(b, s.dom());
    const ExtSpace<K>& e_a_s0 = cache.get(a, s.dom());
    const ExtSpace<K>& e_a_s1 = cache.get(a, s.cod());
    Mat<K> push_s = push_matrix(e_a_s0, s.f, e_a_s1);
    Mat<K> block =
        Mat<K>::Zero(e_b_s0.dim() * e_a_s1.dim(), hom.dim());
    for (Index j = 0; j < hom.dim(); ++j) {
      Mat<K> pull_j = pull_matrix(e_b_s0, hom.basis[j], e_a_s0);
      Mat<K> cond = push_s * pull_j;  // e_a_s1.dim x e_b_s0.dim
      Index r = 0;
      for (Index x = 0; x < cond.cols(); ++x)
        for (Index y = 0; y < cond.rows(); ++y) block(r++, j) = cond(y, x);
    }
    total_rows += block.rows();
    blocks.push_back(std::move(block));
  }
  Mat<K> sys = Mat<K>::Zero(total_rows, hom.dim());
  Index off = 0;
  for (const auto& blockm : blocks) {
    sys.middleRows(off, blockm.rows()) = blockm;
    off += blockm.rows();
  }
  bind_to_field(sys, a.quiver->field());
  Subspace<K> s = kernel(sys);
  s.ambient = hom.dim();
  return s;
}

// Image of Hom(A, P(B)) -> Hom(A, B) along the projective cover deflation.
template <class K>
Subspace<K> proj_ideal_fiber(const Rep<K>& a, const Rep<K>& b,
                             const HomSpace<K>& hom) {
  ProjectiveCover<K> cover = projective_cover(b);
  HomSpace<K> up = hom_space(a, cover.cover);
  Mat<K> rows = Mat<K>::Zero(up.dim(), hom.dim());
  for (Index i = 0; i < up.dim(); ++i)
    rows.row(i) =
        hom.coords(compose(cover.deflation, up.basis[i])).transpose();
  Subspace<K> s = row_space(rows);
  s.ambient = hom.dim();
  return s;
}

template <class K>
Subspace<K> inj_ideal_fiber(const Rep<K>& a, const Rep<K>& b,
                            const HomSpace<K>& hom) {
  RepMorphism<K> env = injective_envelope(a);
  HomSpace<K> down = hom_space(env.cod, b);
  Mat<K> rows = Mat<K>::Zero(down.dim(), hom.dim());
  for (Index i = 0; i < down.dim(); ++i)
    rows.row(i) = hom.coords(compose(down.basis[i], env)).transpose();
  Subspace<K> s = row_space(rows);
  s.ambient = hom.dim();
  return s;
}

}  // namespace detail

template <class K>
IdealFiber<K> fiber(const IdealSpec<K>& spec, const Rep<K>& a, const Rep<K>& b,
                    ExtCache<K>& cache) {
  detail::require(a.quiver == b.quiver, "fiber: quiver mismatch");
  IdealFiber<K> out{a, b, hom_space(a, b), zero_subspace<K>(0)};
  using S = IdealSpec<K>;
  out.sub = std::visit(
      [&](const auto& n) -> Subspace<K> {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, typename S::Generated>)
          return detail::generated_fiber<K>(n.gens, a, b, out.hom);
        else if constexpr (std::is_same_v<T, typename S::RightOrthogonal>)
          return detail::right_orthogonal_fiber<K>(n.arrows, a, b, out.hom,
                                                   cache);
        else if constexpr (std::is_same_v<T, typename S::LeftOrthogonal>)
          return detail::left_orthogonal_fiber<K>(n.arrows, a, b, out.hom,
                                                  cache);
        else if constexpr (std::is_same_v<T, typename S::ObjectIdeal>)
          return detail::object_ideal_fiber<K>(n.objects, a, b, out.hom);
        else if constexpr (std::is_same_v<T, typename S::Proj>)
          return detail::proj_ideal_fiber<K>(a, b, out.hom);
        else if constexpr (std::is_same_v<T, typename S::Inj>)
          return detail::inj_ideal_fiber<K>(a, b, out.hom);
        else if constexpr (std::is_same_v<T, typename S::Sum>)
          return subspace_sum(fiber(n.lhs, a, b, cache).sub,
                              fiber(n.rhs, a, b, cache).sub);
        else
          return subspace_intersect(fiber(n.lhs, a, b, cache).sub,
                                    fiber(n.rhs, a, b, cache).sub);
      },
      spec.node());
  return out;
}

template <class K>
bool contains(const IdealSpec<K>& spec, const RepMorphism<K>& f,
              ExtCache<K>& cache) {
  return fiber(spec, f.dom, f.cod, cache).contains(f);
}

// A morphism is projective iff it lifts along the projective cover deflation
// of its codomain.
template <class K>
bool is_projective_morphism(const RepMorphism<K>& f) {
  ProjectiveCover<K> cover = projective_cover(f.cod);
  HomSpace<K> up = hom_space(f.dom, cover.cover);
  HomSpace<K> target = hom_space(f.dom, f.cod);
  Mat<K> post(target.dim(), up.dim());
  for (Index j = 0; j < up.dim(); ++j)
    post.col(j) = target.coords(compose(cover.deflation, up.basis[j]));
  return solve<K>(post, target.coords(f)).has_value();
}

template <class K>
bool is_injective_morphism(const RepMorphism<K>& f) {
  RepMorphism<K> env = injective_envelope(f.dom);
  HomSpace<K> down = hom_space(env.cod, f.cod);
  HomSpace<K> target = hom_space(f.dom, f.cod);
  Mat<K> pre(target.dim(), down.dim());
  for (Index j = 0; j < down.dim(); ++j)
    pre.col(j) = target.coords(compose(down.basis[j], env));
  return solve<K>(pre, target.coords(f)).has_value();
}

// Finite under-approximation of the fiber of the projectively-closed span of
// an arrow i: the ideal generated by i together with the ME-extensions
// p * i over projective-cover arrows p of up to `budget` probe objects and
// all basis classes zeta of the corresponding Ext group.
template <class K>
IdealFiber<K> proj_star_fiber(const ArrowObject<K>& i, const Rep<K>& a,
                              const Rep<K>& b, int budget,
                              ExtCache<K>& cache) {
  QuiverPtr q = i.f.dom.quiver;
  std::vector<RepMorphism<K>> gens{i.f};
  auto probes = probe_objects<K>(q, 0);
  int used = 0;
  for (const auto& [name, x] : probes) {
    if (used >= budget) break;
    ++used;
    ProjectiveCover<K> cover = projective_cover(x);
    ArrowObject<K> p{cover.deflation};
    const ExtSpace<K>& e = cache.get(i.f.cod, p.f.dom);
    for (Index j = 0; j < e.dim(); ++j) {
      Vec<K> zeta = e.zero_class();
      zeta(j) = K(1);
      bind_to_field(zeta, q->field());
      MeExtension<K> me = me_extension(p, i, zeta, cache);
      gens.push_back(me.c.f);
    }
  }
  return fiber(IdealSpec<K>::generated(std::move(gens)), a, b, cache);
}

}  // namespace approxcat
