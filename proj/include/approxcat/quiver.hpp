#pragma once

// Acyclic quivers and their finite-dimensional representations: morphism
// spaces, biproducts, kernels/cokernels, the canonical modules S(v), P(v),
// I(v), radicals and covers, and the Auslander-Reiten translate.

#include <algorithm>
#include <map>
#include <mutex>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "approxcat/exactlin.hpp"

namespace approxcat {

struct QuiverArrow {
  std::string name;
  int source = 0;
  int target = 0;
};

// A path is a composable arrow sequence, stored first-traversed-first.
// The empty sequence is the lazy path at `source` (= `target`).
struct Path {
  int source = 0;
  int target = 0;
  std::vector<int> arrows;

  size_t length() const { return arrows.size(); }
  friend bool operator==(const Path& a, const Path& b) {
    return a.source == b.source && a.target == b.target && a.arrows == b.arrows;
  }
};

class Quiver;
using QuiverPtr = std::shared_ptr<const Quiver>;

class Quiver : public std::enable_shared_from_this<Quiver> {
 public:
  static QuiverPtr make(std::vector<std::string> vertices,
                        std::vector<QuiverArrow> arrows, FieldSpec field) {
    auto q = std::shared_ptr<Quiver>(
        new Quiver(std::move(vertices), std::move(arrows), field));
    q->validate();
    return q;
  }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::vector<QuiverArrow>& arrows() const { return arrows_; }
  const QuiverArrow& arrow(int i) const { return arrows_[i]; }
  const FieldSpec& field() const { return field_; }

  int vertex_index(const std::string& name) const {
    for (int v = 0; v < vertex_count(); ++v)
      if (vertices_[v] == name) return v;
    detail::require(false, "unknown vertex name");
    return -1;
  }
  int arrow_index(const std::string& name) const {
    for (int a = 0; a < arrow_count(); ++a)
      if (arrows_[a].name == name) return a;
    detail::require(false, "unknown arrow name");
    return -1;
  }

  // All paths starting at v, grouped per target vertex, in deterministic
  // discovery order (arrows in declaration order, shorter prefixes first).
  const std::vector<std::vector<Path>>& paths_from(int v) const {
    return paths_from_[v];
  }
  const std::vector<Path>& paths_between(int v, int w) const {
    return paths_from_[v][w];
  }

  int path_position(const Path& p) const {
    const auto& list = paths_from_[p.source][p.target];
    for (int i = 0; i < static_cast<int>(list.size()); ++i)
      if (list[i] == p) return i;
    detail::require(false, "path not found");
    return -1;
  }

  // Same vertices, reversed arrows (names kept); built once, shared.
  QuiverPtr opposite() const {
    std::call_once(opposite_once_, [this] {
      std::vector<QuiverArrow> rev;
      rev.reserve(arrows_.size());
      for (const auto& a : arrows_)
        rev.push_back(QuiverArrow{a.name, a.target, a.source});
      QuiverPtr op = make(vertices_, std::move(rev), field_);
      std::call_once(op->opposite_once_,
                     [&] { op->opposite_ = shared_from_this(); });
      opposite_ = std::move(op);
    });
    return opposite_;
  }

 private:
  Quiver(std::vector<std::string> vertices, std::vector<QuiverArrow> arrows,
         FieldSpec field)
      : vertices_(std::move(vertices)),
        arrows_(std::move(arrows)),
        field_(field) {}

  void validate() {
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j)
        detail::require(vertices_[i] != vertices_[j],
                        "duplicate vertex name");
    for (size_t i = 0; i < arrows_.size(); ++i) {
      detail::require(arrows_[i].source >= 0 &&
                          arrows_[i].source < vertex_count() &&
                          arrows_[i].target >= 0 &&
                          arrows_[i].target < vertex_count(),
                      "arrow endpoint out of range");
      for (size_t j = i + 1; j < arrows_.size(); ++j)
        detail::require(arrows_[i].name != arrows_[j].name,
                        "duplicate arrow name");
    }
    // No directed cycles: depth-bounded closure must terminate.
    build_paths();
  }

  void build_paths() {
    const int n = vertex_count();
    paths_from_.assign(n, std::vector<std::vector<Path>>(n));
    for (int v = 0; v < n; ++v) {
      std::vector<Path> frontier{Path{v, v, {}}};
      paths_from_[v][v].push_back(frontier[0]);
      while (!frontier.empty()) {
        std::vector<Path> next;
        for (const Path& p : frontier)
          for (int a = 0; a < arrow_count(); ++a)
            if (arrows_[a].source == p.target) {
              Path q = p;
              q.arrows.push_back(a);
              q.target = arrows_[a].target;
              // A path longer than the vertex count repeats a vertex.
              detail::require(q.arrows.size() < static_cast<size_t>(n),
                              "quiver has a directed cycle");
              paths_from_[v][q.target].push_back(q);
              next.push_back(std::move(q));
            }
        frontier = std::move(next);
      }
    }
  }

  std::vector<std::string> vertices_;
  std::vector<QuiverArrow> arrows_;
  FieldSpec field_;
  std::vector<std::vector<std::vector<Path>>> paths_from_;
  mutable std::once_flag opposite_once_;
  mutable QuiverPtr opposite_;
};

// A representation: one space per vertex, one matrix per arrow with shape
// dim(target) x dim(source).
template <class K>
struct Rep {
  QuiverPtr quiver;
  std::vector<Index> dims;
  std::vector<Mat<K>> maps;

  Index dim(int v) const { return dims[v]; }
  Index total_dim() const {
    return std::accumulate(dims.begin(), dims.end(), Index(0));
  }
  const Mat<K>& map(int a) const { return maps[a]; }
};

template <class K>
Rep<K> make_rep(QuiverPtr q, std::vector<Index> dims,
                std::vector<Mat<K>> maps) {
  detail::require(static_cast<int>(dims.size()) == q->vertex_count(),
                  "make_rep: dims size mismatch");
  detail::require(static_cast<int>(maps.size()) == q->arrow_count(),
                  "make_rep: maps size mismatch");
  for (int a = 0; a < q->arrow_count(); ++a) {
    const auto& ar = q->arrow(a);
    detail::require(maps[a].rows() == dims[ar.target] &&
                        maps[a].cols() == dims[ar.source],
                    "make_rep: arrow matrix shape mismatch");
    bind_to_field(maps[a], q->field());
  }
  return Rep<K>{std::move(q), std::move(dims), std::move(maps)};
}

template <class K>
Rep<K> zero_rep(QuiverPtr q) {
  std::vector<Index> dims(q->vertex_count(), 0);
  std::vector<Mat<K>> maps(q->arrow_count(), Mat<K>(0, 0));
  return Rep<K>{std::move(q), std::move(dims), std::move(maps)};
}

template <class K>
bool rep_eq(const Rep<K>& a, const Rep<K>& b) {
  if (a.quiver != b.quiver || a.dims != b.dims) return false;
  for (size_t i = 0; i < a.maps.size(); ++i)
    if (!mat_eq(a.maps[i], b.maps[i])) return false;
  return true;
}

template <class K>
std::string rep_digest(const Rep<K>& r) {
  std::ostringstream os;
  for (Index d : r.dims) os << d << ',';
  os << '|';
  for (const auto& m : r.maps) {
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j)
        os << field_traits<K>::to_string(m(i, j), r.quiver->field()) << ',';
    os << ';';
  }
  return os.str();
}

// The action of a path: composite of arrow matrices along it.
template <class K>
Mat<K> path_action(const Rep<K>& r, const Path& p) {
  Mat<K> m = Mat<K>::Identity(r.dim(p.source), r.dim(p.source));
  bind_to_field(m, r.quiver->field());
  for (int a : p.arrows) m = r.map(a) * m;
  return m;
}

// Morphism of representations: commuting squares are checked on construction.
template <class K>
struct RepMorphism {
  Rep<K> dom;
  Rep<K> cod;
  std::vector<Mat<K>> comps;  // per vertex, shape cod.dim(v) x dom.dim(v)

  const Mat<K>& comp(int v) const { return comps[v]; }
};

template <class K>
bool commutes(const Rep<K>& dom, const Rep<K>& cod,
              const std::vector<Mat<K>>& comps) {
  const Quiver& q = *dom.quiver;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    Mat<K> lhs = cod.map(a) * comps[ar.source];
    Mat<K> rhs = comps[ar.target] * dom.map(a);
    if (!mat_eq(lhs, rhs)) return false;
  }
  return true;
}

template <class K>
RepMorphism<K> make_morphism(Rep<K> dom, Rep<K> cod,
                             std::vector<Mat<K>> comps) {
  detail::require(dom.quiver == cod.quiver, "make_morphism: quiver mismatch");
  const Quiver& q = *dom.quiver;
  detail::require(static_cast<int>(comps.size()) == q.vertex_count(),
                  "make_morphism: comps size mismatch");
  for (int v = 0; v < q.vertex_count(); ++v) {
    detail::require(comps[v].rows() == cod.dim(v) &&
                        comps[v].cols() == dom.dim(v),
                    "make_morphism: component shape mismatch");
    bind_to_field(comps[v], q.field());
  }
  detail::require(commutes(dom, cod, comps),
                  "make_morphism: squares do not commute");
  return RepMorphism<K>{std::move(dom), std::move(cod), std::move(comps)};
}

template <class K>
RepMorphism<K> identity_morphism(const Rep<K>& m) {
  std::vector<Mat<K>> comps;
  for (Index d : m.dims) {
    Mat<K> id = Mat<K>::Identity(d, d);
    bind_to_field(id, m.quiver->field());
    comps.push_back(std::move(id));
  }
  return RepMorphism<K>{m, m, std::move(comps)};
}

template <class K>
RepMorphism<K> zero_morphism(const Rep<K>& dom, const Rep<K>& cod) {
  detail::require(dom.quiver == cod.quiver, "zero_morphism: quiver mismatch");
  std::vector<Mat<K>> comps;
  for (int v = 0; v < dom.quiver->vertex_count(); ++v)
    comps.push_back(Mat<K>::Zero(cod.dim(v), dom.dim(v)));
  return RepMorphism<K>{dom, cod, std::move(comps)};
}

template <class K>
RepMorphism<K> compose(const RepMorphism<K>& g, const RepMorphism<K>& f) {
  detail::require(rep_eq(f.cod, g.dom), "compose: middle object mismatch");
  std::vector<Mat<K>> comps;
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v)
    comps.push_back(g.comp(v) * f.comp(v));
  return RepMorphism<K>{f.dom, g.cod, std::move(comps)};
}

template <class K>
RepMorphism<K> morphism_add(const RepMorphism<K>& f, const RepMorphism<K>& g) {
  detail::require(rep_eq(f.dom, g.dom) && rep_eq(f.cod, g.cod),
                  "morphism_add: end mismatch");
  std::vector<Mat<K>> comps;
  for (size_t v = 0; v < f.comps.size(); ++v)
    comps.push_back(f.comps[v] + g.comps[v]);
  return RepMorphism<K>{f.dom, f.cod, std::move(comps)};
}

template <class K>
RepMorphism<K> morphism_scale(const K& c, const RepMorphism<K>& f) {
  std::vector<Mat<K>> comps;
  for (const auto& m : f.comps) comps.push_back((m * c).eval());
  return RepMorphism<K>{f.dom, f.cod, std::move(comps)};
}

template <class K>
bool morphism_eq(const RepMorphism<K>& f, const RepMorphism<K>& g) {
  if (!rep_eq(f.dom, g.dom) || !rep_eq(f.cod, g.cod)) return false;
  for (size_t v = 0; v < f.comps.size(); ++v)
    if (!mat_eq(f.comps[v], g.comps[v])) return false;
  return true;
}

template <class K>
bool is_zero_morphism(const RepMorphism<K>& f) {
  for (const auto& m : f.comps)
    if (!is_zero_mat(m)) return false;
  return true;
}

template <class K>
bool vertexwise_injective(const RepMorphism<K>& f) {
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v)
    if (rank(f.comp(v)) != f.dom.dim(v)) return false;
  return true;
}

template <class K>
bool vertexwise_surjective(const RepMorphism<K>& f) {
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v)
    if (rank(f.comp(v)) != f.cod.dim(v)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Hom spaces

// Flat coordinates for morphisms dom -> cod: concatenation over vertices of
// row-major flattenings of the components.
template <class K>
struct HomSpace {
  Rep<K> dom;
  Rep<K> cod;
  std::vector<RepMorphism<K>> basis;
  Mat<K> basis_rows;           // RREF rows, one per basis morphism
  std::vector<Index> pivots;   // pivot columns of basis_rows
  Index ambient = 0;

  Index dim() const { return static_cast<Index>(basis.size()); }

  Vec<K> flatten_morphism(const RepMorphism<K>& f) const {
    Vec<K> out(ambient);
    Index off = 0;
    for (const auto& c : f.comps) {
      Vec<K> fc = flatten(c);
      out.segment(off, fc.size()) = fc;
      off += fc.size();
    }
    return out;
  }

  RepMorphism<K> unflatten_morphism(const Vec<K>& x) const {
    std::vector<Mat<K>> comps;
    Index off = 0;
    for (int v = 0; v < dom.quiver->vertex_count(); ++v) {
      Index r = cod.dim(v), c = dom.dim(v);
      comps.push_back(unflatten<K>(x.segment(off, r * c), r, c));
      off += r * c;
    }
    return RepMorphism<K>{dom, cod, std::move(comps)};
  }

  // Coordinates of f in this basis; f must be a genuine morphism dom -> cod.
  Vec<K> coords(const RepMorphism<K>& f) const {
    auto c = coords_in_rref_span<K>(basis_rows, pivots, flatten_morphism(f));
    if (!c) detail::internal_error("HomSpace::coords: not in the hom space");
    return *c;
  }

  RepMorphism<K> from_coords(const Vec<K>& c) const {
    detail::require(c.size() == dim(), "HomSpace::from_coords: bad length");
    Vec<K> x = Vec<K>::Zero(ambient);
    for (Index i = 0; i < dim(); ++i)
      for (Index j = 0; j < ambient; ++j) x(j) += c(i) * basis_rows(i, j);
    return unflatten_morphism(x);
  }
};

// Basis of Hom(m, n): kernel of the commuting-square constraints
// f |-> (n_a f_s - f_t m_a) over all arrows.
template <class K>
HomSpace<K> hom_space(const Rep<K>& m, const Rep<K>& n) {
  detail::require(m.quiver == n.quiver, "hom_space: quiver mismatch");
  const Quiver& q = *m.quiver;
  const int nv = q.vertex_count();

  std::vector<Index> offset(nv + 1, 0);
  for (int v = 0; v < nv; ++v)
    offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  const Index unknowns = offset[nv];

  Index crows = 0;
  for (int a = 0; a < q.arrow_count(); ++a)
    crows += n.dim(q.arrow(a).target) * m.dim(q.arrow(a).source);

  // Unknown f_v entry (r, c) sits at flat position offset[v] + r*m.dim(v)+c.
  auto pos = [&](int v, Index r, Index c) {
    return offset[v] + r * m.dim(v) + c;
  };

  Mat<K> sys = Mat<K>::Zero(crows, unknowns);
  Index row = 0;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    const Index dt = n.dim(ar.target), ds = m.dim(ar.source);
    // Constraint block E = n_a f_s - f_t m_a, entry (i, j):
    //   sum_k n_a(i,k) f_s(k,j)  -  sum_l f_t(i,l) m_a(l,j).
    for (Index i = 0; i < dt; ++i)
      for (Index j = 0; j < ds; ++j) {
        for (Index k = 0; k < n.dim(ar.source); ++k)
          sys(row, pos(ar.source, k, j)) += n.map(a)(i, k);
        for (Index l = 0; l < m.dim(ar.target); ++l)
          sys(row, pos(ar.target, i, l)) -= m.map(a)(l, j);
        ++row;
      }
  }
  bind_to_field(sys, q.field());

  Subspace<K> ker = kernel(sys);
  HomSpace<K> hs;
  hs.dom = m;
  hs.cod = n;
  hs.ambient = unknowns;
  hs.basis_rows = ker.basis;
  hs.pivots = rref_pivots(ker.basis);
  for (Index i = 0; i < ker.dim(); ++i) {
    Vec<K> x = ker.basis.row(i).transpose();
    hs.basis.push_back(hs.unflatten_morphism(x));
  }
  return hs;
}

template <class K>
std::vector<RepMorphism<K>> hom_basis(const Rep<K>& m, const Rep<K>& n) {
  return hom_space(m, n).basis;
}

// ---------------------------------------------------------------------------
// Biproducts

template <class K>
struct DirectSum {
  Rep<K> sum;
  std::vector<RepMorphism<K>> injections;
  std::vector<RepMorphism<K>> projections;
};

template <class K>
DirectSum<K> direct_sum(const std::vector<Rep<K>>& parts, QuiverPtr q) {
  detail::require(q != nullptr, "direct_sum: quiver required");
  for (const auto& r : parts)
    detail::require(r.quiver == q, "direct_sum: quiver mismatch");
  const int nv = q->vertex_count();

  std::vector<Index> dims(nv, 0);
  for (const auto& r : parts)
    for (int v = 0; v < nv; ++v) dims[v] += r.dim(v);

  std::vector<Mat<K>> maps;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const auto& ar = q->arrow(a);
    Mat<K> m = Mat<K>::Zero(dims[ar.target], dims[ar.source]);
    Index ro = 0, co = 0;
    for (const auto& r : parts) {
      m.block(ro, co, r.dim(ar.target), r.dim(ar.source)) = r.map(a);
      ro += r.dim(ar.target);
      co += r.dim(ar.source);
    }
    maps.push_back(std::move(m));
  }
  DirectSum<K> out;
  out.sum = make_rep<K>(q, dims, std::move(maps));

  std::vector<Index> off(nv, 0);
  for (const auto& r : parts) {
    std::vector<Mat<K>> inj, proj;
    for (int v = 0; v < nv; ++v) {
      Mat<K> iv = Mat<K>::Zero(dims[v], r.dim(v));
      Mat<K> pv = Mat<K>::Zero(r.dim(v), dims[v]);
      for (Index i = 0; i < r.dim(v); ++i) {
        iv(off[v] + i, i) = K(1);
        pv(i, off[v] + i) = K(1);
      }
      bind_to_field(iv, q->field());
      bind_to_field(pv, q->field());
      inj.push_back(std::move(iv));
      proj.push_back(std::move(pv));
    }
    out.injections.push_back(RepMorphism<K>{r, out.sum, std::move(inj)});
    out.projections.push_back(RepMorphism<K>{out.sum, r, std::move(proj)});
    for (int v = 0; v < nv; ++v) off[v] += r.dim(v);
  }
  return out;
}

template <class K>
DirectSum<K> direct_sum(const std::vector<Rep<K>>& parts) {
  detail::require(!parts.empty(), "direct_sum: empty list needs a quiver");
  return direct_sum(parts, parts.front().quiver);
}

// Blockwise direct sum of morphisms, defined over the given biproducts.
template <class K>
RepMorphism<K> direct_sum_morphism(const std::vector<RepMorphism<K>>& fs,
                                   const DirectSum<K>& dom,
                                   const DirectSum<K>& cod) {
  detail::require(fs.size() == dom.injections.size() &&
                      fs.size() == cod.injections.size(),
                  "direct_sum_morphism: arity mismatch");
  RepMorphism<K> out = zero_morphism(dom.sum, cod.sum);
  for (size_t i = 0; i < fs.size(); ++i) {
    RepMorphism<K> term =
        compose(cod.injections[i], compose(fs[i], dom.projections[i]));
    out = morphism_add(out, term);
  }
  return out;
}

// Tuple morphism (f_1; ...; f_n): X -> sum with common domain.
template <class K>
RepMorphism<K> tuple_into_sum(const std::vector<RepMorphism<K>>& fs,
                              const DirectSum<K>& cod) {
  detail::require(!fs.empty(), "tuple_into_sum: empty");
  RepMorphism<K> out = zero_morphism(fs.front().dom, cod.sum);
  for (size_t i = 0; i < fs.size(); ++i)
    out = morphism_add(out, compose(cod.injections[i], fs[i]));
  return out;
}

// Cotuple morphism (f_1, ..., f_n): sum -> Y with common codomain.
template <class K>
RepMorphism<K> cotuple_from_sum(const std::vector<RepMorphism<K>>& fs,
                                const DirectSum<K>& dom) {
  detail::require(!fs.empty(), "cotuple_from_sum: empty");
  RepMorphism<K> out = zero_morphism(dom.sum, fs.front().cod);
  for (size_t i = 0; i < fs.size(); ++i)
    out = morphism_add(out, compose(fs[i], dom.projections[i]));
  return out;
}

// ---------------------------------------------------------------------------
// Kernels, cokernels, images

// The unique X with inc * X = f, for vertexwise-injective inc.
template <class K>
RepMorphism<K> factor_through_injection(const RepMorphism<K>& inc,
                                        const RepMorphism<K>& f) {
  detail::require(rep_eq(inc.cod, f.cod),
                  "factor_through_injection: codomain mismatch");
  std::vector<Mat<K>> comps;
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v) {
    auto x = solve_matrix<K>(inc.comp(v), f.comp(v));
    if (!x) detail::internal_error("factor_through_injection: no factorization");
    comps.push_back(std::move(*x));
  }
  return RepMorphism<K>{f.dom, inc.dom, std::move(comps)};
}

// Some X with X * proj = f, for vertexwise-surjective proj; checked exact.
template <class K>
RepMorphism<K> factor_through_surjection(const RepMorphism<K>& proj,
                                         const RepMorphism<K>& f) {
  detail::require(rep_eq(proj.dom, f.dom),
                  "factor_through_surjection: domain mismatch");
  std::vector<Mat<K>> comps;
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v) {
    // X proj = f  <=>  proj^T X^T = f^T.
    auto xt = solve_matrix<K>(proj.comp(v).transpose().eval(),
                              f.comp(v).transpose().eval());
    if (!xt)
      detail::internal_error("factor_through_surjection: no factorization");
    comps.push_back(xt->transpose());
    if (!mat_eq<K>(comps.back() * proj.comp(v), f.comp(v)))
      detail::internal_error("factor_through_surjection: check failed");
  }
  return RepMorphism<K>{proj.cod, f.cod, std::move(comps)};
}

template <class K>
struct SubRep {
  Rep<K> rep;
  RepMorphism<K> inclusion;  // rep -> ambient, vertexwise injective
};

template <class K>
struct QuotRep {
  Rep<K> rep;
  RepMorphism<K> projection;  // ambient -> rep, vertexwise surjective
};

// Subrepresentation spanned by given vertexwise subspaces, which must be
// closed under the arrow action.
template <class K>
SubRep<K> subrep_from_subspaces(const Rep<K>& ambient,
                                const std::vector<Subspace<K>>& spaces) {
  const Quiver& q = *ambient.quiver;
  std::vector<Index> dims;
  std::vector<Mat<K>> incs;
  for (int v = 0; v < q.vertex_count(); ++v) {
    dims.push_back(spaces[v].dim());
    incs.push_back(spaces[v].basis.transpose());
  }
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    Mat<K> carried = ambient.map(a) * incs[ar.source];
    auto x = solve_matrix<K>(incs[ar.target], carried);
    if (!x) detail::internal_error("subrep: spaces not arrow-closed");
    maps.push_back(std::move(*x));
  }
  SubRep<K> out;
  out.rep = make_rep<K>(ambient.quiver, dims, std::move(maps));
  out.inclusion = RepMorphism<K>{out.rep, ambient, std::move(incs)};
  return out;
}

template <class K>
SubRep<K> kernel_rep(const RepMorphism<K>& f) {
  std::vector<Subspace<K>> spaces;
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v)
    spaces.push_back(kernel(f.comp(v)));
  return subrep_from_subspaces(f.dom, spaces);
}

template <class K>
SubRep<K> image_rep(const RepMorphism<K>& f) {
  std::vector<Subspace<K>> spaces;
  for (int v = 0; v < f.dom.quiver->vertex_count(); ++v)
    spaces.push_back(column_space(f.comp(v)));
  return subrep_from_subspaces(f.cod, spaces);
}

template <class K>
QuotRep<K> cokernel_rep(const RepMorphism<K>& f) {
  const Quiver& q = *f.dom.quiver;
  std::vector<Index> dims;
  std::vector<Mat<K>> projs;
  for (int v = 0; v < q.vertex_count(); ++v) {
    Subspace<K> im = column_space(f.comp(v));
    Mat<K> pr = quotient_projection_full<K>(im.basis, f.cod.dim(v));
    bind_to_field(pr, q.field());
    dims.push_back(pr.rows());
    projs.push_back(std::move(pr));
  }
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    // Induced map C_a with C_a proj_s = proj_t N_a; solve via transpose.
    Mat<K> rhs = projs[ar.target] * f.cod.map(a);
    auto xt = solve_matrix<K>(projs[ar.source].transpose().eval(),
                              rhs.transpose().eval());
    if (!xt) detail::internal_error("cokernel_rep: induced map failed");
    Mat<K> ca = xt->transpose();
    if (!mat_eq<K>(ca * projs[ar.source], rhs))
      detail::internal_error("cokernel_rep: induced map check failed");
    maps.push_back(std::move(ca));
  }
  QuotRep<K> out;
  out.rep = make_rep<K>(f.dom.quiver, dims, std::move(maps));
  out.projection = RepMorphism<K>{f.cod, out.rep, std::move(projs)};
  return out;
}

// ---------------------------------------------------------------------------
// Canonical modules

template <class K>
Rep<K> simple(QuiverPtr q, int v) {
  detail::require(v >= 0 && v < q->vertex_count(), "simple: unknown vertex");
  std::vector<Index> dims(q->vertex_count(), 0);
  dims[v] = 1;
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q->arrow_count(); ++a)
    maps.push_back(Mat<K>::Zero(dims[q->arrow(a).target],
                                dims[q->arrow(a).source]));
  return make_rep<K>(std::move(q), std::move(dims), std::move(maps));
}

// P(v): basis at w = paths v -> w; arrows act by path extension.
template <class K>
Rep<K> projective(QuiverPtr q, int v) {
  detail::require(v >= 0 && v < q->vertex_count(),
                  "projective: unknown vertex");
  const int nv = q->vertex_count();
  std::vector<Index> dims(nv);
  for (int w = 0; w < nv; ++w)
    dims[w] = static_cast<Index>(q->paths_between(v, w).size());
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const auto& ar = q->arrow(a);
    Mat<K> m = Mat<K>::Zero(dims[ar.target], dims[ar.source]);
    const auto& src_paths = q->paths_between(v, ar.source);
    for (size_t i = 0; i < src_paths.size(); ++i) {
      Path ext = src_paths[i];
      ext.arrows.push_back(a);
      ext.target = ar.target;
      m(q->path_position(ext), static_cast<Index>(i)) = K(1);
    }
    bind_to_field(m, q->field());
    maps.push_back(std::move(m));
  }
  return make_rep<K>(std::move(q), std::move(dims), std::move(maps));
}

// I(v): basis at w = paths w -> v; arrows act by the transpose of
// precomposition.
template <class K>
Rep<K> injective(QuiverPtr q, int v) {
  detail::require(v >= 0 && v < q->vertex_count(),
                  "injective: unknown vertex");
  const int nv = q->vertex_count();
  std::vector<Index> dims(nv);
  for (int w = 0; w < nv; ++w)
    dims[w] = static_cast<Index>(q->paths_between(w, v).size());
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q->arrow_count(); ++a) {
    const auto& ar = q->arrow(a);
    Mat<K> m = Mat<K>::Zero(dims[ar.target], dims[ar.source]);
    // Entry (r, s) = 1 iff the path s: source -> v equals (r: target -> v)
    // preceded by the arrow a.
    const auto& tgt_paths = q->paths_between(ar.target, v);
    for (size_t r = 0; r < tgt_paths.size(); ++r) {
      Path pre = tgt_paths[r];
      pre.arrows.insert(pre.arrows.begin(), a);
      pre.source = ar.source;
      m(static_cast<Index>(r), q->path_position(pre)) = K(1);
    }
    bind_to_field(m, q->field());
    maps.push_back(std::move(m));
  }
  return make_rep<K>(std::move(q), std::move(dims), std::move(maps));
}

// The morphism P(v) -> M sending the lazy path to x, extended by the path
// action: Hom(P(v), M) = M_v.
template <class K>
RepMorphism<K> hom_from_generator(const Rep<K>& pv, int v, const Rep<K>& m,
                                  const Vec<K>& x) {
  const Quiver& q = *m.quiver;
  detail::require(x.size() == m.dim(v), "hom_from_generator: bad vector");
  std::vector<Mat<K>> comps;
  for (int w = 0; w < q.vertex_count(); ++w) {
    const auto& paths = q.paths_between(v, w);
    Mat<K> c = Mat<K>::Zero(m.dim(w), pv.dim(w));
    for (size_t i = 0; i < paths.size(); ++i)
      c.col(static_cast<Index>(i)) = path_action(m, paths[i]) * x;
    comps.push_back(std::move(c));
  }
  return make_morphism(pv, m, std::move(comps));
}

// ---------------------------------------------------------------------------
// Radical, top, socle, covers, envelopes

template <class K>
SubRep<K> radical(const Rep<K>& m) {
  const Quiver& q = *m.quiver;
  std::vector<Subspace<K>> spaces(q.vertex_count());
  for (int v = 0; v < q.vertex_count(); ++v)
    spaces[v] = zero_subspace<K>(m.dim(v));
  for (int a = 0; a < q.arrow_count(); ++a) {
    const auto& ar = q.arrow(a);
    spaces[ar.target] = subspace_sum(spaces[ar.target],
                                     column_space(m.map(a)));
  }
  return subrep_from_subspaces(m, spaces);
}

template <class K>
QuotRep<K> top(const Rep<K>& m) {
  return cokernel_rep(radical(m).inclusion);
}

template <class K>
SubRep<K> socle(const Rep<K>& m) {
  const Quiver& q = *m.quiver;
  std::vector<Subspace<K>> spaces;
  for (int v = 0; v < q.vertex_count(); ++v) {
    Subspace<K> s = full_subspace<K>(m.dim(v), q.field());
    for (int a = 0; a < q.arrow_count(); ++a)
      if (q.arrow(a).source == v) s = subspace_intersect(s, kernel(m.map(a)));
    spaces.push_back(std::move(s));
  }
  return subrep_from_subspaces(m, spaces);
}

template <class K>
struct ProjectiveCover {
  Rep<K> cover;                    // direct sum of P(v)'s
  RepMorphism<K> deflation;        // cover ->> m
  std::vector<int> summand_vertices;
  DirectSum<K> structure;          // biproduct data of the cover
};

// Cover built from lifts of a basis of top(m); vertexwise surjective, with
// kernel inside the radical (the induced map on tops is an isomorphism).
template <class K>
ProjectiveCover<K> projective_cover(const Rep<K>& m) {
  const Quiver& q = *m.quiver;
  QuotRep<K> t = top(m);
  std::vector<Rep<K>> parts;
  std::vector<Vec<K>> lifts;
  std::vector<int> verts;
  for (int v = 0; v < q.vertex_count(); ++v) {
    for (Index i = 0; i < t.rep.dim(v); ++i) {
      Vec<K> e = Vec<K>::Zero(t.rep.dim(v));
      e(i) = K(1);
      bind_to_field(e, q.field());
      auto x = solve<K>(t.projection.comp(v), e);
      if (!x) detail::internal_error("projective_cover: lift failed");
      parts.push_back(projective<K>(m.quiver, v));
      lifts.push_back(std::move(*x));
      verts.push_back(v);
    }
  }
  ProjectiveCover<K> out;
  if (parts.empty()) {
    out.cover = zero_rep<K>(m.quiver);
    out.structure = DirectSum<K>{out.cover, {}, {}};
    out.deflation = zero_morphism(out.cover, m);
  } else {
    out.structure = direct_sum(parts);
    out.cover = out.structure.sum;
    std::vector<RepMorphism<K>> comps;
    for (size_t i = 0; i < parts.size(); ++i)
      comps.push_back(hom_from_generator(parts[i], verts[i], m, lifts[i]));
    out.deflation = cotuple_from_sum(comps, out.structure);
  }
  out.summand_vertices = std::move(verts);
  if (!vertexwise_surjective(out.deflation))
    detail::internal_error("projective_cover: not surjective");
  return out;
}

template <class K>
Rep<K> dual_rep(const Rep<K>& m) {
  QuiverPtr op = m.quiver->opposite();
  std::vector<Mat<K>> maps;
  for (int a = 0; a < op->arrow_count(); ++a)
    maps.push_back(m.map(a).transpose());
  return make_rep<K>(op, m.dims, std::move(maps));
}

// Injective envelope m -> E(m), computed as the dual of the projective cover
// of the dual representation.
template <class K>
RepMorphism<K> injective_envelope(const Rep<K>& m) {
  Rep<K> d = dual_rep(m);
  ProjectiveCover<K> c = projective_cover(d);
  Rep<K> env = dual_rep(c.cover);
  std::vector<Mat<K>> comps;
  for (int v = 0; v < m.quiver->vertex_count(); ++v)
    comps.push_back(c.deflation.comp(v).transpose());
  RepMorphism<K> e{m, env, std::move(comps)};
  if (!commutes(e.dom, e.cod, e.comps) || !vertexwise_injective(e))
    detail::internal_error("injective_envelope: construction failed");
  return e;
}

// ---------------------------------------------------------------------------
// Auslander-Reiten translate

// tau via the transpose: take the minimal projective presentation
// P1 -> P0 -> M, move it to the opposite quiver through the path-basis
// duality Hom(P(v), P(w)) = span of paths w -> v, take the cokernel there
// (the transpose), and dualize back. Projective summands die by minimality.
template <class K>
Rep<K> tau(const Rep<K>& m) {
  const Quiver& q = *m.quiver;
  QuiverPtr op = q.opposite();

  ProjectiveCover<K> c0 = projective_cover(m);
  SubRep<K> omega = kernel_rep(c0.deflation);
  ProjectiveCover<K> c1 = projective_cover(omega.rep);
  RepMorphism<K> g = compose(omega.inclusion, c1.deflation);  // P1 -> P0

  // Minimality: the presentation map must land in the radical.
  {
    SubRep<K> rad0 = radical(c0.cover);
    for (int v = 0; v < q.vertex_count(); ++v) {
      Subspace<K> im = column_space(g.comp(v));
      Subspace<K> rad_sp = column_space(rad0.inclusion.comp(v));
      if (!subspace_le(im, rad_sp))
        detail::internal_error("tau: presentation not minimal");
    }
  }

  const auto& verts0 = c0.summand_vertices;  // P0 = + P(v_i)
  const auto& verts1 = c1.summand_vertices;  // P1 = + P(u_j)

  if (verts0.empty()) return zero_rep<K>(m.quiver);

  std::vector<Rep<K>> op_parts0, op_parts1;
  for (int v : verts0) op_parts0.push_back(projective<K>(op, v));
  for (int u : verts1) op_parts1.push_back(projective<K>(op, u));
  DirectSum<K> s0 = direct_sum(op_parts0, op);
  RepMorphism<K> gop;
  if (verts1.empty()) {
    gop = zero_morphism(s0.sum, zero_rep<K>(op));
  } else {
    DirectSum<K> s1 = direct_sum(op_parts1, op);
    RepMorphism<K> total = zero_morphism(s0.sum, s1.sum);
    for (size_t j = 0; j < verts1.size(); ++j) {
      const int uj = verts1[j];
      // Component of g on summand j, read off at the generator of P(u_j):
      // an element of P0 at vertex u_j, i.e. coefficients over paths
      // v_i -> u_j for each i.
      RepMorphism<K> gj = compose(g, c1.structure.injections[j]);
      const auto& lazy_paths = q.paths_between(uj, uj);
      detail::require(!lazy_paths.empty(), "tau: missing lazy path");
      Index gen_col = 0;  // lazy path is discovered first
      (void)lazy_paths;
      Vec<K> img = gj.comp(uj).col(gen_col);
      Index off = 0;
      for (size_t i = 0; i < verts0.size(); ++i) {
        const int vi = verts0[i];
        const auto& paths_q = q.paths_between(vi, uj);
        // Coefficient vector of the (i, j) component over paths vi -> uj,
        // transported to the opposite quiver's path basis of P^op(uj) at vi.
        Vec<K> x = Vec<K>::Zero(op_parts1[j].dim(vi));
        for (size_t t = 0; t < paths_q.size(); ++t) {
          K coef = img(off + static_cast<Index>(t));
          if (field_traits<K>::is_zero(coef)) continue;
          Path rev;
          rev.source = uj;
          rev.target = vi;
          rev.arrows.assign(paths_q[t].arrows.rbegin(),
                            paths_q[t].arrows.rend());
          x(op->path_position(rev)) += coef;
        }
        RepMorphism<K> comp_ji =
            hom_from_generator(op_parts0[i], vi, op_parts1[j], x);
        total = morphism_add(
            total, compose(s1.injections[j],
                           compose(comp_ji, s0.projections[i])));
        off += static_cast<Index>(paths_q.size());
      }
    }
    gop = total;
  }

  Rep<K> tr = cokernel_rep(gop).rep;  // transpose, a rep of the opposite quiver
  // Vector-space dual back to a representation of q.
  std::vector<Mat<K>> maps;
  for (int a = 0; a < q.arrow_count(); ++a)
    maps.push_back(tr.map(a).transpose());
  return make_rep<K>(m.quiver, tr.dims, std::move(maps));
}

// ---------------------------------------------------------------------------
// Probe family

template <class K>
std::vector<std::pair<std::string, Rep<K>>> probe_generators(QuiverPtr q) {
  std::vector<std::pair<std::string, Rep<K>>> out;
  for (int v = 0; v < q->vertex_count(); ++v) {
    const std::string& n = q->vertex_names()[v];
    out.emplace_back("S(" + n + ")", simple<K>(q, v));
    out.emplace_back("P(" + n + ")", projective<K>(q, v));
    out.emplace_back("I(" + n + ")", injective<K>(q, v));
    out.emplace_back("radP(" + n + ")", radical(projective<K>(q, v)).rep);
    Rep<K> p = projective<K>(q, v);
    out.emplace_back("P/soc(" + n + ")",
                     cokernel_rep(socle(p).inclusion).rep);
  }
  return out;
}

// Fingerprint used for structural dedup: dimension vector plus hom ranks
// against all simples on both sides.
template <class K>
std::string probe_fingerprint(const Rep<K>& m) {
  std::ostringstream os;
  for (Index d : m.dims) os << d << ',';
  os << '|';
  for (int v = 0; v < m.quiver->vertex_count(); ++v) {
    Rep<K> s = simple<K>(m.quiver, v);
    os << hom_space(m, s).dim() << ',' << hom_space(s, m).dim() << ';';
  }
  return os.str();
}

template <class K>
std::vector<std::pair<std::string, Rep<K>>> probe_objects(QuiverPtr q,
                                                          int sum_cap) {
  auto gens = probe_generators<K>(q);
  std::vector<std::pair<std::string, Rep<K>>> out;
  std::vector<std::string> seen;
  for (auto& [name, rep] : gens) {
    if (rep.total_dim() == 0) continue;
    std::string fp = probe_fingerprint(rep);
    if (std::find(seen.begin(), seen.end(), fp) != seen.end()) continue;
    seen.push_back(fp);
    out.emplace_back(name, rep);
  }
  const size_t base = out.size();
  int added = 0;
  for (size_t i = 0; i < base && added < sum_cap; ++i)
    for (size_t j = i + 1; j < base && added < sum_cap; ++j) {
      Rep<K> s = direct_sum<K>({out[i].second, out[j].second}).sum;
      std::string fp = probe_fingerprint(s);
      if (std::find(seen.begin(), seen.end(), fp) != seen.end()) continue;
      seen.push_back(fp);
      out.emplace_back(out[i].first + "+" + out[j].first, s);
      ++added;
    }
  return out;
}

}  // namespace approxcat
