#pragma once

// Seeded property suites over the standard quivers: the runtime counterpart
// of the unit-test invariants, reported with check counts per module.

#include <random>

#include "approxcat/workspace.hpp"

namespace approxcat {
namespace selftest {

struct SuiteResult {
  std::string name;
  int checks = 0;
  int failures = 0;
  std::vector<std::string> witnesses{};

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      ++failures;
      if (witnesses.size() < 8) witnesses.push_back(what);
    }
  }
};

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(std::uint64_t seed) : eng(seed) {}
  std::uint64_t next(std::uint64_t bound) { return eng() % bound; }
};

template <class K>
K random_scalar(Rng& rng, const FieldSpec& f) {
  if constexpr (field_traits<K>::prime_field)
    return K(static_cast<long long>(rng.next(f.p)), f.p);
  else
    return Rat(static_cast<long long>(rng.next(9)) - 4,
               1 + static_cast<long long>(rng.next(4)));
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
  for (int a = 0; a < q->arrow_count(); ++a)
    maps.push_back(random_matrix<K>(rng, dims[q->arrow(a).target],
                                    dims[q->arrow(a).source], q->field()));
  return make_rep<K>(q, dims, maps);
}

template <class K>
RepMorphism<K> random_hom(Rng& rng, const HomSpace<K>& hs) {
  Vec<K> c(hs.dim());
  for (Index i = 0; i < hs.dim(); ++i)
    c(i) = random_scalar<K>(rng, hs.dom.quiver->field());
  return hs.from_coords(c);
}

inline QuiverPtr standard_a2(FieldSpec f) {
  return Quiver::make({"1", "2"}, {{"a", 0, 1}}, f);
}
inline QuiverPtr standard_happel_unger(FieldSpec f) {
  return Quiver::make({"1", "2", "3"}, {{"a", 1, 0}, {"b", 2, 1}, {"c", 2, 0}},
                      f);
}

template <class K>
SuiteResult exactlin_suite(Rng& rng, const FieldSpec& f) {
  SuiteResult out{"exactlin"};
  for (int trial = 0; trial < 25; ++trial) {
    Index r = static_cast<Index>(rng.next(5));
    Index c = static_cast<Index>(rng.next(5));
    Mat<K> m = random_matrix<K>(rng, r, c, f);
    auto r1 = rref(m);
    out.expect(mat_eq(rref(r1.r).r, r1.r), "rref not idempotent");
    out.expect(rank(m) == rank<K>(m.transpose().eval()),
               "row/column rank differ");
    out.expect(kernel(m).dim() + r1.rank == c, "rank-nullity fails");
    if (r > 0) {
      Vec<K> b = random_matrix<K>(rng, r, 1, f);
      auto x = solve<K>(m, b);
      if (x) {
        Vec<K> res = m * *x - b;
        out.expect(is_zero_mat<K>(Mat<K>(res)), "solve residual nonzero");
      } else {
        out.expect(rank(hstack<K>(m, Mat<K>(b))) > r1.rank,
                   "solve refused a consistent system");
      }
    }
    Mat<K> ub = random_matrix<K>(rng, 2, 4, f);
    Mat<K> vb = random_matrix<K>(rng, 2, 4, f);
    Subspace<K> u = row_space(ub), v = row_space(vb);
    out.expect(subspace_sum(u, v).dim() + subspace_intersect(u, v).dim() ==
                   u.dim() + v.dim(),
               "modularity witness fails");
  }
  return out;
}

template <class K>
SuiteResult quivrep_suite(Rng& rng, QuiverPtr q) {
  SuiteResult out{"quivrep"};
  for (int trial = 0; trial < 6; ++trial) {
    Rep<K> m = random_rep<K>(rng, q, 2);
    Rep<K> n = random_rep<K>(rng, q, 2);
    auto hs = hom_space(m, n);
    for (const auto& fmor : hs.basis)
      out.expect(commutes(fmor.dom, fmor.cod, fmor.comps),
                 "hom basis element does not commute");
    auto cover = projective_cover(m);
    out.expect(vertexwise_surjective(cover.deflation),
               "cover not a deflation");
    out.expect(top(cover.cover).rep.dims == top(m).rep.dims,
               "cover top mismatch");
    Rep<K> t1 = tau(m);
    Rep<K> p = projective<K>(q, static_cast<int>(
                                    rng.next(q->vertex_count())));
    Rep<K> t2 = tau(direct_sum<K>({m, p}).sum);
    out.expect(t1.dims == t2.dims, "tau not additive modulo projectives");
  }
  for (int v = 0; v < q->vertex_count(); ++v)
    out.expect(tau(projective<K>(q, v)).total_dim() == 0,
               "tau of a projective nonzero");
  return out;
}

template <class K>
SuiteResult homext_suite(Rng& rng, QuiverPtr q, ExtCache<K>& cache) {
  SuiteResult out{"homext"};
  const FieldSpec& f = q->field();
  for (int trial = 0; trial < 5; ++trial) {
    Rep<K> a = random_rep<K>(rng, q, 2);
    Rep<K> b = random_rep<K>(rng, q, 1);
    const ExtSpace<K>& es = cache.get(a, b);
    Vec<K> x(es.dim());
    for (Index i = 0; i < es.dim(); ++i) x(i) = random_scalar<K>(rng, f);
    if (es.dim() > 0) {
      Conflation<K> c = es.realize(x);
      out.expect(vec_eq<K>(es.classify(c), x), "classify(realize) != id");
      Vec<K> y(es.dim());
      for (Index i = 0; i < es.dim(); ++i) y(i) = random_scalar<K>(rng, f);
      Vec<K> sum = x + y;
      out.expect(vec_eq<K>(es.classify(es.realize(sum)), Vec<K>(sum)),
                 "Baer linearity fails");
    }
    Rep<K> b2 = random_rep<K>(rng, q, 1);
    auto hb = hom_space(b, b2);
    if (es.dim() > 0 && hb.dim() > 0) {
      RepMorphism<K> bb = random_hom<K>(rng, hb);
      const ExtSpace<K>& dst = cache.get(a, b2);
      auto pushed = pushout_inflation(es.realize(x), bb);
      out.expect(vec_eq<K>(dst.classify(pushed.row),
                           push_class(es, x, bb, dst)),
                 "pushout/class mismatch");
    }
  }
  // Cokernel of a two-inflation pushout has the summed quotient dims.
  for (int trial = 0; trial < 3; ++trial) {
    Rep<K> b = random_rep<K>(rng, q, 1);
    Rep<K> a1 = random_rep<K>(rng, q, 1);
    Rep<K> a2r = random_rep<K>(rng, q, 1);
    const ExtSpace<K>& e1 = cache.get(a1, b);
    const ExtSpace<K>& e2 = cache.get(a2r, b);
    Vec<K> x1 = Vec<K>::Zero(e1.dim()), x2 = Vec<K>::Zero(e2.dim());
    auto po = pushout_two_inflations(e1.realize(x1).inflation,
                                     e2.realize(x2).inflation);
    Rep<K> cok = cokernel_rep(po.inflation).rep;
    bool ok = true;
    for (int v = 0; v < q->vertex_count(); ++v)
      ok = ok && cok.dim(v) == a1.dim(v) + a2r.dim(v);
    out.expect(ok, "pushout cokernel dims fail");
  }
  return out;
}

template <class K>
SuiteResult arrowcat_suite(Rng& rng, QuiverPtr q, ExtCache<K>& cache) {
  SuiteResult out{"arrowcat"};
  const FieldSpec& f = q->field();
  for (int trial = 0; trial < 5; ++trial) {
    Rep<K> a0 = random_rep<K>(rng, q, 1);
    Rep<K> a1 = random_rep<K>(rng, q, 1);
    Rep<K> b0 = random_rep<K>(rng, q, 1);
    Rep<K> b1 = random_rep<K>(rng, q, 1);
    auto ha = hom_space(a0, a1);
    auto hb = hom_space(b0, b1);
    if (ha.dim() == 0 || hb.dim() == 0) continue;
    ArrowObject<K> a{random_hom<K>(rng, ha)};
    ArrowObject<K> b{random_hom<K>(rng, hb)};
    ArrExtSpace<K> space(a, b, cache);
    Mat<K> composite = space.epsilon_matrix() * space.leibniz_matrix();
    bind_to_field(composite, f);
    out.expect(mat_eq(composite, ext_matrix(a.f, b.f, cache)),
               "Leibniz identity fails");
    // ME ladders classify back to the Leibniz image.
    if (space.e10().dim() > 0) {
      Vec<K> zeta(space.e10().dim());
      for (Index i = 0; i < zeta.size(); ++i)
        zeta(i) = random_scalar<K>(rng, f);
      MeExtension<K> me = me_extension(b, a, zeta, cache);
      Vec<K> img = space.leibniz_matrix() * zeta;
      bind_to_field(img, f);
      Vec<K> pair = space.pair_of_coords(img);
      out.expect(vec_eq<K>(space.e00().classify(me.ladder.row0()),
                           Vec<K>(space.x0(pair))),
                 "ME top row classifies wrong");
      out.expect(vec_eq<K>(space.e11().classify(me.ladder.row1()),
                           Vec<K>(space.x1(pair))),
                 "ME bottom row classifies wrong");
    }
  }
  // The embedding A -> 1_A preserves Ext dimensions.
  for (int trial = 0; trial < 3; ++trial) {
    Rep<K> a = random_rep<K>(rng, q, 1);
    Rep<K> b = random_rep<K>(rng, q, 1);
    ArrExtSpace<K> space(identity_arrow(a), identity_arrow(b), cache);
    out.expect(space.dim() == cache.get(a, b).dim(),
               "arrow ext of identities mismatches Ext");
  }
  return out;
}

template <class K>
SuiteResult ideals_suite(Rng& rng, QuiverPtr q, ExtCache<K>& cache) {
  SuiteResult out{"ideals"};
  Rep<K> s = simple<K>(q, q->vertex_count() - 1);
  auto spec = IdealSpec<K>::right_orthogonal({identity_arrow(s)});
  for (int trial = 0; trial < 3; ++trial) {
    Rep<K> a = random_rep<K>(rng, q, 1);
    Rep<K> b = random_rep<K>(rng, q, 1);
    IdealFiber<K> fib = fiber(spec, a, b, cache);
    // Membership is the vanishing of the ext matrix against the generator.
    for (Index i = 0; i < fib.dim(); ++i) {
      RepMorphism<K> j = fib.basis_morphism(i);
      out.expect(is_zero_mat(ext_matrix(identity_morphism(s), j, cache)),
                 "orthogonal fiber member pairs nontrivially");
    }
    // Closure under sampled composition.
    Rep<K> a2r = random_rep<K>(rng, q, 1);
    Rep<K> b2 = random_rep<K>(rng, q, 1);
    auto hf = hom_space(a2r, a);
    auto hh = hom_space(b, b2);
    if (fib.dim() > 0 && hf.dim() > 0 && hh.dim() > 0) {
      RepMorphism<K> pre = random_hom<K>(rng, hf);
      RepMorphism<K> post = random_hom<K>(rng, hh);
      IdealFiber<K> outer = fiber(spec, a2r, b2, cache);
      RepMorphism<K> j = fib.basis_morphism(
          static_cast<Index>(rng.next(fib.dim())));
      out.expect(outer.contains(compose(post, compose(j, pre))),
                 "fiber not closed under composition");
    }
    // Sum and intersection are fiberwise.
    auto gspec = IdealSpec<K>::proj();
    auto ssum = IdealSpec<K>::sum(spec, gspec);
    auto sint = IdealSpec<K>::intersection(spec, gspec);
    IdealFiber<K> fsum = fiber(ssum, a, b, cache);
    IdealFiber<K> fint = fiber(sint, a, b, cache);
    IdealFiber<K> fg = fiber(gspec, a, b, cache);
    out.expect(subspace_eq(fsum.sub, subspace_sum(fib.sub, fg.sub)),
               "sum fiber mismatch");
    out.expect(subspace_eq(fint.sub, subspace_intersect(fib.sub, fg.sub)),
               "intersection fiber mismatch");
  }
  return out;
}

template <class K>
SuiteResult approx_suite(Rng& rng, QuiverPtr q, ExtCache<K>& cache,
                         std::uint64_t cap) {
  SuiteResult out{"approx"};
  auto probes = probe_objects<K>(q, 3);
  for (int trial = 0; trial < 2; ++trial) {
    Rep<K> a0 = random_rep<K>(rng, q, 1);
    Rep<K> a1 = random_rep<K>(rng, q, 1);
    Rep<K> b = random_rep<K>(rng, q, 1);
    auto ha = hom_space(a0, a1);
    if (ha.dim() == 0) continue;
    ArrowObject<K> a{random_hom<K>(rng, ha)};
    BetMode mode = BetMode::basis;
    if constexpr (field_traits<K>::prime_field) mode = BetMode::enumerate;
    SpecialPreenvelope<K> sp;
    try {
      sp = bet_preenvelope(a, b, mode, cache, cap);
    } catch (const CapExceeded&) {
      sp = bet_preenvelope(a, b, BetMode::basis, cache, cap);
    }
    out.expect(is_zero_mat(ext_matrix(a.f, sp.j, cache)),
               "BET postcondition fails");
    auto report = verify_special_preenvelope(sp, probes, cache);
    out.expect(report.all_passed(), "BET battery fails");
    auto meet = intersect_preenvelopes(sp, sp, cache);
    out.expect(morphism_eq(meet.j,
                           compose(meet.factor_certificates[0].f0, sp.j)),
               "intersection certificate fails");
  }
  return out;
}

struct SelftestReport {
  std::vector<SuiteResult> suites;
  int total_checks = 0;
  int total_failures = 0;
};

template <class K>
SelftestReport run_selftest_typed(std::uint64_t seed, const FieldSpec& f) {
  Rng rng(seed);
  SelftestReport report;
  QuiverPtr a2q = standard_a2(f);
  QuiverPtr huq = standard_happel_unger(f);
  ExtCache<K> cache_a2, cache_hu;

  report.suites.push_back(exactlin_suite<K>(rng, f));
  report.suites.push_back(quivrep_suite<K>(rng, a2q));
  report.suites.push_back(quivrep_suite<K>(rng, huq));
  report.suites.back().name = "quivrep(happel-unger)";
  report.suites[1].name = "quivrep(a2)";
  report.suites.push_back(homext_suite<K>(rng, a2q, cache_a2));
  report.suites.back().name = "homext(a2)";
  report.suites.push_back(homext_suite<K>(rng, huq, cache_hu));
  report.suites.back().name = "homext(happel-unger)";
  report.suites.push_back(arrowcat_suite<K>(rng, huq, cache_hu));
  report.suites.push_back(ideals_suite<K>(rng, a2q, cache_a2));
  report.suites.push_back(approx_suite<K>(rng, a2q, cache_a2, 64));

  for (const auto& s : report.suites) {
    report.total_checks += s.checks;
    report.total_failures += s.failures;
  }
  return report;
}

inline SelftestReport run_selftest(std::uint64_t seed, const FieldSpec& f) {
  if (f.is_prime_field()) return run_selftest_typed<Fp>(seed, f);
  return run_selftest_typed<Rat>(seed, f);
}

}  // namespace selftest
}  // namespace approxcat
