#include "approxcat/commands.hpp"

#include <chrono>

#include "approxcat/selftest.hpp"

namespace approxcat {

namespace {

// ---------------------------------------------------------------------------
// Entity expressions: NAME | S(v) | P(v) | I(v) | tau(expr) | expr + expr.
// Arrow expressions: NAME | id(expr).

template <class K>
Rep<K> resolve_rep(const Workspace<K>& ws, const std::string& expr);

template <class K>
Rep<K> resolve_term(const Workspace<K>& ws, const std::string& term) {
  auto ctor = [&](const std::string& head) -> std::string {
    if (term.size() > head.size() + 1 && term.rfind(head + "(", 0) == 0 &&
        term.back() == ')')
      return term.substr(head.size() + 1,
                         term.size() - head.size() - 2);
    return "";
  };
  if (ws.reps.count(term)) return ws.reps.at(term);
  if (std::string v = ctor("S"); !v.empty())
    return simple<K>(ws.quiver, ws.quiver->vertex_index(v));
  if (std::string v = ctor("P"); !v.empty())
    return projective<K>(ws.quiver, ws.quiver->vertex_index(v));
  if (std::string v = ctor("I"); !v.empty())
    return injective<K>(ws.quiver, ws.quiver->vertex_index(v));
  if (std::string e = ctor("tau"); !e.empty())
    return tau(resolve_rep(ws, e));
  throw WorkspaceError("cannot resolve representation '" + term + "'");
}

template <class K>
Rep<K> resolve_rep(const Workspace<K>& ws, const std::string& expr) {
  // Split on '+' at depth zero.
  std::vector<std::string> terms;
  int depth = 0;
  std::string cur;
  for (char ch : expr) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  terms.push_back(cur);
  std::vector<Rep<K>> parts;
  for (const auto& t : terms) {
    if (t.empty()) throw WorkspaceError("empty term in '" + expr + "'");
    parts.push_back(resolve_term(ws, t));
  }
  if (parts.size() == 1) return parts[0];
  return direct_sum<K>(parts, ws.quiver).sum;
}

template <class K>
ArrowObject<K> resolve_arrow(const Workspace<K>& ws, const std::string& expr) {
  if (ws.arrows.count(expr)) return ws.arrows.at(expr);
  if (expr.size() > 3 && expr.rfind("id(", 0) == 0 && expr.back() == ')')
    return identity_arrow(resolve_rep(ws, expr.substr(3, expr.size() - 4)));
  if (ws.morphisms.count(expr)) return ArrowObject<K>{ws.morphisms.at(expr)};
  throw WorkspaceError("cannot resolve arrow '" + expr + "'");
}

template <class K>
RepMorphism<K> resolve_morphism(const Workspace<K>& ws,
                                const std::string& name) {
  if (ws.morphisms.count(name)) return ws.morphisms.at(name);
  throw WorkspaceError("cannot resolve morphism '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON helpers

template <class K>
ordered_json dims_json(const Rep<K>& r) {
  ordered_json out = ordered_json::array();
  for (Index d : r.dims) out.push_back(d);
  return out;
}

template <class K>
ordered_json morphism_json(const Workspace<K>& ws, const RepMorphism<K>& f) {
  ordered_json out;
  out["dom_dims"] = dims_json(f.dom);
  out["cod_dims"] = dims_json(f.cod);
  ordered_json comps = ordered_json::object();
  for (int v = 0; v < ws.quiver->vertex_count(); ++v)
    comps[ws.quiver->vertex_names()[v]] =
        wsdetail::matrix_to_json<K>(f.comp(v), ws.field);
  out["comps"] = std::move(comps);
  return out;
}

inline ordered_json verification_json(const VerificationReport& report) {
  ordered_json out;
  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["status"] = c.status;
    cj["exhaustive"] = c.exhaustive;
    if (!c.witness.empty()) cj["witness"] = c.witness;
    checks.push_back(std::move(cj));
  }
  out["checks"] = std::move(checks);
  out["probe_inventory"] = report.probe_inventory;
  out["all_passed"] = report.all_passed();
  return out;
}

template <class K>
std::vector<std::pair<std::string, Rep<K>>> resolve_probes(
    const Workspace<K>& ws, const std::string& spec) {
  if (spec == "default")
    return probe_objects<K>(ws.quiver, ws.caps.probe_sum_cap);
  if (spec == "all") return probe_objects<K>(ws.quiver, 64);
  std::vector<std::pair<std::string, Rep<K>>> out;
  std::string cur;
  auto flush = [&]() {
    if (!cur.empty()) {
      out.emplace_back(cur, resolve_rep(ws, cur));
      cur.clear();
    }
  };
  for (char ch : spec) {
    if (ch == ',')
      flush();
    else
      cur.push_back(ch);
  }
  flush();
  if (out.empty()) throw WorkspaceError("empty probe list");
  return out;
}

BetMode parse_mode(const std::string& mode) {
  if (mode == "enumerate") return BetMode::enumerate;
  if (mode == "basis") return BetMode::basis;
  throw WorkspaceError("unknown mode '" + mode + "' (enumerate|basis)");
}

template <class K>
ordered_json preenvelope_json(const Workspace<K>& ws,
                              const SpecialPreenvelope<K>& sp) {
  ordered_json out;
  out["object_dims"] = dims_json(sp.b);
  out["preenvelope"] = morphism_json(ws, sp.j);
  out["middle_dims"] = dims_json(sp.j.cod);
  out["cosyzygy_dom_dims"] = dims_json(sp.cosyzygy.dom());
  out["cosyzygy_cod_dims"] = dims_json(sp.cosyzygy.cod());
  out["cosyzygy_summands"] = sp.cosyzygy_summands.size();
  out["ideal"] = sp.ideal.describe();
  out["provenance"] = sp.provenance;
  return out;
}

template <class K>
ordered_json precover_json(const Workspace<K>& ws,
                           const SpecialPrecover<K>& sp) {
  ordered_json out;
  out["object_dims"] = dims_json(sp.a);
  out["precover"] = morphism_json(ws, sp.e);
  out["middle_dims"] = dims_json(sp.e.dom);
  out["syzygy_dom_dims"] = dims_json(sp.syzygy.dom());
  out["syzygy_cod_dims"] = dims_json(sp.syzygy.cod());
  out["syzygy_summands"] = sp.syzygy_summands.size();
  out["ideal"] = sp.ideal.describe();
  out["provenance"] = sp.provenance;
  return out;
}

// ---------------------------------------------------------------------------
// Subcommands

template <class K>
ordered_json cmd_hom(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 2, "hom needs two representations");
  Rep<K> m = resolve_rep(ws, opt.args[0]);
  Rep<K> n = resolve_rep(ws, opt.args[1]);
  HomSpace<K> hs = hom_space(m, n);
  ordered_json out;
  out["dom_dims"] = dims_json(m);
  out["cod_dims"] = dims_json(n);
  out["dim"] = hs.dim();
  ordered_json basis = ordered_json::array();
  for (const auto& f : hs.basis) basis.push_back(morphism_json(ws, f));
  out["basis"] = std::move(basis);
  return out;
}

template <class K>
ordered_json cmd_ext(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 2, "ext needs two representations");
  Rep<K> a = resolve_rep(ws, opt.args[0]);
  Rep<K> b = resolve_rep(ws, opt.args[1]);
  ExtSpace<K> es(a, b);
  ordered_json out;
  out["a_dims"] = dims_json(a);
  out["b_dims"] = dims_json(b);
  out["dim"] = es.dim();
  out["cover_dims"] = dims_json(es.cover().cover);
  out["syzygy_dims"] = dims_json(es.omega().rep);
  ordered_json reps = ordered_json::array();
  for (Index i = 0; i < es.dim(); ++i) {
    Vec<K> e = es.zero_class();
    e(i) = K(1);
    bind_to_field(e, ws.field);
    ordered_json cls;
    cls["representative"] = morphism_json(ws, es.representative(e));
    Conflation<K> c = es.realize(e);
    cls["middle_dims"] = dims_json(c.middle());
    reps.push_back(std::move(cls));
  }
  out["basis"] = std::move(reps);
  return out;
}

template <class K>
ordered_json cmd_tau(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 1, "tau needs one representation");
  Rep<K> m = resolve_rep(ws, opt.args[0]);
  Rep<K> t = tau(m);
  ordered_json out;
  out["input_dims"] = dims_json(m);
  out["tau_dims"] = dims_json(t);
  ordered_json maps = ordered_json::object();
  for (int a = 0; a < ws.quiver->arrow_count(); ++a)
    maps[ws.quiver->arrow(a).name] =
        wsdetail::matrix_to_json<K>(t.map(a), ws.field);
  out["maps"] = std::move(maps);
  return out;
}

template <class K>
ordered_json cmd_bet(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 2, "bet needs an arrow and an object");
  ArrowObject<K> a = resolve_arrow(ws, opt.args[0]);
  Rep<K> b = resolve_rep(ws, opt.args[1]);
  ExtCache<K> cache;
  auto sp = bet_preenvelope(a, b, parse_mode(opt.mode), cache,
                            ws.caps.bet_enumeration_cap);
  auto probes = resolve_probes(ws, opt.probes);
  ordered_json out;
  out["construction"] = preenvelope_json(ws, sp);
  out["verification"] = verification_json(
      verify_special_preenvelope(sp, probes, cache));
  return out;
}

template <class K>
ordered_json cmd_precover(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 2,
                  "precover needs an arrow and an object");
  ArrowObject<K> b = resolve_arrow(ws, opt.args[0]);
  Rep<K> a = resolve_rep(ws, opt.args[1]);
  ExtCache<K> cache;
  auto sp = bet_precover(b, a, parse_mode(opt.mode), cache,
                         ws.caps.bet_enumeration_cap);
  auto probes = resolve_probes(ws, opt.probes);
  ordered_json out;
  out["construction"] = precover_json(ws, sp);
  out["verification"] = verification_json(
      verify_special_precover(sp, probes, cache));
  return out;
}

template <class K>
ordered_json cmd_intersect(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 3,
                  "intersect needs two arrows and an object");
  ArrowObject<K> a1 = resolve_arrow(ws, opt.args[0]);
  ArrowObject<K> a2 = resolve_arrow(ws, opt.args[1]);
  Rep<K> b = resolve_rep(ws, opt.args[2]);
  ExtCache<K> cache;
  BetMode mode = parse_mode(opt.mode);
  auto sp1 = bet_preenvelope(a1, b, mode, cache, ws.caps.bet_enumeration_cap);
  auto sp2 = bet_preenvelope(a2, b, mode, cache, ws.caps.bet_enumeration_cap);
  auto meet = intersect_preenvelopes(sp1, sp2, cache);
  auto probes = resolve_probes(ws, opt.probes);
  ordered_json out;
  out["first"] = preenvelope_json(ws, sp1);
  out["second"] = preenvelope_json(ws, sp2);
  out["intersection"] = preenvelope_json(ws, meet);
  out["verification"] = verification_json(
      verify_special_preenvelope(meet, probes, cache));
  return out;
}

template <class K>
ordered_json cmd_sum_preenv(const Workspace<K>& ws,
                            const CommandOptions& opt) {
  detail::require(opt.args.size() == 2, "sum-preenv needs two morphisms");
  RepMorphism<K> j1 = resolve_morphism(ws, opt.args[0]);
  RepMorphism<K> j2 = resolve_morphism(ws, opt.args[1]);
  auto sum = sum_preenvelope(j1, j2);
  ordered_json out;
  out["sum"] = morphism_json(ws, sum.j);
  out["is_inflation"] = sum.is_inflation;
  out["factors_first"] = morphism_eq(compose(sum.onto1, sum.j), j1);
  out["factors_second"] = morphism_eq(compose(sum.onto2, sum.j), j2);
  return out;
}

// Construct the BET preenvelope in both modes (enumerate falling back to
// basis past the cap), run the battery on each, and certify that the
// verification outcomes agree check-by-check.
template <class K>
ordered_json cmd_verify(const Workspace<K>& ws, const CommandOptions& opt) {
  detail::require(opt.args.size() == 2, "verify needs an arrow and an object");
  ArrowObject<K> a = resolve_arrow(ws, opt.args[0]);
  Rep<K> b = resolve_rep(ws, opt.args[1]);
  ExtCache<K> cache;
  auto probes = resolve_probes(ws, opt.probes);

  ordered_json out;
  std::vector<std::pair<std::string, BetMode>> modes{
      {"basis", BetMode::basis}};
  if (ws.field.is_prime_field())
    modes.insert(modes.begin(), {"enumerate", BetMode::enumerate});

  std::vector<VerificationReport> reports;
  for (const auto& [name, mode] : modes) {
    ordered_json entry;
    try {
      auto sp = bet_preenvelope(a, b, mode, cache,
                                ws.caps.bet_enumeration_cap);
      entry["construction"] = preenvelope_json(ws, sp);
      reports.push_back(verify_special_preenvelope(sp, probes, cache));
      entry["verification"] = verification_json(reports.back());
    } catch (const CapExceeded& e) {
      entry["refused"] = e.what();
    }
    out[name] = std::move(entry);
  }
  bool agree = true;
  for (size_t i = 1; i < reports.size(); ++i)
    agree = agree && reports_agree(reports[0], reports[i]);
  out["modes_agree"] = agree;
  bool all = agree && !reports.empty();
  for (const auto& r : reports) all = all && r.all_passed();
  out["all_passed"] = all;
  return out;
}

ordered_json selftest_json(const selftest::SelftestReport& report) {
  ordered_json out;
  ordered_json suites = ordered_json::array();
  for (const auto& s : report.suites) {
    ordered_json sj;
    sj["name"] = s.name;
    sj["checks"] = s.checks;
    sj["failures"] = s.failures;
    if (!s.witnesses.empty()) sj["witnesses"] = s.witnesses;
    suites.push_back(std::move(sj));
  }
  out["suites"] = std::move(suites);
  out["total_checks"] = report.total_checks;
  out["total_failures"] = report.total_failures;
  out["all_passed"] = report.total_failures == 0;
  return out;
}

ordered_json cmd_selftest(const CommandOptions& opt) {
  ordered_json out;
  out["seed"] = opt.seed;
  ordered_json fields = ordered_json::array();
  struct Pass {
    FieldSpec field;
    std::uint64_t seed;
  };
  std::vector<Pass> passes{{FieldSpec::prime(2), opt.seed},
                           {FieldSpec::prime(3), opt.seed + 1},
                           {FieldSpec::rational(), opt.seed + 2}};
  bool all = true;
  for (const auto& pass : passes) {
    auto report = selftest::run_selftest(pass.seed, pass.field);
    ordered_json fj;
    fj["field"] = pass.field.name();
    fj["seed"] = pass.seed;
    fj["report"] = selftest_json(report);
    all = all && report.total_failures == 0;
    fields.push_back(std::move(fj));
  }
  out["fields"] = std::move(fields);
  out["all_passed"] = all;
  return out;
}

// The Happel-Unger demo: builds the three-vertex quiver with arrows
// a: 2 -> 1, b: 3 -> 2, c: 3 -> 1 over F2, forms T1 = P(1) + P(3) + tau S(2)
// and T2 = tau T1, runs the BET construction for both identity arrows on a
// chosen object, intersects the ladders, and verifies everything exactly on
// the declared probe family.
ordered_json cmd_demo_happel_unger(const CommandOptions& opt) {
  ordered_json doc = builtin_workspace_json("happel-unger");
  Workspace<Fp> ws = build_workspace<Fp>(doc);
  QuiverPtr q = ws.quiver;

  ordered_json out;
  out["banner"] =
      "happel-unger demo over F2 (an exact computable stand-in for the "
      "algebraically closed base field; all constructed diagrams are "
      "verified exactly)";

  Rep<Fp> p1 = projective<Fp>(q, 0);
  Rep<Fp> p3 = projective<Fp>(q, 2);
  Rep<Fp> s2 = simple<Fp>(q, 1);
  Rep<Fp> tau_s2 = tau(s2);
  Rep<Fp> t1 = direct_sum<Fp>({p1, p3, tau_s2}).sum;
  Rep<Fp> t2 = tau(t1);

  out["P(1)_dims"] = dims_json(p1);
  out["P(3)_dims"] = dims_json(p3);
  out["S(2)_dims"] = dims_json(s2);
  out["tauS(2)_dims"] = dims_json(tau_s2);
  out["T1_dims"] = dims_json(t1);
  out["T2_dims"] = dims_json(t2);

  ordered_json tau_checks = ordered_json::array();
  bool tau_ok = true;
  for (int v = 0; v < q->vertex_count(); ++v) {
    bool zero = tau(projective<Fp>(q, v)).total_dim() == 0;
    tau_ok = tau_ok && zero;
    tau_checks.push_back({{"vertex", q->vertex_names()[v]},
                          {"tau_of_projective_is_zero", zero}});
  }
  out["tau_projective_checks"] = std::move(tau_checks);

  Rep<Fp> b = opt.args.empty() ? s2
                               : resolve_rep(ws, opt.args[0]);
  out["approximated_object"] = opt.args.empty() ? "S(2)" : opt.args[0];
  out["approximated_object_dims"] = dims_json(b);

  ExtCache<Fp> cache;
  BetMode mode = parse_mode(opt.mode);
  auto sp1 = bet_preenvelope(identity_arrow(t1), b, mode, cache,
                             ws.caps.bet_enumeration_cap);
  auto sp2 = bet_preenvelope(identity_arrow(t2), b, mode, cache,
                             ws.caps.bet_enumeration_cap);
  auto meet = intersect_preenvelopes(sp1, sp2, cache);
  auto probes = resolve_probes(ws, opt.probes);

  out["bet_T1"] = preenvelope_json(ws, sp1);
  out["bet_T2"] = preenvelope_json(ws, sp2);
  out["intersection"] = preenvelope_json(ws, meet);
  out["verification_T1"] =
      verification_json(verify_special_preenvelope(sp1, probes, cache));
  out["verification_T2"] =
      verification_json(verify_special_preenvelope(sp2, probes, cache));
  out["verification_intersection"] =
      verification_json(verify_special_preenvelope(meet, probes, cache));

  out["scope_note"] =
      "the subcategory-level statement about T1-perp intersect T2-perp "
      "quantifies over the whole infinite module category and is not "
      "evaluated here; the construction above certifies the ideal-level "
      "intersection preenvelope exactly on the declared finite probe "
      "family (exhaustive=false)";
  return out;
}

template <class K>
ordered_json dispatch_typed(const std::string& sub, const Workspace<K>& ws,
                            const CommandOptions& opt) {
  if (sub == "hom") return cmd_hom(ws, opt);
  if (sub == "ext") return cmd_ext(ws, opt);
  if (sub == "tau") return cmd_tau(ws, opt);
  if (sub == "bet") return cmd_bet(ws, opt);
  if (sub == "precover") return cmd_precover(ws, opt);
  if (sub == "intersect") return cmd_intersect(ws, opt);
  if (sub == "sum-preenv") return cmd_sum_preenv(ws, opt);
  if (sub == "verify") return cmd_verify(ws, opt);
  throw WorkspaceError("unknown subcommand '" + sub + "'");
}

}  // namespace

ordered_json run_command(const std::string& subcommand,
                         const CommandOptions& options) {
  auto start = std::chrono::steady_clock::now();

  ordered_json report;
  report["format_version"] = 1;
  std::string echo = subcommand;
  for (const auto& a : options.args) echo += " " + a;
  report["command"] = echo;
  report["mode"] = options.mode;
  report["probes"] = options.probes;
  report["seed"] = options.seed;

  ordered_json result;
  if (subcommand == "selftest") {
    report["workspace_digest"] = "none";
    report["field"] = "F2,F3,Q";
    result = cmd_selftest(options);
  } else if (subcommand == "demo-happel-unger") {
    ordered_json doc = builtin_workspace_json("happel-unger");
    Workspace<Fp> ws = build_workspace<Fp>(doc);
    report["workspace_digest"] = workspace_digest(ws.canonical);
    report["field"] = ws.field.name();
    result = cmd_demo_happel_unger(options);
  } else {
    AnyWorkspace any = load_workspace_file(options.workspace);
    result = std::visit(
        [&](const auto& ws) -> ordered_json {
          report["workspace_digest"] = workspace_digest(ws.canonical);
          report["field"] = ws.field.name();
          return dispatch_typed(subcommand, ws, options);
        },
        any);
  }
  report["result"] = std::move(result);

  if (options.timing) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    report["timing_ms"] = elapsed.count();
  }
  return report;
}

}  // namespace approxcat
