// approxcat: a workbench for exact computations with quiver representations:
// Hom/Ext spaces, conflations, arrow-category machinery, morphism-ideal
// fibers, and exactly verified special preenvelope constructions.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "approxcat/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"approxcat: exact approximation-theory workbench for quiver "
               "representations"};
  app.require_subcommand(1);

  approxcat::CommandOptions opt;
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool needs_workspace) {
    if (needs_workspace)
      sub->add_option("--workspace", opt.workspace,
                      "workspace JSON path or builtin:<a2|happel-unger>");
    sub->add_option("--mode", opt.mode, "enumerate|basis")
        ->check(CLI::IsMember({"enumerate", "basis"}));
    sub->add_option("--probes", opt.probes,
                    "default|all|comma-separated names");
    sub->add_option("--seed", opt.seed, "seed for randomized suites");
    sub->add_flag("--timing", opt.timing,
                  "include wall-clock timing (breaks byte-stability)");
    sub->add_option("--out", out_path, "write the JSON report to a file");
  };

  struct SubSpec {
    const char* name;
    const char* help;
    int positional;
    const char* arg_help;
    bool needs_workspace;
  };
  const std::vector<SubSpec> subs = {
      {"hom", "dimension and basis of Hom(M, N)", 2, "M N", true},
      {"ext", "dimension and representatives of Ext1(A, B)", 2, "A B", true},
      {"tau", "Auslander-Reiten translate of M", 1, "M", true},
      {"bet", "special a-perp preenvelope of B by the pushout construction",
       2, "arrow B", true},
      {"precover", "special perp-b precover of A by pullbacks", 2, "arrow A",
       true},
      {"intersect",
       "intersection of two BET preenvelopes via the ladder pushout", 3,
       "arrow1 arrow2 B", true},
      {"sum-preenv", "preenvelope for the sum ideal: (j1; j2)", 2, "j1 j2",
       true},
      {"verify", "construct a BET preenvelope and run the full battery", 2,
       "arrow B", true},
      {"demo-happel-unger",
       "three-vertex demo: T1, T2 = tau T1, BET for both, intersection", -1,
       "[B]", false},
      {"selftest", "seeded property suites over F2, F3 and Q", 0, "", false},
  };

  std::vector<CLI::App*> apps;
  for (const auto& sspec : subs) {
    CLI::App* sub = app.add_subcommand(sspec.name, sspec.help);
    if (sspec.positional != 0)
      sub->add_option("args", opt.args, sspec.arg_help)
          ->expected(sspec.positional == -1 ? -1 : sspec.positional);
    add_common(sub, sspec.needs_workspace);
    apps.push_back(sub);
  }

  CLI11_PARSE(app, argc, argv);

  std::string sub_name;
  for (size_t i = 0; i < subs.size(); ++i)
    if (apps[i]->parsed()) sub_name = subs[i].name;

  try {
    approxcat::ordered_json report =
        approxcat::run_command(sub_name, opt);
    std::string text = report.dump(2);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
      }
      out << text << "\n";
    }
    std::cout << text << "\n";
    bool ok = true;
    if (report.contains("result")) {
      const auto& r = report["result"];
      if (r.contains("all_passed")) ok = r["all_passed"].get<bool>();
      if (r.contains("verification"))
        ok = ok && r["verification"]["all_passed"].get<bool>();
      if (r.contains("verification_intersection"))
        ok = ok &&
             r["verification_intersection"]["all_passed"].get<bool>();
    }
    return ok ? 0 : 1;
  } catch (const approxcat::CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
