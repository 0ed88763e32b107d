#pragma once

// Subcommand implementations shared by the CLI binary and the test suites.
// Each command returns a deterministic JSON report; identical workspace and
// seed produce byte-identical output (timing is opt-in).

#include <string>
#include <vector>

#include "approxcat/workspace.hpp"

namespace approxcat {

struct CommandOptions {
  std::string workspace = "builtin:a2";
  std::vector<std::string> args;     // positional entity expressions
  std::string mode = "enumerate";    // enumerate | basis
  std::string probes = "default";    // default | all | name,name,...
  std::uint64_t seed = 0;
  bool timing = false;
};

// Dispatches one subcommand: hom, ext, tau, bet, precover, intersect,
// sum-preenv, verify, demo-happel-unger, selftest.
ordered_json run_command(const std::string& subcommand,
                         const CommandOptions& options);

}  // namespace approxcat
