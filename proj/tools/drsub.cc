// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// drsub: batch runs, N-sweeps and a self-check for the Frank-Wolfe family.
//
//   drsub run   --instance I --constraint C --family F --iters N [--opt M]
//   drsub sweep --instance I --constraint C --family F --iters 16,32,64
//   drsub check

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "drsub/experiment.h"

namespace {

struct Flags {
  std::string instance;
  std::string constraint;
  std::string family = "monotone";
  std::string schedule;
  std::string iters;
  std::string opt = "none";
  std::string out = ".";
  std::string config;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

void AddExperimentFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--instance", f.instance, "Objective JSON (path or inline)");
  cmd->add_option("--constraint", f.constraint, "Body JSON (path or inline)");
  cmd->add_option("--family", f.family, "Schedule family")
      ->check(CLI::IsMember({"monotone", "measured", "general", "general-exp",
                             "general-linear"}));
  cmd->add_option("--schedule", f.schedule, "Custom schedule JSON {a, b, T}");
  cmd->add_option("--iters", f.iters, "N, or a comma-separated list of N");
  cmd->add_option("--opt", f.opt, "OPT certificate")
      ->check(CLI::IsMember({"none", "sets", "grid"}));
  cmd->add_option("--out", f.out, "Output directory");
  cmd->add_option("--seed", f.seed, "Seed for random instance generators");
  cmd->add_option("--tol", f.tol, "Invariant tolerance");
  cmd->add_option("--config", f.config, "JSON config overriding the flags");
}

drsub::ExperimentConfig ToConfig(const Flags& f) {
  drsub::ExperimentConfig c;
  c.instance = f.instance;
  c.constraint = f.constraint;
  c.family = f.family;
  if (!f.schedule.empty()) c.schedule = f.schedule;
  c.opt = f.opt;
  c.out = f.out;
  c.seed = f.seed;
  c.tolerance = f.tol;
  if (!f.iters.empty()) c.iters = drsub::ParseIters(f.iters);
  if (!f.config.empty()) {
    c = drsub::ApplyConfigJson(c, drsub::io::LoadJson(f.config, "config"));
  }
  if (!(c.tolerance >= 0.0)) throw drsub::InputError("--tol must be >= 0");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DR-submodular maximization by potential-function Frank-Wolfe"};
  app.require_subcommand(1);

  Flags run_flags, sweep_flags;
  CLI::App* run = app.add_subcommand("run", "Single run; writes CSV and summary JSON");
  AddExperimentFlags(run, run_flags);
  CLI::App* sweep = app.add_subcommand("sweep", "Runs over ascending N values");
  AddExperimentFlags(sweep, sweep_flags);

  drsub::CheckOptions check_options;
  CLI::App* check = app.add_subcommand("check", "Bundled invariant suite");
  check->add_option("--seed", check_options.seed, "Seed for sampled points");
  check->add_flag("--corrupt-preset", check_options.corrupt_preset)
      ->group("");  // test hook

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? drsub::kExitOk : drsub::kExitInput;
  }

  if (check->parsed()) {
    return drsub::CmdCheck(check_options, std::cout, std::cerr);
  }
  const bool is_run = run->parsed();
  drsub::ExperimentConfig config;
  try {
    config = ToConfig(is_run ? run_flags : sweep_flags);
  } catch (const drsub::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return drsub::kExitInput;
  }
  return is_run ? drsub::CmdRun(config, std::cout, std::cerr)
                : drsub::CmdSweep(config, std::cout, std::cerr);
}
