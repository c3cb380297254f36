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

// Batch experiment driver behind the `drsub` command line: single runs,
// N-sweeps and the bundled self-check. Exit codes: 0 success, 1 input or
// configuration error, 2 invariant violation.

#ifndef DRSUB_EXPERIMENT_H_
#define DRSUB_EXPERIMENT_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "drsub/errors.h"
#include "drsub/io.h"
#include "drsub/oracle.h"
#include "drsub/schedule.h"
#include "drsub/self_check.h"
#include "drsub/solver.h"

namespace drsub {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitInvariant = 2;

inline constexpr double kSlopeTarget = -1.0;
inline constexpr double kSlopeTolerance = 0.15;

enum class OptMode { kNone, kSets, kGrid };

inline OptMode ParseOptMode(const std::string& s) {
  if (s == "none") return OptMode::kNone;
  if (s == "sets" || s == "set-bruteforce") return OptMode::kSets;
  if (s == "grid") return OptMode::kGrid;
  throw InputError("unknown OPT mode '" + s + "'");
}

struct ExperimentConfig {
  std::string instance;    // JSON path or inline JSON
  std::string constraint;  // JSON path or inline JSON
  std::string family = "monotone";
  std::optional<std::string> schedule;  // overrides the preset
  std::vector<int> iters;
  std::string opt = "none";
  std::string out = ".";
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

// "500" or "16,32,64".
inline std::vector<int> ParseIters(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InputError("--iters: '" + item + "' is not an integer");
    }
    if (used != item.size()) {
      throw InputError("--iters: '" + item + "' is not an integer");
    }
    if (v < 1) throw InputError("N must be ≥ 1");
    if (v > 100000000) throw InputError("N too large");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw InputError("N must be ≥ 1");
  return out;
}

// Applies keys of a --config JSON object on top of `base`.
inline ExperimentConfig ApplyConfigJson(ExperimentConfig base, const Json& j) {
  if (!j.is_object()) throw InputError("--config must hold a JSON object");
  auto text = [&](const char* key) -> std::optional<std::string> {
    if (!j.contains(key)) return std::nullopt;
    const Json& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object()) return v.dump();
    throw InputError(std::string("config: '") + key + "' must be a string or object");
  };
  if (auto v = text("instance")) base.instance = *v;
  if (auto v = text("constraint")) base.constraint = *v;
  if (auto v = text("family")) base.family = *v;
  if (auto v = text("schedule")) base.schedule = *v;
  if (auto v = text("opt")) base.opt = *v;
  if (auto v = text("out")) base.out = *v;
  if (j.contains("iters")) {
    const Json& v = j.at("iters");
    if (v.is_string()) {
      base.iters = ParseIters(v.get<std::string>());
    } else if (v.is_number_integer()) {
      base.iters = ParseIters(std::to_string(v.get<long long>()));
    } else if (v.is_array()) {
      std::string joined;
      for (const Json& e : v) {
        joined += (joined.empty() ? "" : ",") + std::to_string(io::Integer(e, "iters"));
      }
      base.iters = ParseIters(joined);
    } else {
      throw InputError("config: 'iters' must be an integer, list or string");
    }
  }
  if (j.contains("seed")) {
    const long long s = io::Integer(j.at("seed"), "seed");
    if (s < 0) throw InputError("seed must be nonnegative");
    base.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("tol")) base.tolerance = io::Real(j.at("tol"), "tol");
  return base;
}

struct Problem {
  Instance instance;
  ConvexBody body;
  Schedule schedule;
  FamilySpec spec;
  bool preset = true;
};

inline Problem LoadProblem(const ExperimentConfig& c) {
  if (c.instance.empty()) throw InputError("--instance is required");
  if (c.constraint.empty()) throw InputError("--constraint is required");
  const Family family = ParseFamily(c.family);
  Instance inst = InstanceFromJson(io::LoadJson(c.instance, "instance"), c.seed);
  ConvexBody body = BodyFromJson(io::LoadJson(c.constraint, "constraint"));
  internal::CheckDimension(inst.function.dimension(), body.dimension(),
                           "instance vs constraint");
  Schedule s = c.schedule
                   ? ScheduleFromJson(io::LoadJson(*c.schedule, "schedule"), family)
                   : Preset(family);
  const ValidationReport report = Validate(s);
  for (const auto& cond : report.conditions) {
    if (!cond.passed) {
      throw ValidationError("schedule violates '" + cond.name + "' (by " +
                            FormatReal(cond.worst_violation) + " at t=" +
                            FormatReal(cond.worst_t) + ")");
    }
  }
  const FamilySpec spec = FamilySpec::For(family);
  if (spec.lmo_mode == LmoMode::kMasked && !body.down_closed()) {
    throw ConfigError("measured family requires a down-closed body");
  }
  return Problem{std::move(inst), std::move(body), std::move(s), spec,
                 !c.schedule.has_value()};
}

inline std::optional<OptCertificate> ComputeOpt(const Problem& p, OptMode mode) {
  switch (mode) {
    case OptMode::kNone:
      return std::nullopt;
    case OptMode::kSets:
      if (!p.instance.set_function) {
        throw InputError("--opt sets needs a coverage or table instance");
      }
      return SetBruteforce(*p.instance.set_function, p.body);
    case OptMode::kGrid:
      return GridSearch(p.instance.function, p.body, kDefaultGridLevels);
  }
  return std::nullopt;
}

inline Json CertificateJson(const OptCertificate& c) {
  Json j;
  j["method"] = OptMethodName(c.method);
  j["opt"] = c.opt;
  j["slack"] = c.slack;
  j["resolution"] = c.resolution;
  j["maximizer"] = c.maximizer;
  if (c.method == OptMethod::kSetBruteforce) j["subset"] = c.subset;
  return j;
}

inline void WriteAtomically(const std::filesystem::path& path,
                            const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write '" + tmp.string() + "'");
    out << content;
    if (!out) throw InputError("failed writing '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

struct RunOutcome {
  int steps = 0;
  double final_value = 0.0;
  Guarantee guarantee;
  double ratio_guaranteed = 0.0;
  std::optional<double> ratio_achieved;
  std::vector<std::string> violations;
  Json summary;
};

// Executes one run, writes trajectory_N<N>.csv and summary_N<N>.json, and
// collects invariant violations.
inline RunOutcome ExecuteRun(const Problem& p,
                             const std::optional<OptCertificate>& opt,
                             int steps, const std::filesystem::path& out_dir,
                             double tol) {
  const Trajectory traj =
      Run(p.instance.function, p.body, p.schedule, p.spec, steps);
  RunOutcome r;
  r.steps = steps;
  r.final_value = traj.final_value();
  r.guarantee = ComputeGuarantee(traj, p.schedule);
  r.ratio_guaranteed = Ratio(p.schedule);

  std::optional<PotentialSeries> potential;
  if (opt && opt->opt > 0.0) {
    potential = ComputePotentialSeries(traj, opt->opt);
    r.ratio_achieved = r.final_value / opt->opt;
    if (potential->min_margin < -tol) {
      r.violations.push_back("potential increment below -B_j");
    }
    if (r.final_value < r.guarantee.LowerBound(opt->opt) - tol) {
      r.violations.push_back("final value below the guaranteed bound");
    }
  }
  std::optional<double> gronwall;
  if (p.spec.family != Family::kMonotone) {
    gronwall = GronwallCheck(traj, p.spec);
    if (*gronwall < -tol) r.violations.push_back("Gronwall margin negative");
  }
  for (const StateRecord& st : traj.states) {
    if (st.step && st.step->b_exact > st.step->b_bound + 1e-12) {
      r.violations.push_back("B_exact exceeds B_bound at j=" + std::to_string(st.j));
      break;
    }
  }
  if (p.preset) {
    for (const StateRecord& st : traj.states) {
      if (st.step && st.step->g_term > 1e-12) {
        r.violations.push_back("positive G_j for a preset at j=" +
                               std::to_string(st.j));
        break;
      }
    }
  }

  Json s;
  s["family"] = std::string(FamilyName(p.spec.family));
  s["N"] = steps;
  s["L"] = traj.smoothness;
  s["D"] = traj.diameter;
  s["final_value"] = r.final_value;
  s["final_point"] = traj.final_point();
  s["opt"] = opt ? Json(opt->opt) : Json(nullptr);
  s["certificate"] = opt ? CertificateJson(*opt) : Json(nullptr);
  s["ratio_achieved"] = r.ratio_achieved ? Json(*r.ratio_achieved) : Json(nullptr);
  s["ratio_guaranteed"] = r.ratio_guaranteed;
  s["guarantee_coefficient"] = r.guarantee.coefficient;
  s["additive_gap"] = r.guarantee.additive;
  s["min_potential_increment_margin"] =
      potential ? Json(potential->min_margin) : Json(nullptr);
  s["min_gronwall_margin"] = gronwall ? Json(*gronwall) : Json(nullptr);
  s["feasible"] = true;
  s["violations"] = r.violations;
  s["oracle_calls"] = {{"value", traj.value_calls},
                       {"gradient", traj.gradient_calls},
                       {"lmo", traj.lmo_calls}};
  s["wall_seconds"] = traj.wall_seconds;
  r.summary = s;

  const std::string tag = "_N" + std::to_string(steps);
  WriteAtomically(out_dir / ("trajectory" + tag + ".csv"),
                  TrajectoryCsv(traj, potential ? &potential->energy : nullptr));
  WriteAtomically(out_dir / ("summary" + tag + ".json"), s.dump(2) + "\n");
  return r;
}

// Least-squares slope of log(y) against log(x).
inline double LogLogSlope(const std::vector<double>& x,
                          const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace internal {

template <typename Body>
int Guard(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

inline std::filesystem::path PrepareOutDir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + out + "'");
  return dir;
}

}  // namespace internal

inline int CmdRun(const ExperimentConfig& c, std::ostream& out,
                  std::ostream& err) {
  return internal::Guard(err, [&] {
    if (c.iters.size() != 1) {
      throw InputError(c.iters.empty() ? "N must be ≥ 1"
                                       : "run takes a single N; use sweep");
    }
    const Problem p = LoadProblem(c);
    const auto opt = ComputeOpt(p, ParseOptMode(c.opt));
    const auto dir = internal::PrepareOutDir(c.out);
    const RunOutcome r = ExecuteRun(p, opt, c.iters[0], dir, c.tolerance);
    out << r.summary.dump(2) << "\n";
    for (const auto& v : r.violations) err << "violation: " << v << "\n";
    return r.violations.empty() ? kExitOk : kExitInvariant;
  });
}

inline int CmdSweep(const ExperimentConfig& c, std::ostream& out,
                    std::ostream& err) {
  return internal::Guard(err, [&] {
    if (c.iters.size() < 3) {
      throw InputError("sweep needs at least three values of N");
    }
    for (std::size_t k = 1; k < c.iters.size(); ++k) {
      if (c.iters[k] <= c.iters[k - 1]) {
        throw InputError("sweep: N values must be strictly ascending");
      }
    }
    const Problem p = LoadProblem(c);
    const auto opt = ComputeOpt(p, ParseOptMode(c.opt));
    const auto dir = internal::PrepareOutDir(c.out);

    std::vector<std::future<RunOutcome>> pending;
    for (int n : c.iters) {
      pending.push_back(std::async(std::launch::async, [&, n] {
        return ExecuteRun(p, opt, n, dir, c.tolerance);
      }));
    }
    std::vector<RunOutcome> rows;
    for (auto& f : pending) rows.push_back(f.get());

    std::string csv = "N,achieved,guaranteed,additive\n";
    std::vector<double> ns, additive;
    bool positive = true;
    std::vector<std::string> violations;
    for (const RunOutcome& r : rows) {
      csv += std::to_string(r.steps) + ',' +
             (r.ratio_achieved ? FormatReal(*r.ratio_achieved) : "") + ',' +
             FormatReal(r.guarantee.coefficient) + ',' +
             FormatReal(r.guarantee.additive) + '\n';
      ns.push_back(r.steps);
      additive.push_back(r.guarantee.additive);
      positive = positive && r.guarantee.additive > 0.0;
      for (const auto& v : r.violations) {
        violations.push_back("N=" + std::to_string(r.steps) + ": " + v);
      }
    }
    std::optional<double> slope;
    if (positive) slope = LogLogSlope(ns, additive);
    if (slope && p.preset &&
        std::abs(*slope - kSlopeTarget) > kSlopeTolerance) {
      violations.push_back("additive-term slope " + FormatReal(*slope) +
                           " outside -1 +/- 0.15");
    }
    const std::string tag = std::string(FamilyName(p.spec.family));
    WriteAtomically(dir / ("sweep_" + tag + ".csv"), csv);
    Json summary;
    summary["family"] = tag;
    summary["iters"] = c.iters;
    summary["additive_slope"] = slope ? Json(*slope) : Json(nullptr);
    summary["violations"] = violations;
    WriteAtomically(dir / ("sweep_" + tag + ".json"), summary.dump(2) + "\n");
    out << csv;
    out << "additive slope: " << (slope ? FormatReal(*slope) : "n/a") << "\n";
    for (const auto& v : violations) err << "violation: " << v << "\n";
    return violations.empty() ? kExitOk : kExitInvariant;
  });
}

inline int CmdCheck(const CheckOptions& options, std::ostream& out,
                    std::ostream& err) {
  return internal::Guard(err, [&] {
    bool ok = true;
    for (const SuiteResult& s : RunSelfCheck(options)) {
      out << (s.passed ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.detail
          << "\n";
      ok = ok && s.passed;
    }
    out << (ok ? "all suites passed" : "some suites FAILED") << "\n";
    return ok ? kExitOk : kExitInvariant;
  });
}

}  // namespace drsub

#endif  // DRSUB_EXPERIMENT_H_
