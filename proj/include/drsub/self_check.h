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

// Bundled invariant suite behind `drsub check`.

#ifndef DRSUB_SELF_CHECK_H_
#define DRSUB_SELF_CHECK_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "drsub/feasible.h"
#include "drsub/instances.h"
#include "drsub/objective.h"
#include "drsub/oracle.h"
#include "drsub/reference.h"
#include "drsub/schedule.h"
#include "drsub/simplex.h"
#include "drsub/solver.h"

namespace drsub {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct CheckOptions {
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  // Test hook: replaces the monotone preset's a_t by 2 e^t.
  bool corrupt_preset = false;
};

namespace check {

inline std::string Fmt(const char* format, double v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), format, v);
  return buf;
}

inline Vector RandomPoint(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x(n);
  for (double& e : x) e = unit(rng);
  return x;
}

inline SuiteResult ObjectiveDr(const CheckOptions& o) {
  SuiteResult r{"objective/dr-inequality", true, ""};
  std::mt19937_64 rng(o.seed);
  double worst = INFINITY;
  for (const DeskInstance& inst : BundledInstances()) {
    for (int p = 0; p < 200; ++p) {
      const Vector x = RandomPoint(rng, inst.function.dimension());
      const Vector y = RandomPoint(rng, inst.function.dimension());
      worst = std::min(worst, CheckDrInequality(inst.function, x, y));
    }
  }
  r.passed = worst >= -o.tolerance;
  r.detail = "min residual " + Fmt("%.3e", worst);
  return r;
}

inline SuiteResult ObjectiveGradients(const CheckOptions& o) {
  SuiteResult r{"objective/gradients", true, ""};
  std::mt19937_64 rng(o.seed + 1);
  double fd_err = 0.0, antitone = 0.0, sign = 0.0, smooth = 0.0;
  for (const DeskInstance& inst : BundledInstances()) {
    const DrFunction& f = inst.function;
    const std::size_t n = f.dimension();
    for (int p = 0; p < 50; ++p) {
      const Vector x = RandomPoint(rng, n);
      const Vector g = f.Gradient(x);
      const Vector fd = FiniteDiffGrad(f, x, 1e-4);
      double diff = 0.0;
      for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(g[i] - fd[i]));
      fd_err = std::max(fd_err, diff / (1.0 + internal::InfNorm(g)));
    }
    for (int p = 0; p < 100; ++p) {
      Vector x = RandomPoint(rng, n), y = RandomPoint(rng, n);
      for (std::size_t i = 0; i < n; ++i) {
        if (x[i] > y[i]) std::swap(x[i], y[i]);
      }
      const Vector gx = f.Gradient(x), gy = f.Gradient(y);
      for (std::size_t i = 0; i < n; ++i) {
        antitone = std::max(antitone, gy[i] - gx[i]);
        if (f.monotone()) sign = std::max(sign, -gx[i]);
      }
      const double lhs = std::sqrt(internal::SquaredDistance(gx, gy));
      const double rhs = f.smoothness() * std::sqrt(internal::SquaredDistance(x, y));
      smooth = std::max(smooth, lhs - rhs);
    }
  }
  r.passed = fd_err <= 1e-5 && antitone <= o.tolerance && sign <= o.tolerance &&
             smooth <= o.tolerance;
  r.detail = "fd " + Fmt("%.2e", fd_err) + ", antitone " + Fmt("%.2e", antitone) +
             ", sign " + Fmt("%.2e", sign) + ", L excess " + Fmt("%.2e", smooth);
  return r;
}

inline SuiteResult ObjectiveMultilinear(const CheckOptions& o) {
  SuiteResult r{"objective/multilinear", true, ""};
  std::mt19937_64 rng(o.seed + 2);
  double worst = 0.0;
  for (const DeskInstance& inst : BundledInstances()) {
    if (!inst.sets) continue;
    const SetFunction& f = *inst.sets;
    const std::size_t m = static_cast<std::size_t>(f.ground_size());
    Vector x(m);
    for (std::uint32_t s = 0; s < f.subset_count(); ++s) {
      for (std::size_t i = 0; i < m; ++i) x[i] = (s >> i & 1u) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(inst.function.Value(x) - f(s)));
    }
    for (int p = 0; p < 20; ++p) {
      x = RandomPoint(rng, m);
      worst = std::max(worst, std::abs(inst.function.Value(x) -
                                       reference::MultilinearSum(f, x)));
    }
    if (!f.IsSubmodular()) {
      r.passed = false;
      r.detail = inst.name + " is not submodular; ";
    }
  }
  r.passed = r.passed && worst <= 1e-12;
  r.detail += "max lattice/sum error " + Fmt("%.2e", worst);
  return r;
}

inline std::vector<ConvexBody> CheckBodies() {
  std::vector<ConvexBody> bodies;
  for (const DeskInstance& inst : BundledInstances()) bodies.push_back(inst.body);
  bodies.push_back(ConvexBody::Box({1.0, 0.5, 0.25, 1.0}));
  bodies.push_back(ConvexBody::Cardinality(5, 3));
  bodies.push_back(ConvexBody::Partition(5, {{0, 3}, {1, 2, 4}}, {1, 2}));
  return bodies;
}

inline SuiteResult FeasibleLmo(const CheckOptions& o) {
  SuiteResult r{"feasible/lmo-vs-enumeration", true, ""};
  std::mt19937_64 rng(o.seed + 3);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  int infeasible = 0, bodies = 0;
  for (const ConvexBody& body : CheckBodies()) {
    ++bodies;
    const std::size_t n = body.dimension();
    const Vector ones(n, 1.0);
    for (int p = 0; p < 100; ++p) {
      Vector g(n), cap(n);
      for (std::size_t i = 0; i < n; ++i) {
        g[i] = normal(rng);
        cap[i] = unit(rng);
      }
      const Vector v = body.Lmo(g);
      const Vector w = body.MaskedLmo(g, cap);
      if (!body.Contains(v) || !body.Contains(w)) ++infeasible;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i] > cap[i] + 1e-12) ++infeasible;
      }
      worst = std::max(worst, std::abs(internal::Dot(g, v) -
                                       reference::LmoValueByEnumeration(body, g, ones)));
      worst = std::max(worst, std::abs(internal::Dot(g, w) -
                                       reference::LmoValueByEnumeration(body, g, cap)));
    }
  }
  r.passed = worst <= 1e-9 && infeasible == 0;
  r.detail = std::to_string(bodies) + " bodies, max gap " + Fmt("%.2e", worst) +
             ", infeasible " + std::to_string(infeasible);
  return r;
}

// Random packing LP with n, m in [1, 5]; a third of the entries are zero.
inline LpProblem RandomPackingLp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto n = static_cast<std::size_t>(size(rng));
  const auto m = static_cast<std::size_t>(size(rng));
  LpProblem p;
  p.objective.resize(n);
  for (double& c : p.objective) c = normal(rng);
  p.constraints.resize(n * m);
  for (double& a : p.constraints) a = unit(rng) < 0.33 ? 0.0 : 2.0 * unit(rng);
  p.rhs.resize(m);
  for (double& b : p.rhs) b = 0.2 + 1.5 * unit(rng);
  p.upper.resize(n);
  for (double& u : p.upper) u = unit(rng) < 0.5 ? 1.0 : 0.1 + 0.9 * unit(rng);
  return p;
}

inline SuiteResult FeasibleSimplex(const CheckOptions& o) {
  SuiteResult r{"feasible/simplex-vs-basic-solutions", true, ""};
  std::mt19937_64 rng(o.seed + 4);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const LpProblem p = RandomPackingLp(rng);
    worst = std::max(worst, std::abs(SimplexSolve(p).value -
                                     reference::LpByBasicSolutions(p).value));
  }
  r.passed = worst <= 1e-9;
  r.detail = "50 LPs, max gap " + Fmt("%.2e", worst);
  return r;
}

inline Schedule CheckedPreset(Family f, const CheckOptions& o) {
  Schedule s = Preset(f);
  if (o.corrupt_preset && f == Family::kMonotone) {
    s.a = ScheduleFn::Exp(2.0, 1.0, 0.0);
  }
  return s;
}

inline const std::vector<Family>& AllFamilies() {
  static const std::vector<Family> kAll = {
      Family::kMonotone, Family::kMeasured, Family::kGeneral,
      Family::kGeneralExp, Family::kGeneralLinear};
  return kAll;
}

inline SuiteResult ScheduleRatios(const CheckOptions& o) {
  SuiteResult r{"schedule/ratios", true, ""};
  const double expected[] = {1.0 - std::exp(-1.0), std::exp(-1.0), 0.25, 0.25,
                             0.25};
  std::string table;
  for (std::size_t k = 0; k < AllFamilies().size(); ++k) {
    const Schedule s = CheckedPreset(AllFamilies()[k], o);
    const ValidationReport v = Validate(s);
    if (!v.ok()) {
      r.passed = false;
      table += (table.empty() ? "" : " ") + std::string(FamilyName(s.family)) + "=invalid";
      continue;
    }
    const double ratio = Ratio(s);
    if (std::abs(ratio - expected[k]) > 1e-12) r.passed = false;
    table += (table.empty() ? "" : " ") + std::string(FamilyName(s.family)) + "=" +
             Fmt("%.6f", ratio);
  }
  r.detail = table;
  return r;
}

inline SuiteResult ScheduleValidation(const CheckOptions& o) {
  SuiteResult r{"schedule/validation+coupling", true, ""};
  double worst = 0.0;
  for (Family f : AllFamilies()) {
    const Schedule s = CheckedPreset(f, o);
    const ValidationReport v = Validate(s);
    for (const auto& c : v.conditions) {
      if (!c.passed) {
        r.passed = false;
        r.detail += std::string(FamilyName(f)) + " violates '" + c.name + "'; ";
      }
    }
    for (int n : {1, 10, 100, 1000}) {
      worst = std::max(worst, CouplingResidual(s, Grid(n, s.horizon)));
    }
  }
  r.passed = r.passed && worst <= 1e-10;
  r.detail += "max coupling residual " + Fmt("%.2e", worst);
  return r;
}

inline SuiteResult SolverGTerms(const CheckOptions& o) {
  SuiteResult r{"solver/g-terms", true, ""};
  double mono = 0.0, other = -INFINITY;
  for (Family f : AllFamilies()) {
    const Schedule s = CheckedPreset(f, o);
    const FamilySpec spec = FamilySpec::For(f);
    for (int n : {1, 2, 3, 10, 100, 1000}) {
      const Grid grid(n, s.horizon);
      for (int j = 0; j < n; ++j) {
        const double g = GTerm(s, spec, grid, j);
        if (f == Family::kMonotone) {
          mono = std::max(mono, std::abs(g));
        } else {
          other = std::max(other, g);
        }
      }
    }
  }
  r.passed = mono <= 1e-12 && other <= 1e-12;
  r.detail = "monotone max|G| " + Fmt("%.2e", mono) + ", others max G " +
             Fmt("%.2e", other);
  return r;
}

struct DeskRun {
  const DeskInstance* instance;
  Family family;
  int steps;
  Trajectory trajectory;
  double opt;
};

// Runs every applicable family on every bundled instance.
inline std::vector<DeskRun> DeskRuns(const std::vector<DeskInstance>& instances,
                                     const std::vector<int>& step_counts,
                                     const CheckOptions& o) {
  std::vector<DeskRun> runs;
  for (const DeskInstance& inst : instances) {
    const double opt = DeskOpt(inst).opt;
    for (Family f : inst.families) {
      const Schedule s = CheckedPreset(f, o);
      if (!Validate(s).ok()) continue;
      for (int n : step_counts) {
        runs.push_back({&inst, f, n,
                        Run(inst.function, inst.body, s, FamilySpec::For(f), n),
                        opt});
      }
    }
  }
  return runs;
}

inline std::vector<SuiteResult> SolverSuites(const CheckOptions& o) {
  const std::vector<DeskInstance> instances = BundledInstances();
  std::vector<SuiteResult> out;
  std::vector<DeskRun> runs;
  try {
    runs = DeskRuns(instances, {1, 7, 50, 500}, o);
  } catch (const std::exception& e) {
    out.push_back({"solver/feasibility", false, e.what()});
    return out;
  }
  double b_excess = -INFINITY, potential = INFINITY, gronwall = INFINITY;
  double guarantee = INFINITY;
  for (const DeskRun& run : runs) {
    const Schedule s = CheckedPreset(run.family, o);
    for (const StateRecord& st : run.trajectory.states) {
      if (st.step) b_excess = std::max(b_excess, st.step->b_exact - st.step->b_bound);
    }
    if (run.opt > 0.0) {
      potential = std::min(
          potential, ComputePotentialSeries(run.trajectory, run.opt).min_margin);
      const Guarantee g = ComputeGuarantee(run.trajectory, s);
      guarantee = std::min(guarantee,
                           run.trajectory.final_value() - g.LowerBound(run.opt));
    }
    if (run.family != Family::kMonotone) {
      gronwall = std::min(gronwall,
                          GronwallCheck(run.trajectory, FamilySpec::For(run.family)));
    }
  }
  const std::string count = std::to_string(runs.size()) + " runs";
  out.push_back({"solver/feasibility", true, count + ", all iterates feasible"});
  out.push_back({"solver/b-terms", b_excess <= 1e-12,
                 "max B_exact - B_bound " + Fmt("%.2e", b_excess)});
  out.push_back({"solver/potential", potential >= -o.tolerance,
                 "min increment margin " + Fmt("%.3e", potential)});
  out.push_back({"solver/gronwall", gronwall >= -o.tolerance,
                 "min margin " + Fmt("%.3e", gronwall)});
  out.push_back({"solver/guarantee", guarantee >= -o.tolerance,
                 "min F(x_N) - bound " + Fmt("%.3e", guarantee)});
  return out;
}

inline SuiteResult OracleCrossCheck(const CheckOptions&) {
  SuiteResult r{"oracle/cross-check", true, ""};
  int compared = 0;
  for (const DeskInstance& inst : BundledInstances()) {
    if (!inst.sets || inst.body.kind() == ConvexBody::Kind::kPacking) continue;
    const OptCertificate exact = SetBruteforce(*inst.sets, inst.body);
    const OptCertificate grid = GridSearch(inst.function, inst.body, 3);
    const CrossCheckReport rep = CrossCheck(exact, grid);
    ++compared;
    if (!rep.consistent || exact.opt > grid.opt + grid.slack) {
      r.passed = false;
      r.detail += inst.name + " inconsistent; ";
    }
    for (std::size_t k = 1; k < grid.level_values.size(); ++k) {
      if (grid.level_values[k] < grid.level_values[k - 1]) r.passed = false;
    }
  }
  r.detail += std::to_string(compared) + " instances compared";
  return r;
}

}  // namespace check

inline std::vector<SuiteResult> RunSelfCheck(const CheckOptions& o) {
  std::vector<SuiteResult> out;
  auto guarded = [&](auto&& suite) {
    try {
      out.push_back(suite(o));
    } catch (const std::exception& e) {
      out.push_back({"(suite raised)", false, e.what()});
    }
  };
  guarded(check::ObjectiveDr);
  guarded(check::ObjectiveGradients);
  guarded(check::ObjectiveMultilinear);
  guarded(check::FeasibleLmo);
  guarded(check::FeasibleSimplex);
  guarded(check::ScheduleRatios);
  guarded(check::ScheduleValidation);
  guarded(check::SolverGTerms);
  for (SuiteResult& s : check::SolverSuites(o)) out.push_back(std::move(s));
  guarded(check::OracleCrossCheck);
  return out;
}

}  // namespace drsub

#endif  // DRSUB_SELF_CHECK_H_
