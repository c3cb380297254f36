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

// Discretized Frank-Wolfe engine
//
//   x_{j+1} = x_j + ((b_{j+1} - b_j) / a_{j+1}) d_j u_j,
//
// specialized per family through (c, d, u, theta), together with the
// telemetry of the discrete potential analysis: the coupling defect G_j,
// the smoothness penalty B_j (exact and diameter-relaxed), the potential
// series E_j = a_j F(x_j) - b_j OPT, the Gronwall margins and the a-priori
// guarantee F(x_N) >= coefficient * OPT - additive.

#ifndef DRSUB_SOLVER_H_
#define DRSUB_SOLVER_H_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drsub/errors.h"
#include "drsub/feasible.h"
#include "drsub/objective.h"
#include "drsub/schedule.h"

namespace drsub {

enum class LmoMode { kPlain, kMasked };

// Per-family plug-ins. All rules depend on the state only through the
// schedule value a_j (theta is chosen from the schedule, never from x), so
// the step coefficients are state-free. a0 normalizes them; every preset has
// a_0 = 1.
struct FamilySpec {
  Family family = Family::kMonotone;
  LmoMode lmo_mode = LmoMode::kPlain;
  bool relative_direction = false;  // u = v - x instead of u = v

  static FamilySpec For(Family family) {
    FamilySpec spec;
    spec.family = family;
    spec.lmo_mode =
        family == Family::kMeasured ? LmoMode::kMasked : LmoMode::kPlain;
    spec.relative_direction = IsGeneralFamily(family);
    return spec;
  }

  // 1 - theta_j.
  double Slack(double a_j, double a0) const {
    switch (family) {
      case Family::kMonotone: return 1.0;
      case Family::kMeasured: return a0 / a_j;
      default: return std::sqrt(a0 / a_j);
    }
  }

  double Theta(double a_j, double a0) const { return 1.0 - Slack(a_j, a0); }

  double C(double a_j, double a0) const {
    switch (family) {
      case Family::kMonotone: return 1.0;
      case Family::kMeasured: return 1.0 / Slack(a_j, a0);
      default: return 2.0 / Slack(a_j, a0);
    }
  }

  double D(double a_j, double a0) const {
    return family == Family::kMonotone ? 1.0 : 1.0 / Slack(a_j, a0);
  }
};

inline bool Compatible(const FamilySpec& spec, const Schedule& s) {
  return spec.family == s.family ||
         (IsGeneralFamily(spec.family) && IsGeneralFamily(s.family));
}

struct StepRecord {
  Vector v;              // LMO output at x_j
  double rho = 0.0;      // ((b_{j+1} - b_j) / a_{j+1}) d_j
  double g_term = 0.0;   // c_j (b_{j+1} - b_j) - (a_{j+1} - a_j)
  double b_exact = 0.0;  // a_{j+1} L/2 ||x_{j+1} - x_j||^2
  double b_bound = 0.0;  // D L/2 (b_{j+1} - b_j)^2 d_j^2 / a_{j+1}
};

struct StateRecord {
  int j = 0;
  double t = 0.0;
  double a = 0.0;
  double b = 0.0;
  Vector x;
  double value = 0.0;
  double inf_norm = 0.0;
  // (1 - ||x_j||_inf) - scale * (1 - theta_j); absent for the monotone family.
  std::optional<double> gronwall_margin;
  std::optional<StepRecord> step;  // absent for j = N
};

struct Trajectory {
  Family family = Family::kMonotone;
  int steps = 0;
  double smoothness = 0.0;
  double diameter = 0.0;
  // Multiplies b in the potential and the guarantee: 1 - ||x_0||_inf.
  double start_scale = 1.0;
  std::vector<StateRecord> states;
  std::int64_t value_calls = 0;
  std::int64_t gradient_calls = 0;
  std::int64_t lmo_calls = 0;
  double wall_seconds = 0.0;

  const Vector& final_point() const { return states.back().x; }
  double final_value() const { return states.back().value; }
};

struct RunOptions {
  std::optional<Vector> start;
  std::optional<double> smoothness;  // overrides f.smoothness()
  std::optional<double> diameter;    // overrides C.Diameter()
};

inline double StepCoefficient(const Schedule& s, const FamilySpec& spec,
                              const Grid& grid, int j) {
  const double a0 = s.a(0.0);
  const double tj = grid.Node(j), tn = grid.Node(j + 1);
  return (s.b(tn) - s.b(tj)) / s.a(tn) * spec.D(s.a(tj), a0);
}

// G_j = c_j (b_{j+1} - b_j) - (a_{j+1} - a_j).
inline double GTerm(const Schedule& s, const FamilySpec& spec, const Grid& grid,
                    int j) {
  if (j < 0 || j >= grid.steps()) throw InputError("g_term: j out of range");
  const double a0 = s.a(0.0);
  const double tj = grid.Node(j), tn = grid.Node(j + 1);
  const double aj = s.a(tj), an = s.a(tn);
  return spec.C(aj, a0) * (s.b(tn) - s.b(tj)) - (an - aj);
}

struct BTerm {
  double exact = 0.0;
  double bound = 0.0;
};

inline BTerm ComputeBTerm(const Schedule& s, const FamilySpec& spec,
                          const Grid& grid, int j, std::span<const double> x_j,
                          std::span<const double> x_next, double smoothness,
                          double diameter) {
  if (smoothness < 0.0 || diameter < 0.0) {
    throw InputError("b_term: L and D must be nonnegative");
  }
  internal::CheckDimension(x_j.size(), x_next.size(), "b_term");
  const double a0 = s.a(0.0);
  const double tj = grid.Node(j), tn = grid.Node(j + 1);
  const double an = s.a(tn);
  const double db = s.b(tn) - s.b(tj);
  const double d = spec.D(s.a(tj), a0);
  BTerm out;
  out.exact = an * 0.5 * smoothness * internal::SquaredDistance(x_next, x_j);
  out.bound = 0.5 * diameter * smoothness * db * db * d * d / an;
  return out;
}

namespace internal {

inline Trajectory RunFrom(const DrFunction& f, const ConvexBody& body,
                          const Schedule& s, const FamilySpec& spec, int steps,
                          Vector x, double start_scale,
                          const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  CheckDimension(f.dimension(), body.dimension(), "objective vs body");
  if (!Compatible(spec, s)) {
    throw ConfigError("family rules '" + std::string(FamilyName(spec.family)) +
                      "' do not match schedule family '" +
                      std::string(FamilyName(s.family)) + "'");
  }
  if (spec.lmo_mode == LmoMode::kMasked && !body.down_closed()) {
    throw ConfigError("measured family requires a down-closed body");
  }
  const Grid grid(steps, s.horizon);
  const double smoothness = options.smoothness.value_or(f.smoothness());
  const double diameter = options.diameter.value_or(body.Diameter());
  const double a0 = s.a(0.0);
  const std::size_t n = f.dimension();

  Trajectory traj;
  traj.family = spec.family;
  traj.steps = steps;
  traj.smoothness = smoothness;
  traj.diameter = diameter;
  traj.start_scale = start_scale;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);

  auto make_state = [&](int j) {
    StateRecord r;
    r.j = j;
    r.t = grid.Node(j);
    r.a = s.a(r.t);
    r.b = s.b(r.t);
    r.x = x;
    r.value = f.Value(x);
    ++traj.value_calls;
    r.inf_norm = InfNorm(x);
    if (spec.family != Family::kMonotone) {
      r.gronwall_margin =
          (1.0 - r.inf_norm) - start_scale * spec.Slack(r.a, a0);
    }
    return r;
  };

  Vector cap(n), u(n), next(n);
  for (int j = 0; j < steps; ++j) {
    StateRecord state = make_state(j);
    const Vector grad = f.Gradient(x);
    ++traj.gradient_calls;
    StepRecord step;
    if (spec.lmo_mode == LmoMode::kMasked) {
      for (std::size_t i = 0; i < n; ++i) cap[i] = std::clamp(1.0 - x[i], 0.0, 1.0);
      step.v = body.MaskedLmo(grad, cap);
    } else {
      step.v = body.Lmo(grad);
    }
    ++traj.lmo_calls;
    for (std::size_t i = 0; i < n; ++i) {
      u[i] = spec.relative_direction ? step.v[i] - x[i] : step.v[i];
    }
    step.rho = StepCoefficient(s, spec, grid, j);
    for (std::size_t i = 0; i < n; ++i) next[i] = x[i] + step.rho * u[i];
    if (!body.Contains(next, kMembershipTolerance)) {
      throw InvariantError("iterate " + std::to_string(j + 1) +
                           " left the feasible body " + body.Describe() +
                           " (rho=" + std::to_string(step.rho) + ")");
    }
    step.g_term = GTerm(s, spec, grid, j);
    const BTerm bt =
        ComputeBTerm(s, spec, grid, j, x, next, smoothness, diameter);
    step.b_exact = bt.exact;
    step.b_bound = bt.bound;
    state.step = std::move(step);
    traj.states.push_back(std::move(state));
    x = next;
  }
  traj.states.push_back(make_state(steps));
  traj.wall_seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return traj;
}

}  // namespace internal

// Runs N equal steps from x_0 = 0.
inline Trajectory Run(const DrFunction& f, const ConvexBody& body,
                      const Schedule& s, const FamilySpec& spec, int steps,
                      const RunOptions& options = {}) {
  if (steps < 1) throw InputError("N must be ≥ 1");
  if (options.start) {
    throw InputError("use ArbitraryStartRun for a nonzero start");
  }
  return internal::RunFrom(f, body, s, spec, steps,
                           Vector(f.dimension(), 0.0), 1.0, options);
}

// Non-monotone Frank-Wolfe from a feasible x0. The update is unchanged; the
// guaranteed coefficient shrinks by the factor 1 - ||x0||_inf.
inline Trajectory ArbitraryStartRun(const DrFunction& f, const ConvexBody& body,
                                    const Schedule& s, const FamilySpec& spec,
                                    int steps, const Vector& x0,
                                    const RunOptions& options = {}) {
  if (steps < 1) throw InputError("N must be ≥ 1");
  if (!IsGeneralFamily(spec.family)) {
    throw ConfigError("arbitrary starts are supported for the general family");
  }
  internal::CheckDimension(body.dimension(), x0.size(), "start point");
  internal::CheckFinite(x0, "start point");
  if (!body.Contains(x0, kMembershipTolerance)) {
    throw InputError("start point is not feasible");
  }
  const double scale = std::max(0.0, 1.0 - internal::InfNorm(x0));
  return internal::RunFrom(f, body, s, spec, steps, x0, scale, options);
}

struct PotentialSeries {
  Vector energy;      // E_j, j = 0..N
  Vector increments;  // E_{j+1} - E_j
  // increments[j] + G_j^+ OPT + B_j^exact; nonnegative up to round-off.
  Vector margins;
  double min_margin = std::numeric_limits<double>::infinity();
};

inline PotentialSeries ComputePotentialSeries(const Trajectory& traj,
                                              double opt_value) {
  if (!(opt_value > 0.0)) {
    throw InputError("potential series needs a positive OPT value");
  }
  PotentialSeries out;
  for (const StateRecord& r : traj.states) {
    out.energy.push_back(r.a * r.value - traj.start_scale * r.b * opt_value);
  }
  for (std::size_t j = 0; j + 1 < traj.states.size(); ++j) {
    const StepRecord& step = *traj.states[j].step;
    const double inc = out.energy[j + 1] - out.energy[j];
    out.increments.push_back(inc);
    const double margin =
        inc + std::max(step.g_term, 0.0) * opt_value + step.b_exact;
    out.margins.push_back(margin);
    out.min_margin = std::min(out.min_margin, margin);
  }
  return out;
}

struct Guarantee {
  double coefficient = 0.0;
  double additive = 0.0;
  double g_plus_sum = 0.0;

  double LowerBound(double opt_value) const {
    return coefficient * opt_value - additive;
  }
};

// F(x_N) >= ((s (b_T - b_0) - sum G_j^+) / a_T) OPT
//           - (L D / (2 a_T)) sum_j (b_{j+1} - b_j)^2 d_j^2 / a_{j+1},
// with s = 1 - ||x_0||_inf.
inline Guarantee ComputeGuarantee(const Schedule& s, const FamilySpec& spec,
                                  int steps, double smoothness, double diameter,
                                  double start_inf_norm = 0.0) {
  if (!Compatible(spec, s)) throw ConfigError("family/schedule mismatch");
  if (smoothness < 0.0 || diameter < 0.0) {
    throw InputError("guarantee: L and D must be nonnegative");
  }
  const Grid grid(steps, s.horizon);
  const double a0 = s.a(0.0);
  const double at = s.a(s.horizon);
  const double scale = std::max(0.0, 1.0 - start_inf_norm);
  Guarantee out;
  double penalty = 0.0;
  for (int j = 0; j < steps; ++j) {
    const double tj = grid.Node(j), tn = grid.Node(j + 1);
    const double db = s.b(tn) - s.b(tj);
    const double d = spec.D(s.a(tj), a0);
    penalty += db * db * d * d / s.a(tn);
    out.g_plus_sum += std::max(GTerm(s, spec, grid, j), 0.0);
  }
  out.coefficient =
      (scale * (s.b(s.horizon) - s.b(0.0)) - out.g_plus_sum) / at;
  out.additive = smoothness * diameter / (2.0 * at) * penalty;
  return out;
}

inline Guarantee ComputeGuarantee(const Trajectory& traj, const Schedule& s) {
  return ComputeGuarantee(s, FamilySpec::For(traj.family), traj.steps,
                          traj.smoothness, traj.diameter,
                          1.0 - traj.start_scale);
}

// min_j (1 - ||x_j||_inf) - scale * (1 - theta_j).
inline double GronwallCheck(const Trajectory& traj, const FamilySpec& spec) {
  if (spec.family == Family::kMonotone) {
    throw ConfigError("Gronwall check applies to the measured and general "
                      "families");
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const StateRecord& r : traj.states) {
    worst = std::min(worst, *r.gronwall_margin);
  }
  return worst;
}

}  // namespace drsub

#endif  // DRSUB_SOLVER_H_
