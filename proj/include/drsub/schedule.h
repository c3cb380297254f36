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

// Weight schedules (a_t, b_t, T) for the potential E_t = a_t F(x_t) - b_t OPT.
//
// Each weight is a closed-form expression with a closed-form derivative so
// that coupling identities and per-step telemetry are evaluated exactly.

#ifndef DRSUB_SCHEDULE_H_
#define DRSUB_SCHEDULE_H_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "drsub/errors.h"

namespace drsub {

enum class Family {
  kMonotone,       // continuous greedy
  kMeasured,       // measured continuous greedy (down-closed bodies)
  kGeneral,        // non-monotone Frank-Wolfe, a = (1+t)^2, b = t
  kGeneralExp,     // same rules, a = e^t, b = e^{t/2} - 1
  kGeneralLinear,  // same rules, a = t + 1, b = sqrt(t + 1) - 1
};

inline std::string_view FamilyName(Family f) {
  switch (f) {
    case Family::kMonotone: return "monotone";
    case Family::kMeasured: return "measured";
    case Family::kGeneral: return "general";
    case Family::kGeneralExp: return "general-exp";
    case Family::kGeneralLinear: return "general-linear";
  }
  return "?";
}

inline Family ParseFamily(std::string_view name) {
  if (name == "monotone") return Family::kMonotone;
  if (name == "measured") return Family::kMeasured;
  if (name == "general") return Family::kGeneral;
  if (name == "general-exp" || name == "general-variant-exp") {
    return Family::kGeneralExp;
  }
  if (name == "general-linear" || name == "general-variant-linear") {
    return Family::kGeneralLinear;
  }
  throw InputError("unknown family '" + std::string(name) + "'");
}

// True for the three schedules that share the non-monotone Frank-Wolfe rule.
inline bool IsGeneralFamily(Family f) {
  return f == Family::kGeneral || f == Family::kGeneralExp ||
         f == Family::kGeneralLinear;
}

// scale * exp(rate t) + shift | sum_k coeffs[k] t^k |
// scale * sqrt(slope t + intercept) + shift.
struct ScheduleFn {
  enum class Kind { kExp, kPolynomial, kSqrtAffine };

  Kind kind = Kind::kPolynomial;
  double scale = 1.0;
  double rate = 1.0;
  double shift = 0.0;
  double slope = 1.0;
  double intercept = 1.0;
  std::vector<double> coeffs;

  static ScheduleFn Exp(double scale, double rate, double shift) {
    ScheduleFn f;
    f.kind = Kind::kExp;
    f.scale = scale;
    f.rate = rate;
    f.shift = shift;
    return f;
  }

  static ScheduleFn Polynomial(std::vector<double> coeffs) {
    ScheduleFn f;
    f.kind = Kind::kPolynomial;
    f.coeffs = std::move(coeffs);
    return f;
  }

  static ScheduleFn SqrtAffine(double scale, double slope, double intercept,
                               double shift) {
    ScheduleFn f;
    f.kind = Kind::kSqrtAffine;
    f.scale = scale;
    f.slope = slope;
    f.intercept = intercept;
    f.shift = shift;
    return f;
  }

  double operator()(double t) const {
    switch (kind) {
      case Kind::kExp:
        return scale * std::exp(rate * t) + shift;
      case Kind::kPolynomial: {
        double v = 0.0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
          v = v * t + *it;
        }
        return v;
      }
      case Kind::kSqrtAffine:
        return scale * std::sqrt(slope * t + intercept) + shift;
    }
    return 0.0;
  }

  double Derivative(double t) const {
    switch (kind) {
      case Kind::kExp:
        return scale * rate * std::exp(rate * t);
      case Kind::kPolynomial: {
        double v = 0.0;
        for (std::size_t k = coeffs.size(); k-- > 1;) {
          v = v * t + static_cast<double>(k) * coeffs[k];
        }
        return v;
      }
      case Kind::kSqrtAffine:
        return 0.5 * scale * slope / std::sqrt(slope * t + intercept);
    }
    return 0.0;
  }
};

struct Schedule {
  ScheduleFn a;
  ScheduleFn b;
  double horizon = 1.0;
  Family family = Family::kMonotone;
};

// Equal-step grid t_j = j T / N with t_N = T exactly.
class Grid {
 public:
  Grid(int steps, double horizon) : steps_(steps), horizon_(horizon) {
    if (steps < 1) throw InputError("N must be ≥ 1");
    if (!(horizon > 0.0)) throw InputError("horizon must be positive");
  }

  int steps() const { return steps_; }
  double horizon() const { return horizon_; }

  double Node(int j) const {
    if (j >= steps_) return horizon_;
    return horizon_ * static_cast<double>(j) / static_cast<double>(steps_);
  }

 private:
  int steps_;
  double horizon_;
};

inline Schedule Preset(Family family) {
  Schedule s;
  s.family = family;
  switch (family) {
    case Family::kMonotone:
      s.a = ScheduleFn::Exp(1.0, 1.0, 0.0);
      s.b = ScheduleFn::Exp(1.0, 1.0, 0.0);
      s.horizon = 1.0;
      break;
    case Family::kMeasured:
      s.a = ScheduleFn::Exp(1.0, 1.0, 0.0);
      s.b = ScheduleFn::Polynomial({0.0, 1.0});
      s.horizon = 1.0;
      break;
    case Family::kGeneral:
      s.a = ScheduleFn::Polynomial({1.0, 2.0, 1.0});
      s.b = ScheduleFn::Polynomial({0.0, 1.0});
      s.horizon = 1.0;
      break;
    case Family::kGeneralExp:
      s.a = ScheduleFn::Exp(1.0, 1.0, 0.0);
      s.b = ScheduleFn::Exp(1.0, 0.5, -1.0);
      s.horizon = 2.0 * std::numbers::ln2;
      break;
    case Family::kGeneralLinear:
      s.a = ScheduleFn::Polynomial({1.0, 1.0});
      s.b = ScheduleFn::SqrtAffine(1.0, 1.0, 1.0, -1.0);
      s.horizon = 3.0;
      break;
  }
  return s;
}

struct ConditionResult {
  std::string name;
  bool passed = true;
  double worst_violation = 0.0;  // 0 when passed
  double worst_t = 0.0;
};

struct ValidationReport {
  std::vector<ConditionResult> conditions;

  bool ok() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ConditionResult& c) { return c.passed; });
  }

  const ConditionResult* Find(std::string_view name) const {
    for (const auto& c : conditions) {
      if (c.name == name) return &c;
    }
    return nullptr;
  }
};

inline constexpr int kValidationNodes = 1000;
inline constexpr double kMonotonicityTolerance = 1e-12;
inline constexpr double kBoundaryTolerance = 1e-12;

// Class Q: a_0 > 0, a' >= 0, b_0 >= 0, b' >= 0 on a 1000-node grid. The
// monotone and measured families additionally need ln a_t to be a cdf on
// [0, T], i.e. a_0 = 1 and a_T = e.
inline ValidationReport Validate(const Schedule& s) {
  ValidationReport report;
  auto point = [&](std::string name, double value, double lower) {
    ConditionResult c{std::move(name)};
    if (!(value >= lower)) {
      c.passed = false;
      c.worst_violation = lower - value;
    }
    report.conditions.push_back(c);
  };
  auto scan = [&](std::string name, const ScheduleFn& fn) {
    ConditionResult c{std::move(name)};
    for (int i = 0; i < kValidationNodes; ++i) {
      const double t = s.horizon * i / (kValidationNodes - 1);
      const double d = fn.Derivative(t);
      if (!(d >= -kMonotonicityTolerance) && -d > c.worst_violation) {
        c.passed = false;
        c.worst_violation = std::isnan(d) ? INFINITY : -d;
        c.worst_t = t;
      }
    }
    report.conditions.push_back(c);
  };
  auto equals = [&](std::string name, double value, double target, double t) {
    ConditionResult c{std::move(name)};
    c.worst_t = t;
    if (!(std::abs(value - target) <= kBoundaryTolerance)) {
      c.passed = false;
      c.worst_violation = std::abs(value - target);
    }
    report.conditions.push_back(c);
  };

  {
    ConditionResult c{"horizon > 0"};
    if (!(s.horizon > 0.0)) {
      c.passed = false;
      c.worst_violation = -s.horizon;
    }
    report.conditions.push_back(c);
  }
  {
    ConditionResult c{"a_0 > 0"};
    if (!(s.a(0.0) > 0.0)) {
      c.passed = false;
      c.worst_violation = -s.a(0.0);
    }
    report.conditions.push_back(c);
  }
  scan("a nondecreasing", s.a);
  point("b_0 >= 0", s.b(0.0), 0.0);
  scan("b nondecreasing", s.b);
  if (s.family == Family::kMonotone || s.family == Family::kMeasured) {
    const double a0 = s.a(0.0), at = s.a(s.horizon);
    equals("ln a_0 = 0", a0 > 0 ? std::log(a0) : -INFINITY, 0.0, 0.0);
    equals("ln a_T = 1", at > 0 ? std::log(at) : -INFINITY, 1.0, s.horizon);
  }
  return report;
}

// (b_T - b_0) / a_T.
inline double Ratio(const Schedule& s) {
  const ValidationReport r = Validate(s);
  for (const auto& c : r.conditions) {
    if (!c.passed) {
      throw ValidationError("schedule violates '" + c.name + "'");
    }
  }
  return (s.b(s.horizon) - s.b(0.0)) / s.a(s.horizon);
}

// Integrated coupling identity of the family, evaluated at one time:
//   monotone: (b_t - b_0) - (a_t - a_0)
//   measured: (b_t - b_0) - a_0 ln(a_t / a_0)
//   general:  (b_t - b_0) - sqrt(a_0) (sqrt(a_t) - sqrt(a_0))
inline double CouplingDefect(const Schedule& s, double t) {
  const double a0 = s.a(0.0), b0 = s.b(0.0);
  const double at = s.a(t), bt = s.b(t);
  switch (s.family) {
    case Family::kMonotone:
      return (bt - b0) - (at - a0);
    case Family::kMeasured:
      return (bt - b0) - a0 * std::log(at / a0);
    default:
      return (bt - b0) - std::sqrt(a0) * (std::sqrt(at) - std::sqrt(a0));
  }
}

inline double CouplingResidual(const Schedule& s, const Grid& grid) {
  double worst = 0.0;
  for (int j = 0; j <= grid.steps(); ++j) {
    worst = std::max(worst, std::abs(CouplingDefect(s, grid.Node(j))));
  }
  return worst;
}

// The ratio curve is tabulated on [0, 2T] so that the peak at t = T sits in
// the interior of its domain.
inline constexpr double kRatioCurveSpan = 2.0;

inline double RatioCurveDomain(Family family) {
  return kRatioCurveSpan * Preset(family).horizon;
}

// (b_t - b_0) / a_t for the non-monotone schedules; peaks at 1/4 at t = T.
inline double RatioCurve(Family family, double t) {
  if (!IsGeneralFamily(family)) {
    throw InputError("ratio curve is defined for the general families");
  }
  const Schedule s = Preset(family);
  if (!(t >= 0.0 && t <= kRatioCurveSpan * s.horizon)) {
    throw InputError("ratio curve: t outside [0, 2T]");
  }
  return (s.b(t) - s.b(0.0)) / s.a(t);
}

}  // namespace drsub

#endif  // DRSUB_SCHEDULE_H_
