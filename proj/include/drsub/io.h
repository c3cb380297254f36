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

// JSON loaders for instances, constraints and schedules, and the trajectory
// CSV writer.
//
// Instance:   {"kind": "coverage", "sets": [[0, 1], [1, 2]], "weights": [...]}
//             {"kind": "coverage", "random": {"sets": 4, "universe": 8,
//                                             "density": 0.4}}
//             {"kind": "quadratic", "H": [[...], ...], "c": [...]}
//             {"kind": "concave_modular", "n": 3, "weights": [[...], ...]}
//             {"kind": "table", "m": 2, "values": [f(0), f(1), f(2), f(3)]}
//             Any kind may carry "L" to override the smoothness constant.
// Constraint: {"kind": "box", "n": 3, "upper": [...]}
//             {"kind": "cardinality", "n": 3, "k": 2}
//             {"kind": "partition", "blocks": [[0, 1], [2]], "capacities": [1, 1]}
//             {"kind": "packing", "n": 2, "A": [row-major], "b": [...]}
// Schedule:   {"a": fn, "b": fn, "T": 1.0} with fn one of
//             {"kind": "exp", "scale": 1, "rate": 1, "shift": 0}
//             {"kind": "poly", "coeffs": [c0, c1, ...]}
//             {"kind": "sqrt_affine", "scale": 1, "slope": 1, "intercept": 1,
//              "shift": -1}

#ifndef DRSUB_IO_H_
#define DRSUB_IO_H_

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "drsub/errors.h"
#include "drsub/feasible.h"
#include "drsub/objective.h"
#include "drsub/schedule.h"
#include "drsub/solver.h"

namespace drsub {

using Json = nlohmann::json;

struct Instance {
  DrFunction function;
  std::optional<SetFunction> set_function;
};

namespace io {

inline Json ParseJsonText(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": invalid JSON (" + e.what() + ")");
  }
}

// Accepts inline JSON (leading '{') or a file path.
inline Json LoadJson(const std::string& path_or_inline,
                     const std::string& what) {
  const auto first = path_or_inline.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && path_or_inline[first] == '{') {
    return ParseJsonText(path_or_inline, what);
  }
  std::ifstream in(path_or_inline);
  if (!in) throw InputError(what + ": cannot open '" + path_or_inline + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseJsonText(buf.str(), what);
}

inline const Json& Field(const Json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string(what) + ": missing field '" + key + "'");
  }
  return j.at(key);
}

inline double Real(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + ": expected number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw InputError(std::string(what) + ": non-finite number");
  }
  return v;
}

inline long long Integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw InputError(std::string(what) + ": expected integer");
  }
  return j.get<long long>();
}

inline Vector Reals(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected array");
  Vector out;
  for (const Json& e : j) out.push_back(Real(e, what));
  return out;
}

inline std::vector<int> Ints(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + ": expected array");
  std::vector<int> out;
  for (const Json& e : j) out.push_back(static_cast<int>(Integer(e, what)));
  return out;
}

inline std::size_t Size(const Json& j, const char* what) {
  const long long v = Integer(j, what);
  if (v < 0) throw InputError(std::string(what) + ": must be nonnegative");
  return static_cast<std::size_t>(v);
}

inline std::string Kind(const Json& j, const char* what) {
  const Json& k = Field(j, "kind", what);
  if (!k.is_string()) throw InputError(std::string(what) + ": kind must be a string");
  return k.get<std::string>();
}

inline SetFunction RandomCoverage(const Json& spec, std::uint64_t seed) {
  const std::size_t sets = Size(Field(spec, "sets", "random coverage"), "sets");
  const std::size_t universe =
      Size(Field(spec, "universe", "random coverage"), "universe");
  const double density =
      spec.contains("density") ? Real(spec.at("density"), "density") : 0.4;
  if (!(density >= 0.0 && density <= 1.0)) {
    throw InputError("random coverage: density must lie in [0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<int>> members(sets);
  for (std::size_t i = 0; i < sets; ++i) {
    for (std::size_t e = 0; e < universe; ++e) {
      if (unit(rng) < density) members[i].push_back(static_cast<int>(e));
    }
  }
  Vector weights(universe);
  for (double& w : weights) w = 0.5 + unit(rng);
  return SetFunction::Coverage(std::move(members), std::move(weights));
}

}  // namespace io

inline Instance InstanceFromJson(const Json& j, std::uint64_t seed = 0) {
  const std::string kind = io::Kind(j, "instance");
  std::optional<SetFunction> sets;
  std::optional<DrFunction> f;
  if (kind == "coverage") {
    if (j.contains("random")) {
      sets = io::RandomCoverage(j.at("random"), seed);
    } else {
      const Json& js = io::Field(j, "sets", "coverage");
      if (!js.is_array()) throw InputError("coverage: sets must be an array");
      std::vector<std::vector<int>> members;
      int largest = -1;
      for (const Json& s : js) {
        members.push_back(io::Ints(s, "coverage set"));
        for (int e : members.back()) largest = std::max(largest, e);
      }
      Vector weights;
      if (j.contains("weights")) {
        weights = io::Reals(j.at("weights"), "coverage weights");
      } else {
        const std::size_t universe =
            j.contains("universe") ? io::Size(j.at("universe"), "universe")
                                   : static_cast<std::size_t>(largest + 1);
        weights.assign(universe, 1.0);
      }
      sets = SetFunction::Coverage(std::move(members), std::move(weights));
    }
    f = MultilinearExtension(*sets);
  } else if (kind == "table") {
    const auto m = static_cast<int>(io::Size(io::Field(j, "m", "table"), "m"));
    if (m > kMaxGroundSet) throw CapacityError("table: m must be <= 20");
    sets = SetFunction::FromTable(
        m, io::Reals(io::Field(j, "values", "table"), "table values"));
    f = MultilinearExtension(*sets);
  } else if (kind == "quadratic") {
    const Json& jh = io::Field(j, "H", "quadratic");
    if (!jh.is_array()) throw InputError("quadratic: H must be an array");
    Vector h;
    for (const Json& row : jh) {
      const Vector r = io::Reals(row, "quadratic H row");
      h.insert(h.end(), r.begin(), r.end());
    }
    f = MakeQuadratic(std::move(h), io::Reals(io::Field(j, "c", "quadratic"), "c"));
  } else if (kind == "concave_modular") {
    const std::size_t n = io::Size(io::Field(j, "n", "concave_modular"), "n");
    std::vector<Vector> weights;
    const Json& jw = io::Field(j, "weights", "concave_modular");
    if (!jw.is_array()) throw InputError("concave_modular: weights must be an array");
    for (const Json& w : jw) weights.push_back(io::Reals(w, "weights"));
    f = MakeConcaveModular(n, std::move(weights));
  } else {
    throw InputError("unknown instance kind '" + kind + "'");
  }
  if (j.contains("L")) {
    const double l = io::Real(j.at("L"), "L");
    if (l < 0.0) throw InputError("L must be nonnegative");
    f = f->WithSmoothness(l);
  }
  return Instance{*f, sets};
}

inline ConvexBody BodyFromJson(const Json& j) {
  const std::string kind = io::Kind(j, "constraint");
  if (kind == "box") {
    if (j.contains("upper")) {
      Vector upper = io::Reals(j.at("upper"), "box upper");
      if (j.contains("n")) {
        internal::CheckDimension(io::Size(j.at("n"), "n"), upper.size(), "box");
      }
      return ConvexBody::Box(std::move(upper));
    }
    return ConvexBody::UnitBox(io::Size(io::Field(j, "n", "box"), "n"));
  }
  if (kind == "cardinality") {
    return ConvexBody::Cardinality(
        io::Size(io::Field(j, "n", "cardinality"), "n"),
        static_cast<int>(io::Integer(io::Field(j, "k", "cardinality"), "k")));
  }
  if (kind == "partition") {
    const Json& jb = io::Field(j, "blocks", "partition");
    if (!jb.is_array()) throw InputError("partition: blocks must be an array");
    std::vector<std::vector<int>> blocks;
    std::size_t total = 0;
    for (const Json& b : jb) {
      blocks.push_back(io::Ints(b, "partition block"));
      total += blocks.back().size();
    }
    const std::size_t n = j.contains("n") ? io::Size(j.at("n"), "n") : total;
    return ConvexBody::Partition(
        n, std::move(blocks),
        io::Ints(io::Field(j, "capacities", "partition"), "capacities"));
  }
  if (kind == "packing") {
    const std::size_t n = io::Size(io::Field(j, "n", "packing"), "n");
    const Json& ja = io::Field(j, "A", "packing");
    Vector a;
    if (ja.is_array() && !ja.empty() && ja.front().is_array()) {
      for (const Json& row : ja) {
        const Vector r = io::Reals(row, "packing A row");
        a.insert(a.end(), r.begin(), r.end());
      }
    } else {
      a = io::Reals(ja, "packing A");
    }
    return ConvexBody::Packing(n, std::move(a),
                               io::Reals(io::Field(j, "b", "packing"), "b"));
  }
  throw InputError("unknown constraint kind '" + kind + "'");
}

inline ScheduleFn ScheduleFnFromJson(const Json& j) {
  const std::string kind = io::Kind(j, "schedule function");
  auto get = [&](const char* key, double fallback) {
    return j.contains(key) ? io::Real(j.at(key), key) : fallback;
  };
  if (kind == "exp") {
    return ScheduleFn::Exp(get("scale", 1.0), get("rate", 1.0), get("shift", 0.0));
  }
  if (kind == "poly" || kind == "polynomial") {
    return ScheduleFn::Polynomial(
        io::Reals(io::Field(j, "coeffs", "poly"), "coeffs"));
  }
  if (kind == "sqrt_affine") {
    return ScheduleFn::SqrtAffine(get("scale", 1.0), get("slope", 1.0),
                                  get("intercept", 1.0), get("shift", 0.0));
  }
  throw InputError("unknown schedule function kind '" + kind + "'");
}

inline Schedule ScheduleFromJson(const Json& j, Family family) {
  Schedule s;
  s.family = family;
  s.a = ScheduleFnFromJson(io::Field(j, "a", "schedule"));
  s.b = ScheduleFnFromJson(io::Field(j, "b", "schedule"));
  s.horizon = io::Real(io::Field(j, "T", "schedule"), "T");
  if (!(s.horizon > 0.0)) throw InputError("schedule: T must be positive");
  return s;
}

// 17 significant digits, enough to round-trip a double.
inline std::string FormatReal(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline constexpr const char* kTrajectoryHeader =
    "j,t,F,infnorm,rho,Gj,Bj_exact,Bj_bound,gronwall_margin,Ej";

// One row per state; step columns are empty on the final row, the Gronwall
// column is empty for the monotone family and Ej is empty without OPT.
inline std::string TrajectoryCsv(const Trajectory& traj,
                                 const Vector* energy = nullptr) {
  std::string out = kTrajectoryHeader;
  out += '\n';
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const StateRecord& r = traj.states[k];
    out += std::to_string(r.j) + ',' + FormatReal(r.t) + ',' +
           FormatReal(r.value) + ',' + FormatReal(r.inf_norm) + ',';
    if (r.step) {
      out += FormatReal(r.step->rho) + ',' + FormatReal(r.step->g_term) + ',' +
             FormatReal(r.step->b_exact) + ',' + FormatReal(r.step->b_bound);
    } else {
      out += ",,,";
    }
    out += ',';
    if (r.gronwall_margin) out += FormatReal(*r.gronwall_margin);
    out += ',';
    if (energy) out += FormatReal((*energy)[k]);
    out += '\n';
  }
  return out;
}

}  // namespace drsub

#endif  // DRSUB_IO_H_
