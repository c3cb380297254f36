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

// Desk-scale ground truth for OPT = max_{x in C} F(x).

#ifndef DRSUB_ORACLE_H_
#define DRSUB_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "drsub/errors.h"
#include "drsub/feasible.h"
#include "drsub/objective.h"

namespace drsub {

inline constexpr int kMaxBruteforceGroundSet = 16;
inline constexpr std::size_t kMaxGridDimension = 6;
inline constexpr int kMaxGridLevels = 4;
inline constexpr int kDefaultGridLevels = 3;
inline constexpr double kInitialMeshWidth = 1.0 / 8.0;

enum class OptMethod { kSetBruteforce, kVertexEnum, kGrid };

inline std::string OptMethodName(OptMethod m) {
  switch (m) {
    case OptMethod::kSetBruteforce: return "set-bruteforce";
    case OptMethod::kVertexEnum: return "vertex-enum";
    case OptMethod::kGrid: return "grid";
  }
  return "?";
}

struct OptCertificate {
  double opt = 0.0;
  Vector maximizer;
  std::vector<int> subset;  // set-bruteforce only
  OptMethod method = OptMethod::kGrid;
  double resolution = 0.0;  // final mesh width (grid only)
  // How far below the true optimum `opt` may lie; zero for exact methods.
  double slack = 0.0;
  std::vector<double> level_values;  // grid incumbent after each level
};

// Exact max of f over subsets whose indicator lies in C. For box, cardinality
// and partition bodies this is the integral optimum, a lower bound on the
// continuous optimum of the multilinear extension.
inline OptCertificate SetBruteforce(const SetFunction& f,
                                    const ConvexBody& body) {
  if (f.ground_size() > kMaxBruteforceGroundSet) {
    throw CapacityError("set brute force limited to m <= 16");
  }
  if (body.kind() == ConvexBody::Kind::kPacking) {
    throw InputError("set brute force needs a box, cardinality or partition "
                     "body");
  }
  internal::CheckDimension(static_cast<std::size_t>(f.ground_size()),
                           body.dimension(), "set brute force");
  const auto m = static_cast<std::size_t>(f.ground_size());
  OptCertificate cert;
  cert.method = OptMethod::kSetBruteforce;
  cert.maximizer.assign(m, 0.0);
  cert.opt = f(0);
  std::uint32_t best = 0;
  Vector indicator(m);
  for (std::uint32_t s = 1; s < f.subset_count(); ++s) {
    for (std::size_t i = 0; i < m; ++i) indicator[i] = (s >> i & 1u) ? 1 : 0;
    if (!body.Contains(indicator, 0.0)) continue;
    const double v = f(s);
    if (v > cert.opt) {
      cert.opt = v;
      best = s;
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (best >> i & 1u) {
      cert.maximizer[i] = 1.0;
      cert.subset.push_back(static_cast<int>(i));
    }
  }
  return cert;
}

namespace internal {

inline bool LexLess(const Vector& l, const Vector& r) {
  return std::lexicographical_compare(l.begin(), l.end(), r.begin(), r.end());
}

// Visits base + offsets * width for every offset vector in
// {-radius..radius}^n (radius < 0: the full mesh {0, w, ..., 1}^n).
template <typename Visit>
void ForEachMeshPoint(const Vector& base, double width, int radius,
                      Visit&& visit) {
  const std::size_t n = base.size();
  const int cells = static_cast<int>(std::lround(1.0 / width));
  const int lo = radius < 0 ? 0 : -radius;
  const int hi = radius < 0 ? cells : radius;
  std::vector<int> idx(n, lo);
  Vector p(n);
  while (true) {
    bool inside = true;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = radius < 0 ? idx[i] * width : base[i] + idx[i] * width;
      if (p[i] < -1e-15 || p[i] > 1.0 + 1e-15) inside = false;
      p[i] = std::clamp(p[i], 0.0, 1.0);
    }
    if (inside) visit(p);
    std::size_t k = 0;
    while (k < n && idx[k] == hi) idx[k++] = lo;
    if (k == n) break;
    ++idx[k];
  }
}

}  // namespace internal

// Coarse-to-fine mesh search. Level 1 scans the full mesh of width 1/8;
// each further level halves the width and rescans the 5^n neighbourhood of
// the incumbent. Ties go to the lexicographically smallest point.
//
// The slack bound sqrt(n) * (1/8) * G covers down-closed bodies: rounding a
// maximizer down to the level-1 mesh stays feasible and moves it by at most
// sqrt(n)/8 in 2-norm, and by antitonicity every partial derivative lies
// between its values at 0 and 1, so G = ||max(|grad F(0)|, |grad F(1)|)||_2
// bounds the gradient norm on the box.
inline OptCertificate GridSearch(const DrFunction& f, const ConvexBody& body,
                                 int levels = kDefaultGridLevels) {
  const std::size_t n = f.dimension();
  internal::CheckDimension(n, body.dimension(), "grid search");
  if (n > kMaxGridDimension) throw CapacityError("grid search limited to n <= 6");
  if (levels < 1 || levels > kMaxGridLevels) {
    throw InputError("grid search levels must be in [1, 4]");
  }
  OptCertificate cert;
  cert.method = OptMethod::kGrid;
  cert.maximizer.assign(n, 0.0);
  cert.opt = f.Value(cert.maximizer);

  auto consider = [&](const Vector& p) {
    if (!body.Contains(p, kMembershipTolerance)) return;
    const double v = f.Value(p);
    if (v > cert.opt || (v == cert.opt && internal::LexLess(p, cert.maximizer))) {
      cert.opt = v;
      cert.maximizer = p;
    }
  };

  double width = kInitialMeshWidth;
  internal::ForEachMeshPoint(cert.maximizer, width, -1, consider);
  cert.level_values.push_back(cert.opt);
  for (int level = 1; level < levels; ++level) {
    width *= 0.5;
    const Vector center = cert.maximizer;
    internal::ForEachMeshPoint(center, width, 2, consider);
    cert.level_values.push_back(cert.opt);
  }
  cert.resolution = width;

  const Vector g0 = f.Gradient(Vector(n, 0.0));
  const Vector g1 = f.Gradient(Vector(n, 1.0));
  double g_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double m = std::max(std::abs(g0[i]), std::abs(g1[i]));
    g_sq += m * m;
  }
  cert.slack = std::sqrt(static_cast<double>(n)) * kInitialMeshWidth *
               std::sqrt(g_sq);
  return cert;
}

struct CrossCheckReport {
  double discrepancy = 0.0;
  double allowed = 0.0;
  bool consistent = true;
};

inline CrossCheckReport CrossCheck(const OptCertificate& a,
                                   const OptCertificate& b) {
  CrossCheckReport r;
  r.discrepancy = std::abs(a.opt - b.opt);
  r.allowed = a.slack + b.slack;
  r.consistent = r.discrepancy <= r.allowed + 1e-12;
  return r;
}

}  // namespace drsub

#endif  // DRSUB_ORACLE_H_
