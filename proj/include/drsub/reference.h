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

// Brute-force reference oracles. They share no code path with the
// production oracles they check and are meant for desk-sized inputs only.

#ifndef DRSUB_REFERENCE_H_
#define DRSUB_REFERENCE_H_

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "drsub/errors.h"
#include "drsub/feasible.h"
#include "drsub/objective.h"
#include "drsub/simplex.h"

namespace drsub::reference {

// sum_S f(S) prod_{i in S} x_i prod_{i notin S} (1 - x_i), term by term.
inline double MultilinearSum(const SetFunction& f, std::span<const double> x) {
  double total = 0.0;
  for (std::uint32_t s = 0; s < f.subset_count(); ++s) {
    double w = 1.0;
    for (int i = 0; i < f.ground_size(); ++i) {
      w *= (s >> i & 1u) ? x[i] : 1.0 - x[i];
    }
    total += w * f(s);
  }
  return total;
}

// Solves the square system M y = r by Gaussian elimination with partial
// pivoting; nullopt when singular.
inline std::optional<Vector> SolveSquare(std::vector<Vector> m, Vector r) {
  const std::size_t n = r.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t k = c + 1; k < n; ++k) {
      if (std::abs(m[k][c]) > std::abs(m[p][c])) p = k;
    }
    if (std::abs(m[p][c]) < 1e-12) return std::nullopt;
    std::swap(m[p], m[c]);
    std::swap(r[p], r[c]);
    for (std::size_t k = 0; k < n; ++k) {
      if (k == c) continue;
      const double factor = m[k][c] / m[c][c];
      if (factor == 0.0) continue;
      for (std::size_t j = c; j < n; ++j) m[k][j] -= factor * m[c][j];
      r[k] -= factor * r[c];
    }
  }
  Vector y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = r[i] / m[i][i];
  return y;
}

struct LpOptimum {
  double value = -std::numeric_limits<double>::infinity();
  Vector x;
  int basic_solutions = 0;
};

// Optimum of max c.x, A x <= b, 0 <= x <= u over every basic solution: each
// choice of n active constraints among the m rows and 2n bounds.
inline LpOptimum LpByBasicSolutions(const LpProblem& p, double tol = 1e-9) {
  const std::size_t n = p.variables();
  const std::size_t m = p.rows();
  struct Row {
    Vector coeffs;
    double rhs;
  };
  std::vector<Row> all;
  for (std::size_t r = 0; r < m; ++r) {
    all.push_back({Vector(p.constraints.begin() + r * n,
                          p.constraints.begin() + (r + 1) * n),
                   p.rhs[r]});
  }
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    all.push_back({e, p.upper[i]});
    e[i] = -1.0;
    all.push_back({e, 0.0});
  }
  auto feasible = [&](const Vector& x) {
    for (const Row& row : all) {
      if (internal::Dot(row.coeffs, x) > row.rhs + tol) return false;
    }
    return true;
  };
  LpOptimum best;
  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose =
      [&](std::size_t depth, std::size_t from) {
        if (depth == n) {
          std::vector<Vector> mat;
          Vector rhs;
          for (std::size_t k : pick) {
            mat.push_back(all[k].coeffs);
            rhs.push_back(all[k].rhs);
          }
          auto x = SolveSquare(mat, rhs);
          if (!x || !feasible(*x)) return;
          ++best.basic_solutions;
          const double v = internal::Dot(p.objective, *x);
          if (v > best.value) {
            best.value = v;
            best.x = *x;
          }
          return;
        }
        for (std::size_t k = from; k < all.size(); ++k) {
          pick[depth] = k;
          choose(depth + 1, k + 1);
        }
      };
  if (n == 0) {
    best.value = 0.0;
    return best;
  }
  choose(0, 0);
  return best;
}

// Candidate vertices of {0 <= v <= cap, sum_{i in B} v_i <= k} for one block:
// a subset at its caps plus at most one coordinate filling the leftover
// budget.
inline double BlockOptimumByEnumeration(std::span<const double> g,
                                        std::span<const double> cap,
                                        const std::vector<int>& block,
                                        double capacity) {
  const std::size_t size = block.size();
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1u << size); ++s) {
    double used = 0.0, value = 0.0;
    for (std::size_t k = 0; k < size; ++k) {
      if (s >> k & 1u) {
        used += cap[block[k]];
        value += g[block[k]] * cap[block[k]];
      }
    }
    if (used > capacity + 1e-12) continue;
    best = std::max(best, value);
    for (std::size_t k = 0; k < size; ++k) {
      if (s >> k & 1u) continue;
      const double extra = std::min(cap[block[k]], capacity - used);
      best = std::max(best, value + g[block[k]] * extra);
    }
  }
  return best;
}

// max <g, v> over {v in C, v <= cap} by enumeration, for every body kind.
inline double LmoValueByEnumeration(const ConvexBody& body,
                                    std::span<const double> g,
                                    std::span<const double> cap) {
  const std::size_t n = body.dimension();
  switch (body.kind()) {
    case ConvexBody::Kind::kBox: {
      double best = -std::numeric_limits<double>::infinity();
      for (std::uint32_t s = 0; s < (1u << n); ++s) {
        double v = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          if (s >> i & 1u) v += g[i] * std::min(cap[i], body.upper()[i]);
        }
        best = std::max(best, v);
      }
      return best;
    }
    case ConvexBody::Kind::kCardinality:
    case ConvexBody::Kind::kPartition: {
      double total = 0.0;
      for (std::size_t b = 0; b < body.blocks().size(); ++b) {
        total += BlockOptimumByEnumeration(g, cap, body.blocks()[b],
                                           body.capacities()[b]);
      }
      return total;
    }
    case ConvexBody::Kind::kPacking: {
      Vector upper(cap.begin(), cap.end());
      LpProblem lp{Vector(g.begin(), g.end()), body.packing_matrix(),
                   body.packing_rhs(), upper};
      return LpByBasicSolutions(lp).value;
    }
  }
  return 0.0;
}

// max ||x - y||^2 over pairs of 0/1 vectors with at most k ones.
inline double CardinalityDiameterByEnumeration(std::size_t n, int k) {
  std::vector<std::uint32_t> vertices;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    if (std::popcount(s) <= k) vertices.push_back(s);
  }
  int best = 0;
  for (std::uint32_t x : vertices) {
    for (std::uint32_t y : vertices) best = std::max(best, std::popcount(x ^ y));
  }
  return best;
}

}  // namespace drsub::reference

#endif  // DRSUB_REFERENCE_H_
