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

// Dense-tableau primal simplex for small bounded LPs
//
//   maximize  c.x  subject to  A x <= b,  0 <= x <= u,
//
// with b >= 0 so that the origin is a basic feasible starting point. Bland's
// rule (lowest-index entering column, lowest-index leaving basic variable on
// ratio ties) prevents cycling and makes the result deterministic.

#ifndef DRSUB_SIMPLEX_H_
#define DRSUB_SIMPLEX_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "drsub/errors.h"

namespace drsub {

inline constexpr std::size_t kMaxSimplexSize = 64;

struct LpProblem {
  Vector objective;    // length n
  Vector constraints;  // row-major m x n
  Vector rhs;          // length m, nonnegative
  Vector upper;        // length n, in [0, 1]

  std::size_t variables() const { return objective.size(); }
  std::size_t rows() const { return rhs.size(); }
};

struct LpSolution {
  Vector x;
  double value = 0.0;
  int pivots = 0;
};

inline void ValidateLp(const LpProblem& p) {
  const std::size_t n = p.variables();
  const std::size_t m = p.rows();
  if (n > kMaxSimplexSize || m > kMaxSimplexSize) {
    throw CapacityError("simplex: at most 64 variables and 64 rows");
  }
  internal::CheckDimension(n * m, p.constraints.size(), "simplex A");
  internal::CheckDimension(n, p.upper.size(), "simplex upper bounds");
  internal::CheckFinite(p.objective, "simplex objective");
  internal::CheckFinite(p.constraints, "simplex A");
  internal::CheckFinite(p.rhs, "simplex b");
  for (double b : p.rhs) {
    if (b < 0.0) throw InputError("simplex: rhs must be nonnegative");
  }
  for (double u : p.upper) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw InputError("simplex: upper bounds must lie in [0, 1]");
    }
  }
}

inline LpSolution SimplexSolve(const LpProblem& p) {
  constexpr double kEps = 1e-12;
  ValidateLp(p);
  const std::size_t n = p.variables();
  const std::size_t m = p.rows();
  const std::size_t rows = m + n;         // packing rows, then bound rows
  const std::size_t cols = n + rows;      // originals, then slacks
  const std::size_t width = cols + 1;     // + rhs

  std::vector<double> t(rows * width, 0.0);
  auto at = [&](std::size_t r, std::size_t c) -> double& {
    return t[r * width + c];
  };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) at(r, j) = p.constraints[r * n + j];
    at(r, n + r) = 1.0;
    at(r, cols) = p.rhs[r];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = m + i;
    at(r, i) = 1.0;
    at(r, n + r) = 1.0;
    at(r, cols) = p.upper[i];
  }
  Vector reduced(cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) reduced[j] = p.objective[j];
  std::vector<std::size_t> basis(rows);
  for (std::size_t r = 0; r < rows; ++r) basis[r] = n + r;

  LpSolution out;
  const int max_pivots = 50000;
  while (true) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced[j] > kEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;

    std::size_t leave = rows;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows; ++r) {
      const double a = at(r, enter);
      if (a <= kEps) continue;
      const double ratio = std::max(at(r, cols), 0.0) / a;
      if (leave == rows || ratio < best_ratio - kEps) {
        best_ratio = ratio;
        leave = r;
      } else if (ratio <= best_ratio + kEps && basis[r] < basis[leave]) {
        best_ratio = std::min(best_ratio, ratio);
        leave = r;
      }
    }
    if (leave == rows) {
      throw InvariantError("simplex: unbounded direction in a bounded LP");
    }
    if (++out.pivots > max_pivots) {
      throw InvariantError("simplex: pivot limit exceeded");
    }

    const double pivot = at(leave, enter);
    for (std::size_t c = 0; c < width; ++c) at(leave, c) /= pivot;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == leave) continue;
      const double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c < width; ++c) at(r, c) -= factor * at(leave, c);
      at(r, enter) = 0.0;
    }
    const double factor = reduced[enter];
    for (std::size_t c = 0; c < cols; ++c) reduced[c] -= factor * at(leave, c);
    reduced[enter] = 0.0;
    basis[leave] = enter;
  }

  out.x.assign(n, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    if (basis[r] < n) {
      out.x[basis[r]] = std::clamp(at(r, cols), 0.0, p.upper[basis[r]]);
    }
  }
  out.value = internal::Dot(p.objective, out.x);
  return out;
}

}  // namespace drsub

#endif  // DRSUB_SIMPLEX_H_
