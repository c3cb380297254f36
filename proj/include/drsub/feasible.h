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

// Feasible convex bodies C with 0 in C and C inside [0,1]^n, each carrying
// the membership test, the linear maximization oracle (LMO) and the masked
// LMO over {v in C : v <= cap}.
//
// Ties in the LMOs go to the lowest coordinate index, and coordinates with a
// nonpositive gradient entry stay at zero.

#ifndef DRSUB_FEASIBLE_H_
#define DRSUB_FEASIBLE_H_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drsub/errors.h"
#include "drsub/simplex.h"

namespace drsub {

inline constexpr double kMembershipTolerance = 1e-9;

class ConvexBody {
 public:
  enum class Kind { kBox, kCardinality, kPartition, kPacking };

  static ConvexBody Box(Vector upper) {
    internal::CheckFinite(upper, "box upper bounds");
    for (double u : upper) {
      if (!(u >= 0.0 && u <= 1.0)) {
        throw InputError("box: upper bounds must lie in [0, 1]");
      }
    }
    ConvexBody c(Kind::kBox, upper.size());
    c.upper_ = std::move(upper);
    return c;
  }

  static ConvexBody UnitBox(std::size_t n) { return Box(Vector(n, 1.0)); }

  // {x in [0,1]^n : sum x <= k}.
  static ConvexBody Cardinality(std::size_t n, int k) {
    if (k < 0) throw InputError("cardinality: k must be nonnegative");
    ConvexBody c(Kind::kCardinality, n);
    c.blocks_.emplace_back(n);
    std::iota(c.blocks_[0].begin(), c.blocks_[0].end(), 0);
    c.capacities_.push_back(k);
    return c;
  }

  // {x in [0,1]^n : sum_{i in B} x_i <= k_B for every block B}; the blocks
  // must partition {0, ..., n-1}.
  static ConvexBody Partition(std::size_t n, std::vector<std::vector<int>> blocks,
                              std::vector<int> capacities) {
    if (blocks.size() != capacities.size()) {
      throw InputError("partition: one capacity per block required");
    }
    std::vector<int> seen(n, 0);
    for (const auto& b : blocks) {
      for (int i : b) {
        if (i < 0 || static_cast<std::size_t>(i) >= n) {
          throw InputError("partition: index out of range");
        }
        ++seen[i];
      }
    }
    for (int s : seen) {
      if (s != 1) {
        throw InputError("partition: every coordinate must be in one block");
      }
    }
    for (int k : capacities) {
      if (k < 0) throw InputError("partition: capacities must be nonnegative");
    }
    ConvexBody c(Kind::kPartition, n);
    c.blocks_ = std::move(blocks);
    for (auto& b : c.blocks_) std::sort(b.begin(), b.end());
    c.capacities_ = std::move(capacities);
    return c;
  }

  // {x in [0,1]^n : A x <= b}, A row-major with len(b) rows. b >= 0 keeps the
  // origin feasible; the body is down-closed exactly when A >= 0.
  static ConvexBody Packing(std::size_t n, Vector a, Vector b) {
    internal::CheckDimension(n * b.size(), a.size(), "packing A");
    internal::CheckFinite(a, "packing A");
    internal::CheckFinite(b, "packing b");
    for (double e : b) {
      if (e < 0.0) throw InputError("packing: b must be nonnegative");
    }
    if (n > kMaxSimplexSize || b.size() > kMaxSimplexSize) {
      throw CapacityError("packing: at most 64 variables and 64 rows");
    }
    ConvexBody c(Kind::kPacking, n);
    c.down_closed_ =
        std::all_of(a.begin(), a.end(), [](double e) { return e >= 0.0; });
    c.a_ = std::move(a);
    c.b_ = std::move(b);
    return c;
  }

  Kind kind() const { return kind_; }
  std::size_t dimension() const { return n_; }
  bool down_closed() const { return down_closed_; }
  const Vector& upper() const { return upper_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  const std::vector<int>& capacities() const { return capacities_; }
  const Vector& packing_matrix() const { return a_; }
  const Vector& packing_rhs() const { return b_; }

  std::string Describe() const {
    switch (kind_) {
      case Kind::kBox:
        return "box(n=" + std::to_string(n_) + ")";
      case Kind::kCardinality:
        return "cardinality(n=" + std::to_string(n_) +
               ", k=" + std::to_string(capacities_[0]) + ")";
      case Kind::kPartition:
        return "partition(n=" + std::to_string(n_) +
               ", blocks=" + std::to_string(blocks_.size()) + ")";
      case Kind::kPacking:
        return "packing(n=" + std::to_string(n_) +
               ", m=" + std::to_string(b_.size()) + ")";
    }
    return "?";
  }

  bool Contains(std::span<const double> x,
                double tol = kMembershipTolerance) const {
    internal::CheckDimension(n_, x.size(), "contains");
    if (tol < 0.0) throw InputError("contains: negative tolerance");
    for (std::size_t i = 0; i < n_; ++i) {
      if (!(x[i] >= -tol && x[i] <= UpperBound(i) + tol)) return false;
    }
    switch (kind_) {
      case Kind::kBox:
        return true;
      case Kind::kCardinality:
      case Kind::kPartition:
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
          double s = 0.0;
          for (int i : blocks_[b]) s += x[i];
          if (s > capacities_[b] + tol) return false;
        }
        return true;
      case Kind::kPacking:
        for (std::size_t r = 0; r < b_.size(); ++r) {
          double s = 0.0;
          for (std::size_t j = 0; j < n_; ++j) s += a_[r * n_ + j] * x[j];
          if (s > b_[r] + tol) return false;
        }
        return true;
    }
    return false;
  }

  // argmax_{v in C} <g, v>.
  Vector Lmo(std::span<const double> g) const {
    internal::CheckDimension(n_, g.size(), "lmo");
    internal::CheckFinite(g, "lmo gradient");
    return Solve(g, Vector(n_, 1.0));
  }

  // argmax_{v in C, v <= cap} <g, v>.
  Vector MaskedLmo(std::span<const double> g,
                   std::span<const double> cap) const {
    internal::CheckDimension(n_, g.size(), "masked lmo");
    internal::CheckDimension(n_, cap.size(), "masked lmo cap");
    internal::CheckFinite(g, "masked lmo gradient");
    internal::CheckFinite(cap, "masked lmo cap");
    Vector clipped(cap.begin(), cap.end());
    for (double& c : clipped) c = std::clamp(c, 0.0, 1.0);
    return Solve(g, clipped);
  }

  // D = max_{x,y in C} ||x - y||^2. Exact for box, cardinality and partition
  // bodies (whose vertices are 0/1 vectors under integer capacities); packing
  // bodies report the box bound n.
  double Diameter() const {
    switch (kind_) {
      case Kind::kBox:
        return internal::SquaredNorm(upper_);
      case Kind::kCardinality:
      case Kind::kPartition: {
        double d = 0.0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
          const double size = static_cast<double>(blocks_[b].size());
          d += std::min(size, 2.0 * capacities_[b]);
        }
        return d;
      }
      case Kind::kPacking:
        return static_cast<double>(n_);
    }
    return static_cast<double>(n_);
  }

 private:
  ConvexBody(Kind kind, std::size_t n) : kind_(kind), n_(n) {}

  double UpperBound(std::size_t i) const {
    return kind_ == Kind::kBox ? upper_[i] : 1.0;
  }

  Vector Solve(std::span<const double> g, const Vector& cap) const {
    Vector v(n_, 0.0);
    switch (kind_) {
      case Kind::kBox:
        for (std::size_t i = 0; i < n_; ++i) {
          if (g[i] > 0.0) v[i] = std::min(upper_[i], cap[i]);
        }
        return v;
      case Kind::kCardinality:
      case Kind::kPartition:
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
          FillGreedy(g, cap, blocks_[b], capacities_[b], v);
        }
        return v;
      case Kind::kPacking: {
        LpProblem lp{Vector(g.begin(), g.end()), a_, b_, cap};
        return SimplexSolve(lp).x;
      }
    }
    return v;
  }

  // Fractional greedy: visit positive-gradient coordinates by decreasing
  // gradient (lowest index on ties) and fill each to its cap until the
  // block budget runs out.
  static void FillGreedy(std::span<const double> g, const Vector& cap,
                         const std::vector<int>& block, int capacity,
                         Vector& v) {
    std::vector<int> order;
    for (int i : block) {
      if (g[i] > 0.0) order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](int l, int r) { return g[l] > g[r]; });
    double budget = capacity;
    for (int i : order) {
      if (budget <= 0.0) break;
      v[i] = std::min(cap[i], budget);
      budget -= v[i];
    }
  }

  Kind kind_;
  std::size_t n_;
  bool down_closed_ = true;
  Vector upper_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> capacities_;
  Vector a_;
  Vector b_;
};

}  // namespace drsub

#endif  // DRSUB_FEASIBLE_H_
