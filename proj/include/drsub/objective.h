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

// Nonnegative DR-submodular objectives on [0,1]^n with analytic gradients.
//
// Every objective is an immutable value exposing a value oracle, a gradient
// oracle, a 2-norm smoothness constant L and a monotone flag. Inputs are
// clamped to the unit box before evaluation so that round-off from the
// discretized solver never leaves the domain.

#ifndef DRSUB_OBJECTIVE_H_
#define DRSUB_OBJECTIVE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "drsub/errors.h"

namespace drsub {

inline constexpr double kDomainTolerance = 1e-12;
inline constexpr int kMaxGroundSet = 20;
inline constexpr int kMaxVertexEnumeration = 20;
inline constexpr double kConcaveFloor = 1e-3;

class DrFunction {
 public:
  class Model {
   public:
    virtual ~Model() = default;
    virtual double Value(std::span<const double> x) const = 0;
    virtual void Gradient(std::span<const double> x,
                          std::span<double> out) const = 0;
  };

  DrFunction(std::size_t dimension, std::shared_ptr<const Model> model,
             double smoothness, bool monotone, std::string kind)
      : dimension_(dimension),
        model_(std::move(model)),
        smoothness_(smoothness),
        monotone_(monotone),
        kind_(std::move(kind)) {}

  std::size_t dimension() const { return dimension_; }
  double smoothness() const { return smoothness_; }
  bool monotone() const { return monotone_; }
  const std::string& kind() const { return kind_; }

  // Returns a copy with a different smoothness constant (e.g. an empirical
  // estimate replacing an analytic upper bound).
  DrFunction WithSmoothness(double smoothness) const {
    DrFunction copy = *this;
    copy.smoothness_ = smoothness;
    return copy;
  }

  double Value(std::span<const double> x) const {
    const Vector z = Clamp(x);
    return model_->Value(z);
  }

  Vector Gradient(std::span<const double> x) const {
    const Vector z = Clamp(x);
    Vector g(dimension_, 0.0);
    model_->Gradient(z, g);
    return g;
  }

 private:
  Vector Clamp(std::span<const double> x) const {
    internal::CheckDimension(dimension_, x.size(), "objective");
    Vector z(x.begin(), x.end());
    for (double& e : z) {
      if (std::isnan(e)) throw InputError("objective: NaN coordinate");
      e = std::clamp(e, 0.0, 1.0);
    }
    return z;
  }

  std::size_t dimension_;
  std::shared_ptr<const Model> model_;
  double smoothness_;
  bool monotone_;
  std::string kind_;
};

// A set function on a ground set of at most 20 elements, either tabulated by
// bitmask or given as a weighted coverage function.
class SetFunction {
 public:
  static SetFunction FromTable(int ground_size, Vector values) {
    CheckGroundSize(ground_size);
    if (values.size() != (std::size_t{1} << ground_size)) {
      throw InputError("set function table must have 2^m entries");
    }
    internal::CheckFinite(values, "set function table");
    for (double v : values) {
      if (v < 0.0) throw InputError("set function values must be nonnegative");
    }
    SetFunction f;
    f.ground_size_ = ground_size;
    f.table_ = std::move(values);
    return f;
  }

  // sets[i] lists the universe elements covered by ground element i.
  static SetFunction Coverage(std::vector<std::vector<int>> sets,
                              Vector element_weights) {
    CheckGroundSize(static_cast<int>(sets.size()));
    internal::CheckFinite(element_weights, "coverage weights");
    for (double w : element_weights) {
      if (w < 0.0) throw InputError("coverage weights must be nonnegative");
    }
    for (auto& s : sets) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      for (int e : s) {
        if (e < 0 || e >= static_cast<int>(element_weights.size())) {
          throw InputError("coverage set references unknown element " +
                           std::to_string(e));
        }
      }
    }
    SetFunction f;
    f.ground_size_ = static_cast<int>(sets.size());
    f.sets_ = std::move(sets);
    f.weights_ = std::move(element_weights);
    return f;
  }

  int ground_size() const { return ground_size_; }
  bool is_coverage() const { return table_.empty(); }
  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const Vector& element_weights() const { return weights_; }

  double operator()(std::uint32_t mask) const {
    if (!is_coverage()) return table_[mask];
    std::vector<char> covered(weights_.size(), 0);
    double total = 0.0;
    for (int i = 0; i < ground_size_; ++i) {
      if (!(mask >> i & 1u)) continue;
      for (int e : sets_[i]) {
        if (!covered[e]) {
          covered[e] = 1;
          total += weights_[e];
        }
      }
    }
    return total;
  }

  double MaxValue() const {
    double best = 0.0;
    for (std::uint32_t s = 0; s < subset_count(); ++s) {
      best = std::max(best, (*this)(s));
    }
    return best;
  }

  bool IsMonotone(double tol = 1e-12) const {
    for (std::uint32_t s = 0; s < subset_count(); ++s) {
      for (int i = 0; i < ground_size_; ++i) {
        if (s >> i & 1u) continue;
        if ((*this)(s | (1u << i)) < (*this)(s) - tol) return false;
      }
    }
    return true;
  }

  // Exhaustive diminishing-returns check; quadratic in 2^m, keep m small.
  bool IsSubmodular(double tol = 1e-12) const {
    if (ground_size_ > 12) {
      throw CapacityError("exhaustive submodularity check limited to m <= 12");
    }
    for (std::uint32_t b = 0; b < subset_count(); ++b) {
      // Enumerate subsets a of b.
      for (std::uint32_t a = b;; a = (a - 1) & b) {
        for (int i = 0; i < ground_size_; ++i) {
          if (b >> i & 1u) continue;
          const double gain_a = (*this)(a | (1u << i)) - (*this)(a);
          const double gain_b = (*this)(b | (1u << i)) - (*this)(b);
          if (gain_a < gain_b - tol) return false;
        }
        if (a == 0) break;
      }
    }
    return true;
  }

  std::uint32_t subset_count() const { return 1u << ground_size_; }

 private:
  static void CheckGroundSize(int m) {
    if (m < 0) throw InputError("negative ground set size");
    if (m > kMaxGroundSet) {
      throw CapacityError("ground set larger than " +
                          std::to_string(kMaxGroundSet));
    }
  }

  int ground_size_ = 0;
  Vector table_;
  std::vector<std::vector<int>> sets_;
  Vector weights_;
};

namespace internal {

class TableMultilinear final : public DrFunction::Model {
 public:
  explicit TableMultilinear(SetFunction f) : f_(std::move(f)) {
    values_.resize(f_.subset_count());
    for (std::uint32_t s = 0; s < f_.subset_count(); ++s) values_[s] = f_(s);
  }

  double Value(std::span<const double> x) const override {
    return Contract(x, -1, 0.0);
  }

  void Gradient(std::span<const double> x,
                std::span<double> out) const override {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const int c = static_cast<int>(i);
      out[i] = Contract(x, c, 1.0) - Contract(x, c, 0.0);
    }
  }

 private:
  // Folds the table one coordinate at a time; coordinate `pinned` uses the
  // value `pin` instead of x.
  double Contract(std::span<const double> x, int pinned, double pin) const {
    Vector t = values_;
    std::size_t len = t.size();
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double p = static_cast<int>(i) == pinned ? pin : x[i];
      len >>= 1;
      // After i folds, index bit 0 of the remaining table is element i.
      for (std::size_t k = 0; k < len; ++k) {
        t[k] = (1.0 - p) * t[2 * k] + p * t[2 * k + 1];
      }
    }
    return t[0];
  }

  SetFunction f_;
  Vector values_;
};

class CoverageMultilinear final : public DrFunction::Model {
 public:
  explicit CoverageMultilinear(const SetFunction& f)
      : weights_(f.element_weights()), covering_(f.element_weights().size()) {
    for (int i = 0; i < f.ground_size(); ++i) {
      for (int e : f.sets()[i]) covering_[e].push_back(i);
    }
  }

  double Value(std::span<const double> x) const override {
    double total = 0.0;
    for (std::size_t e = 0; e < weights_.size(); ++e) {
      double miss = 1.0;
      for (int i : covering_[e]) miss *= 1.0 - x[i];
      total += weights_[e] * (1.0 - miss);
    }
    return total;
  }

  void Gradient(std::span<const double> x,
                std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t e = 0; e < weights_.size(); ++e) {
      for (int i : covering_[e]) {
        double miss = 1.0;
        for (int k : covering_[e]) {
          if (k != i) miss *= 1.0 - x[k];
        }
        out[i] += weights_[e] * miss;
      }
    }
  }

 private:
  Vector weights_;
  std::vector<std::vector<int>> covering_;
};

class Quadratic final : public DrFunction::Model {
 public:
  Quadratic(Vector hessian, Vector linear, double offset)
      : h_(std::move(hessian)), c_(std::move(linear)), d_(offset) {}

  double Value(std::span<const double> x) const override {
    return Raw(h_, c_, x) + d_;
  }

  void Gradient(std::span<const double> x,
                std::span<double> out) const override {
    const std::size_t n = c_.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = c_[i];
      for (std::size_t k = 0; k < n; ++k) s += h_[i * n + k] * x[k];
      out[i] = s;
    }
  }

  static double Raw(std::span<const double> h, std::span<const double> c,
                    std::span<const double> x) {
    const std::size_t n = c.size();
    double quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) quad += x[i] * h[i * n + k] * x[k];
    }
    return Dot(c, x) + 0.5 * quad;
  }

 private:
  Vector h_;
  Vector c_;
  double d_;
};

class ConcaveOfModular final : public DrFunction::Model {
 public:
  explicit ConcaveOfModular(std::vector<Vector> weights)
      : weights_(std::move(weights)) {}

  double Value(std::span<const double> x) const override {
    const double base = std::sqrt(kConcaveFloor);
    double total = 0.0;
    for (const Vector& w : weights_) {
      total += std::sqrt(kConcaveFloor + Dot(w, x)) - base;
    }
    return total;
  }

  void Gradient(std::span<const double> x,
                std::span<double> out) const override {
    std::fill(out.begin(), out.end(), 0.0);
    for (const Vector& w : weights_) {
      const double scale = 0.5 / std::sqrt(kConcaveFloor + Dot(w, x));
      for (std::size_t i = 0; i < w.size(); ++i) out[i] += scale * w[i];
    }
  }

 private:
  std::vector<Vector> weights_;
};

// Largest singular value of a symmetric matrix by power iteration on H^T H.
// For entrywise nonpositive H the Perron vector of -H is nonnegative, so the
// all-ones start is never orthogonal to it.
inline double SpectralNorm(std::span<const double> h, std::size_t n,
                           double rel_tol = 1e-10, int max_iters = 100000) {
  if (n == 0) return 0.0;
  Vector v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  Vector hv(n), hhv(n);
  double lambda = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += h[i * n + k] * v[k];
      hv[i] = s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += h[k * n + i] * hv[k];
      hhv[i] = s;
    }
    const double norm = std::sqrt(SquaredNorm(hhv));
    if (norm == 0.0) return 0.0;
    for (std::size_t i = 0; i < n; ++i) v[i] = hhv[i] / norm;
    const bool done = std::abs(norm - lambda) <= rel_tol * norm;
    lambda = norm;
    if (done) break;
  }
  return std::sqrt(lambda);
}

}  // namespace internal

// Multilinear extension F(x) = sum_S f(S) prod_{i in S} x_i prod_{i notin S}
// (1 - x_i). Coverage functions use the closed form
// sum_e w_e (1 - prod_{i covers e} (1 - x_i)); tables fold the 2^m entries.
// The smoothness constant is m^2 * max_S f(S).
inline DrFunction MultilinearExtension(const SetFunction& f) {
  const auto m = static_cast<std::size_t>(f.ground_size());
  std::shared_ptr<const DrFunction::Model> model;
  if (f.is_coverage()) {
    model = std::make_shared<internal::CoverageMultilinear>(f);
  } else {
    model = std::make_shared<internal::TableMultilinear>(f);
  }
  const double smoothness = static_cast<double>(m * m) * f.MaxValue();
  return DrFunction(m, std::move(model), smoothness, f.IsMonotone(),
                    f.is_coverage() ? "coverage" : "table");
}

// F(x) = c.x + x^T H x / 2 + d where d lifts the box minimum (attained at a
// vertex by coordinate-wise concavity) to zero. `hessian` is row-major n x n.
inline DrFunction MakeQuadratic(Vector hessian, Vector linear) {
  const std::size_t n = linear.size();
  if (hessian.size() != n * n) {
    throw InputError("quadratic: H must be n x n with n = len(c)");
  }
  if (n > kMaxVertexEnumeration) {
    throw CapacityError("quadratic: vertex enumeration limited to n <= 20");
  }
  internal::CheckFinite(hessian, "quadratic H");
  internal::CheckFinite(linear, "quadratic c");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (hessian[i * n + k] > 0.0) {
        throw InputError("quadratic: H must be entrywise nonpositive");
      }
      if (hessian[i * n + k] != hessian[k * n + i]) {
        throw InputError("quadratic: H must be symmetric");
      }
    }
  }
  double lowest = 0.0;
  Vector vertex(n, 0.0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) vertex[i] = (mask >> i & 1u) ? 1 : 0;
    lowest = std::min(lowest, internal::Quadratic::Raw(hessian, linear, vertex));
  }
  bool monotone = true;
  for (std::size_t i = 0; i < n; ++i) {
    double g = linear[i];
    for (std::size_t k = 0; k < n; ++k) g += hessian[i * n + k];
    if (g < 0.0) monotone = false;
  }
  const double smoothness = internal::SpectralNorm(hessian, n);
  auto model = std::make_shared<internal::Quadratic>(std::move(hessian),
                                                     std::move(linear), -lowest);
  return DrFunction(n, std::move(model), smoothness, monotone, "quadratic");
}

inline DrFunction MakeModular(Vector weights) {
  const std::size_t n = weights.size();
  return MakeQuadratic(Vector(n * n, 0.0), std::move(weights));
}

// F(x) = sum_k sqrt(eps + w_k.x) - sqrt(eps), eps = 1e-3.
inline DrFunction MakeConcaveModular(std::size_t dimension,
                                     std::vector<Vector> weights) {
  double smoothness = 0.0;
  for (const Vector& w : weights) {
    internal::CheckDimension(dimension, w.size(), "concave_modular weight");
    internal::CheckFinite(w, "concave_modular weight");
    bool nonzero = false;
    for (double e : w) {
      if (e < 0.0) throw InputError("concave_modular: negative weight");
      nonzero = nonzero || e > 0.0;
    }
    if (!nonzero) throw InputError("concave_modular: zero weight vector");
    smoothness += internal::SquaredNorm(w);
  }
  smoothness /= 4.0 * std::pow(kConcaveFloor, 1.5);
  auto model = std::make_shared<internal::ConcaveOfModular>(std::move(weights));
  return DrFunction(dimension, std::move(model), smoothness, true,
                    "concave_modular");
}

// <grad F(x), y - x> - [F(x v y) + F(x ^ y) - 2 F(x)]; nonnegative for
// DR-submodular F.
inline double CheckDrInequality(const DrFunction& f, std::span<const double> x,
                                std::span<const double> y) {
  internal::CheckDimension(f.dimension(), x.size(), "dr inequality x");
  internal::CheckDimension(f.dimension(), y.size(), "dr inequality y");
  const std::size_t n = x.size();
  Vector join(n), meet(n), diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    join[i] = std::max(x[i], y[i]);
    meet[i] = std::min(x[i], y[i]);
    diff[i] = y[i] - x[i];
  }
  const double fx = f.Value(x);
  const double lhs = internal::Dot(f.Gradient(x), diff);
  return lhs - (f.Value(join) + f.Value(meet) - 2.0 * fx);
}

// Central differences on stencil points clamped into the box; degrades to a
// one-sided quotient at the boundary.
inline Vector FiniteDiffGrad(const DrFunction& f, std::span<const double> x,
                             double h) {
  if (!(h > 0.0)) throw InputError("finite difference step must be positive");
  internal::CheckDimension(f.dimension(), x.size(), "finite difference");
  Vector g(x.size());
  Vector p(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double hi = std::min(x[i] + h, 1.0);
    const double lo = std::max(x[i] - h, 0.0);
    p[i] = hi;
    const double f_hi = f.Value(p);
    p[i] = lo;
    const double f_lo = f.Value(p);
    p[i] = x[i];
    g[i] = (f_hi - f_lo) / (hi - lo);
  }
  return g;
}

// Largest observed ||grad F(y) - grad F(x)|| / ||y - x|| over random pairs.
inline double EstimateSmoothness(const DrFunction& f, int pairs,
                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = f.dimension();
  Vector x(n), y(n);
  double best = 0.0;
  for (int p = 0; p < pairs; ++p) {
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = unit(rng);
      y[i] = unit(rng);
    }
    const double dist = std::sqrt(internal::SquaredDistance(x, y));
    if (dist == 0.0) continue;
    const double num =
        std::sqrt(internal::SquaredDistance(f.Gradient(x), f.Gradient(y)));
    best = std::max(best, num / dist);
  }
  return best;
}

}  // namespace drsub

#endif  // DRSUB_OBJECTIVE_H_
