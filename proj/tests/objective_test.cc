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


#include "drsub/objective.h"

#include <cmath>
#include <random>

#include "drsub/instances.h"
#include "drsub/reference.h"
#include "gtest/gtest.h"

namespace drsub {
namespace {

TEST(MultilinearTest, TwoSetCoverageClosedForm) {
  const DrFunction f = MultilinearExtension(TwoSetCoverage());
  EXPECT_DOUBLE_EQ(f.Value(Vector{1.0, 1.0}), 3.0);
  EXPECT_DOUBLE_EQ(f.Value(Vector{0.0, 0.0}), 0.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double x1 = unit(rng), x2 = unit(rng);
    EXPECT_NEAR(f.Value(Vector{x1, x2}), 2 * x1 + 2 * x2 - x1 * x2, 1e-14);
  }
  EXPECT_TRUE(f.monotone());
}

TEST(MultilinearTest, GradientAtOrigin) {
  const DrFunction f = MultilinearExtension(TwoSetCoverage());
  const Vector g = f.Gradient(Vector{0.0, 0.0});
  EXPECT_DOUBLE_EQ(g[0], 2.0);
  EXPECT_DOUBLE_EQ(g[1], 2.0);
  const Vector h = f.Gradient(Vector{0.3, 0.7});
  EXPECT_NEAR(h[0], 1.3, 1e-14);
  EXPECT_NEAR(h[1], 1.7, 1e-14);
}

TEST(MultilinearTest, ZeroAndModularTables) {
  const DrFunction zero = MultilinearExtension(SetFunction::FromTable(3, Vector(8, 0.0)));
  EXPECT_EQ(zero.Value(Vector{0.2, 0.9, 0.4}), 0.0);
  for (double g : zero.Gradient(Vector{0.2, 0.9, 0.4})) EXPECT_EQ(g, 0.0);

  const Vector w = {0.5, 2.0, 1.25};
  Vector table(8);
  for (std::uint32_t s = 0; s < 8; ++s) {
    for (int i = 0; i < 3; ++i) table[s] += (s >> i & 1u) ? w[i] : 0.0;
  }
  const DrFunction mod = MultilinearExtension(SetFunction::FromTable(3, table));
  const Vector x = {0.1, 0.6, 0.35};
  EXPECT_NEAR(mod.Value(x), internal::Dot(w, x), 1e-14);
}

TEST(MultilinearTest, MatchesSubsetSumAndLattice) {
  for (const SetFunction& f : {DeskCoverage(), DeskCut(), TwoSetCoverage()}) {
    const DrFunction ext = MultilinearExtension(f);
    const auto m = static_cast<std::size_t>(f.ground_size());
    Vector x(m);
    for (std::uint32_t s = 0; s < f.subset_count(); ++s) {
      for (std::size_t i = 0; i < m; ++i) x[i] = (s >> i & 1u) ? 1.0 : 0.0;
      EXPECT_NEAR(ext.Value(x), f(s), 1e-12);
    }
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 20; ++k) {
      for (double& e : x) e = unit(rng);
      EXPECT_NEAR(ext.Value(x), reference::MultilinearSum(f, x), 1e-12);
    }
  }
}

TEST(MultilinearTest, SmoothnessIsGroundSquaredTimesMax) {
  const SetFunction f = DeskCoverage();
  EXPECT_DOUBLE_EQ(MultilinearExtension(f).smoothness(), 9.0 * f.MaxValue());
}

TEST(SetFunctionTest, RejectsBadInput) {
  EXPECT_THROW(SetFunction::FromTable(2, Vector(3, 0.0)), InputError);
  EXPECT_THROW(SetFunction::FromTable(21, Vector{}), CapacityError);
  EXPECT_THROW(SetFunction::Coverage({{0, 5}}, {1.0, 1.0}), InputError);
  EXPECT_THROW(SetFunction::Coverage({{0}}, {-1.0}), InputError);
}

TEST(SetFunctionTest, StructuralChecks) {
  EXPECT_TRUE(DeskCoverage().IsMonotone());
  EXPECT_TRUE(DeskCoverage().IsSubmodular());
  EXPECT_FALSE(DeskCut().IsMonotone());
  EXPECT_TRUE(DeskCut().IsSubmodular());
  // f(S) = |S|^2 is supermodular.
  const SetFunction sq = SetFunction::FromTable(2, {0.0, 1.0, 1.0, 4.0});
  EXPECT_FALSE(sq.IsSubmodular());
}

TEST(QuadraticTest, OffsetAndSmoothness) {
  const DrFunction f = DeskSeparableQuadratic();
  EXPECT_DOUBLE_EQ(f.Value(Vector{0.5, 0.25}), 0.8125);
  EXPECT_DOUBLE_EQ(f.Value(Vector{0.0, 1.0}), 0.0);
  EXPECT_NEAR(f.smoothness(), 2.0, 1e-12);
  EXPECT_FALSE(f.monotone());
  const Vector g = f.Gradient(Vector{0.0, 0.0});
  EXPECT_DOUBLE_EQ(g[0], 1.0);
  EXPECT_DOUBLE_EQ(g[1], 0.5);
}

TEST(QuadraticTest, MultilinearQuadraticIsMonotone) {
  const DrFunction f = MakeQuadratic({0.0, -1.0, -1.0, 0.0}, {1.0, 1.0});
  EXPECT_TRUE(f.monotone());
  EXPECT_DOUBLE_EQ(f.Value(Vector{0.0, 0.0}), 0.0);
  EXPECT_DOUBLE_EQ(f.Value(Vector{0.4, 0.5}), 0.4 + 0.5 - 0.2);
  EXPECT_NEAR(f.smoothness(), 1.0, 1e-12);
}

TEST(QuadraticTest, ModularHasZeroSmoothness) {
  const Vector w = {0.3, 1.1, 2.0};
  const DrFunction f = MakeModular(w);
  EXPECT_EQ(f.smoothness(), 0.0);
  const Vector x = {0.9, 0.2, 0.5};
  EXPECT_NEAR(f.Value(x), internal::Dot(w, x), 1e-15);
  EXPECT_EQ(f.Gradient(x), w);
  EXPECT_EQ(FiniteDiffGrad(f, x, 1e-4).size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(FiniteDiffGrad(f, x, 1e-4)[i], w[i], 1e-12);
  }
  const Vector y = {0.1, 0.8, 0.0};
  EXPECT_NEAR(CheckDrInequality(f, x, y), 0.0, 1e-14);
}

TEST(QuadraticTest, RejectsNonDrMatrices) {
  EXPECT_THROW(MakeQuadratic({1.0, 0.0, 0.0, -1.0}, {0.0, 0.0}), InputError);
  EXPECT_THROW(MakeQuadratic({0.0, -1.0, -2.0, 0.0}, {0.0, 0.0}), InputError);
  EXPECT_THROW(MakeQuadratic({0.0, 0.0, 0.0}, {0.0, 0.0}), InputError);
  EXPECT_THROW(MakeQuadratic(Vector(21 * 21, 0.0), Vector(21, 0.0)), CapacityError);
}

TEST(ConcaveModularTest, ClosedForms) {
  const DrFunction f = MakeConcaveModular(2, {{1.0, 0.0}});
  EXPECT_NEAR(f.Value(Vector{1.0, 0.7}), std::sqrt(1.001) - std::sqrt(0.001), 1e-15);
  EXPECT_NEAR(f.Value(Vector{1.0, 0.7}), 0.968877, 1e-6);
  const DrFunction g = MakeConcaveModular(2, {{4.0, 0.0}});
  const Vector grad = g.Gradient(Vector{1.0, 0.0});
  EXPECT_NEAR(grad[0], 4.0 / (2.0 * std::sqrt(4.001)), 1e-15);
  EXPECT_NEAR(grad[0], 0.99988, 1e-5);
  EXPECT_EQ(grad[1], 0.0);
  const DrFunction empty = MakeConcaveModular(3, {});
  EXPECT_EQ(empty.Value(Vector{0.5, 0.5, 0.5}), 0.0);
}

TEST(ConcaveModularTest, RejectsBadWeights) {
  EXPECT_THROW(MakeConcaveModular(2, {{-1.0, 1.0}}), InputError);
  EXPECT_THROW(MakeConcaveModular(2, {{0.0, 0.0}}), InputError);
  EXPECT_THROW(MakeConcaveModular(2, {{1.0}}), InputError);
}

TEST(DrFunctionTest, ClampsAndRejectsNan) {
  const DrFunction f = MultilinearExtension(TwoSetCoverage());
  EXPECT_DOUBLE_EQ(f.Value(Vector{1.5, -0.2}), f.Value(Vector{1.0, 0.0}));
  EXPECT_THROW(f.Value(Vector{NAN, 0.0}), InputError);
  EXPECT_THROW(f.Value(Vector{0.0}), InputError);
  EXPECT_DOUBLE_EQ(f.WithSmoothness(7.0).smoothness(), 7.0);
}

TEST(DrInequalityTest, SpotValues) {
  const DrFunction f = MultilinearExtension(TwoSetCoverage());
  EXPECT_DOUBLE_EQ(CheckDrInequality(f, Vector{0.0, 0.0}, Vector{1.0, 1.0}), 1.0);
  const Vector x = {0.3, 0.4};
  EXPECT_EQ(CheckDrInequality(f, x, x), 0.0);
}

// Property checks over every bundled instance.
TEST(ObjectivePropertyTest, DrGradientAndSmoothness) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const DeskInstance& inst : BundledInstances()) {
    SCOPED_TRACE(inst.name);
    const DrFunction& f = inst.function;
    const std::size_t n = f.dimension();
    for (int p = 0; p < 200; ++p) {
      Vector x(n), y(n);
      for (std::size_t i = 0; i < n; ++i) {
        x[i] = unit(rng);
        y[i] = unit(rng);
      }
      EXPECT_GE(f.Value(x), -1e-12);
      EXPECT_GE(CheckDrInequality(f, x, y), -1e-9);
      const Vector g = f.Gradient(x);
      const Vector fd = FiniteDiffGrad(f, x, 1e-4);
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_NEAR(fd[i], g[i], 1e-5 * (1.0 + std::abs(g[i])));
        if (f.monotone()) {
          EXPECT_GE(g[i], -1e-12);
        }
      }
      Vector lo(n), hi(n);
      for (std::size_t i = 0; i < n; ++i) {
        lo[i] = std::min(x[i], y[i]);
        hi[i] = std::max(x[i], y[i]);
      }
      const Vector glo = f.Gradient(lo), ghi = f.Gradient(hi);
      for (std::size_t i = 0; i < n; ++i) EXPECT_LE(ghi[i], glo[i] + 1e-12);
    }
    EXPECT_LE(EstimateSmoothness(f, 200, 9), f.smoothness() + 1e-9);
  }
}

}  // namespace
}  // namespace drsub
