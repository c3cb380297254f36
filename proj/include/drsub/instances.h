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

// Bundled desk-scale instances used by the self-check and the acceptance
// suite.

#ifndef DRSUB_INSTANCES_H_
#define DRSUB_INSTANCES_H_

#include <optional>
#include <string>
#include <vector>

#include "drsub/feasible.h"
#include "drsub/objective.h"
#include "drsub/oracle.h"
#include "drsub/schedule.h"

namespace drsub {

struct DeskInstance {
  std::string name;
  DrFunction function;
  ConvexBody body;
  std::optional<SetFunction> sets;
  std::vector<Family> families;  // families whose guarantee applies
};

// Three weighted sets over five elements; f(S0 u S2) = 6 is the optimum
// under k = 2.
inline SetFunction DeskCoverage() {
  return SetFunction::Coverage({{0, 1, 2}, {2, 3}, {3, 4, 0}},
                               {1.0, 2.0, 1.5, 1.0, 0.5});
}

// S1 = {1, 2}, S2 = {2, 3} with unit weights: F(x) = 2 x1 + 2 x2 - x1 x2.
inline SetFunction TwoSetCoverage() {
  return SetFunction::Coverage({{0, 1}, {1, 2}}, {1.0, 1.0, 1.0});
}

// Weighted cut function of a 4-node graph; submodular and non-monotone.
inline SetFunction DeskCut() {
  struct Edge {
    int u, v;
    double w;
  };
  const std::vector<Edge> edges = {
      {0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}, {0, 3, 1.5}, {0, 2, 0.5}};
  Vector table(16, 0.0);
  for (std::uint32_t s = 0; s < 16; ++s) {
    for (const Edge& e : edges) {
      if (((s >> e.u) & 1u) != ((s >> e.v) & 1u)) table[s] += e.w;
    }
  }
  return SetFunction::FromTable(4, std::move(table));
}

// F = x.c + x^T H x / 2 + 1/2 with H = -2 I, c = (1, 0.5); maximum 0.8125
// at (0.5, 0.25).
inline DrFunction DeskSeparableQuadratic() {
  return MakeQuadratic({-2.0, 0.0, 0.0, -2.0}, {1.0, 0.5});
}

// Zero-diagonal (multilinear) non-monotone quadratic on three coordinates.
inline DrFunction DeskMultilinearQuadratic() {
  return MakeQuadratic({0.0, -1.0, -1.5,  //
                        -1.0, 0.0, -0.5,  //
                        -1.5, -0.5, 0.0},
                       {1.0, 0.8, 1.2});
}

inline std::vector<DeskInstance> BundledInstances() {
  using F = Family;
  std::vector<DeskInstance> out;
  const std::vector<F> all = {F::kMonotone, F::kMeasured, F::kGeneral,
                              F::kGeneralExp, F::kGeneralLinear};
  const std::vector<F> non_monotone = {F::kMeasured, F::kGeneral,
                                       F::kGeneralExp, F::kGeneralLinear};
  {
    SetFunction f = DeskCoverage();
    out.push_back({"coverage3-card2", MultilinearExtension(f),
                   ConvexBody::Cardinality(3, 2), f, all});
  }
  {
    SetFunction f = TwoSetCoverage();
    out.push_back({"coverage2-card1", MultilinearExtension(f),
                   ConvexBody::Cardinality(2, 1), f, all});
  }
  out.push_back({"quadratic-box", DeskSeparableQuadratic(),
                 ConvexBody::UnitBox(2), std::nullopt, non_monotone});
  out.push_back({"mlquadratic-card2", DeskMultilinearQuadratic(),
                 ConvexBody::Cardinality(3, 2), std::nullopt, non_monotone});
  out.push_back({"concave-partition",
                 MakeConcaveModular(3, {{1.0, 0.5, 0.0},
                                        {0.0, 1.0, 2.0},
                                        {0.3, 0.3, 0.3}}),
                 ConvexBody::Partition(3, {{0, 1}, {2}}, {1, 1}), std::nullopt,
                 all});
  {
    SetFunction f = DeskCut();
    out.push_back({"cut4-packing", MultilinearExtension(f),
                   ConvexBody::Packing(4, {1.0, 1.0, 1.0, 1.0,  //
                                           1.0, 0.0, 2.0, 0.0},
                                       {2.0, 1.5}),
                   f, non_monotone});
  }
  // x1 <= x2 makes the body not down-closed; only the plain-LMO rules apply.
  out.push_back({"mlquadratic-signed",
                 DeskMultilinearQuadratic(),
                 ConvexBody::Packing(3, {1.0, -1.0, 0.0,  //
                                         0.0, 1.0, 1.0},
                                     {0.0, 1.5}),
                 std::nullopt,
                 {F::kGeneral, F::kGeneralExp, F::kGeneralLinear}});
  return out;
}

// Exact subset enumeration where the body is integral, grid search
// otherwise.
inline OptCertificate DeskOpt(const DeskInstance& inst) {
  if (inst.sets && inst.body.kind() != ConvexBody::Kind::kPacking) {
    return SetBruteforce(*inst.sets, inst.body);
  }
  return GridSearch(inst.function, inst.body, kDefaultGridLevels);
}

}  // namespace drsub

#endif  // DRSUB_INSTANCES_H_
