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


#include "drsub/oracle.h"

#include "drsub/instances.h"
#include "gtest/gtest.h"

namespace drsub {
namespace {

TEST(SetBruteforceTest, SpotValues) {
  const SetFunction f = TwoSetCoverage();
  const OptCertificate k1 = SetBruteforce(f, ConvexBody::Cardinality(2, 1));
  EXPECT_EQ(k1.opt, 2.0);
  EXPECT_EQ(k1.subset, std::vector<int>{0});
  EXPECT_EQ(k1.maximizer, (Vector{1.0, 0.0}));
  EXPECT_EQ(k1.slack, 0.0);
  EXPECT_EQ(OptMethodName(k1.method), "set-bruteforce");

  EXPECT_EQ(SetBruteforce(f, ConvexBody::Cardinality(2, 2)).opt, 3.0);
  EXPECT_EQ(SetBruteforce(SetFunction::FromTable(3, Vector(8, 0.0)),
                          ConvexBody::UnitBox(3)).opt,
            0.0);
  const OptCertificate desk = SetBruteforce(DeskCoverage(), ConvexBody::Cardinality(3, 2));
  EXPECT_EQ(desk.opt, 6.0);
  EXPECT_EQ(desk.subset, (std::vector<int>{0, 2}));
}

TEST(SetBruteforceTest, Errors) {
  EXPECT_THROW(SetBruteforce(SetFunction::FromTable(17, Vector(1u << 17, 0.0)),
                             ConvexBody::UnitBox(17)),
               CapacityError);
  EXPECT_THROW(SetBruteforce(TwoSetCoverage(),
                             ConvexBody::Packing(2, {1.0, 1.0}, {1.0})),
               InputError);
}

TEST(GridSearchTest, SpotValues) {
  const OptCertificate q = GridSearch(DeskSeparableQuadratic(), ConvexBody::UnitBox(2));
  EXPECT_NEAR(q.opt, 0.8125, 1e-12);
  EXPECT_NEAR(q.maximizer[0], 0.5, 1e-12);
  EXPECT_NEAR(q.maximizer[1], 0.25, 1e-12);
  EXPECT_DOUBLE_EQ(q.resolution, 1.0 / 32.0);
  EXPECT_GT(q.slack, 0.0);

  const OptCertificate m = GridSearch(MakeModular({1.0, 0.5, 2.0}), ConvexBody::UnitBox(3));
  EXPECT_DOUBLE_EQ(m.opt, 3.5);
  EXPECT_EQ(m.maximizer, Vector(3, 1.0));

  const OptCertificate c = GridSearch(MultilinearExtension(TwoSetCoverage()),
                                      ConvexBody::Cardinality(2, 1));
  EXPECT_NEAR(c.opt, 2.0, 1e-12);
  // Ties go to the lexicographically smallest point.
  EXPECT_EQ(c.maximizer, (Vector{0.0, 1.0}));
}

TEST(GridSearchTest, Errors) {
  EXPECT_THROW(GridSearch(MakeModular(Vector(7, 1.0)), ConvexBody::UnitBox(7)),
               CapacityError);
  EXPECT_THROW(GridSearch(MakeModular({1.0}), ConvexBody::UnitBox(1), 5), InputError);
  EXPECT_THROW(GridSearch(MakeModular({1.0}), ConvexBody::UnitBox(1), 0), InputError);
}

TEST(GridSearchTest, RefinementIsMonotoneAndFeasible) {
  for (const DeskInstance& inst : BundledInstances()) {
    const OptCertificate two = GridSearch(inst.function, inst.body, 2);
    const OptCertificate four = GridSearch(inst.function, inst.body, 4);
    EXPECT_LE(two.opt, four.opt) << inst.name;
    for (std::size_t k = 1; k < four.level_values.size(); ++k) {
      EXPECT_LE(four.level_values[k - 1], four.level_values[k]);
    }
    EXPECT_TRUE(inst.body.Contains(four.maximizer)) << inst.name;
    EXPECT_GE(four.opt, inst.function.Value(Vector(inst.body.dimension(), 0.0)));
    EXPECT_GE(four.slack, 0.0);
  }
}

TEST(CrossCheckTest, Agreement) {
  for (const DeskInstance& inst : BundledInstances()) {
    if (!inst.sets || inst.body.kind() == ConvexBody::Kind::kPacking) continue;
    const OptCertificate exact = SetBruteforce(*inst.sets, inst.body);
    const OptCertificate grid = GridSearch(inst.function, inst.body);
    EXPECT_TRUE(CrossCheck(exact, grid).consistent) << inst.name;
    EXPECT_LE(exact.opt, grid.opt + grid.slack);
  }
  const OptCertificate a = GridSearch(DeskSeparableQuadratic(), ConvexBody::UnitBox(2));
  EXPECT_EQ(CrossCheck(a, a).discrepancy, 0.0);
  EXPECT_TRUE(CrossCheck(a, a).consistent);
}

}  // namespace
}  // namespace drsub
