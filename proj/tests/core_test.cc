// Copyright 2026 The smoothpd Authors
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
#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"
#include "smoothpd/set_function.h"
#include "test_util.h"

namespace smoothpd {
namespace {

using testing::Gen;
using testing::Power;
using testing::SingleUseRequest;

GeneralInstance OneResource(CostPtr f, int requests) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), std::move(f)});
  for (int i = 0; i < requests; ++i) {
    inst.requests.push_back(SingleUseRequest(i, {0}));
  }
  return inst;
}

TEST(TotalCost, EmptyInstanceIsZero) {
  GeneralInstance inst;
  EXPECT_EQ(TotalCost(inst, {}), 0.0);
}

TEST(TotalCost, LinearCountsRequests) {
  const auto inst = OneResource(Power(1), 2);
  EXPECT_DOUBLE_EQ(TotalCost(inst, {0, 0}), 2.0);
}

TEST(TotalCost, SquareOfTwoRequests) {
  const auto inst = OneResource(Power(2), 2);
  EXPECT_DOUBLE_EQ(TotalCost(inst, {0, 0}), 4.0);
}

TEST(TotalCost, RejectsBadAssignments) {
  const auto inst = OneResource(Power(1), 2);
  EXPECT_THROW(TotalCost(inst, {0}), InputError);
  EXPECT_THROW(TotalCost(inst, {0, 1}), InputError);
  EXPECT_THROW(TotalCost(inst, {0, -1}), InputError);
}

TEST(TotalCost, WeightsEnterTheLoad) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  inst.requests.push_back(SingleUseRequest(0, {0}, 2.0));
  inst.requests.push_back(SingleUseRequest(1, {0}, 3.0));
  EXPECT_DOUBLE_EQ(TotalCost(inst, {0, 0}), 25.0);
}

TEST(Validate, CatchesMalformedInstances) {
  auto inst = OneResource(Power(1), 1);
  inst.Validate();

  auto bad_id = inst;
  bad_id.requests[0].id = RequestId(3);
  EXPECT_THROW(bad_id.Validate(), InputError);

  auto unknown = inst;
  unknown.requests[0].strategies[0] = Strategy({ResourceUse{ResourceId(5), 1.0}});
  EXPECT_THROW(unknown.Validate(), InputError);

  auto negative = inst;
  negative.requests[0].strategies[0] = Strategy({ResourceUse{ResourceId(0), -1.0}});
  EXPECT_THROW(negative.Validate(), InputError);

  auto empty = inst;
  empty.requests[0].strategies.clear();
  EXPECT_THROW(empty.Validate(), InputError);

  // Two strategies disagreeing on the contribution to the same resource.
  auto inconsistent = inst;
  inconsistent.requests[0].strategies.push_back(
      Strategy({ResourceUse{ResourceId(0), 2.0}}));
  EXPECT_THROW(inconsistent.Validate(), InputError);
}

TEST(Strategy, SortsAndLooksUp) {
  const Strategy s({ResourceUse{ResourceId(3), 2.0}, ResourceUse{ResourceId(1), 5.0}});
  ASSERT_EQ(s.uses.size(), 2u);
  EXPECT_EQ(s.uses[0].resource, ResourceId(1));
  EXPECT_DOUBLE_EQ(s.AmountOn(ResourceId(3)), 2.0);
  EXPECT_DOUBLE_EQ(s.AmountOn(ResourceId(2)), 0.0);
  EXPECT_TRUE(s.Uses(ResourceId(1)));
  EXPECT_FALSE(s.Uses(ResourceId(0)));
}

// Gray-code tabulation must agree with direct evaluation of every subset.
TEST(Tabulate, MatchesDirectEvaluation) {
  Gen gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = gen.Int(0, 9);
    std::vector<NormTerm> terms(2);
    terms[0].order = 1.0 + gen.Int(0, 2);
    terms[1].order = 2.0;
    terms[1].w = gen.Uniform(0.5, 3.0);
    const NormSumCost f(terms);
    std::vector<Member> ground;
    for (int e = 0; e < n; ++e) ground.push_back({e, gen.Uniform(0.1, 4.0)});
    const auto table = Tabulate(f, ground);
    ASSERT_EQ(table.size(), std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < table.size(); ++mask) {
      const auto members = SelectMembers(ground, mask);
      EXPECT_NEAR(table[mask], f.Evaluate(members), 1e-9);
    }
  }
}

TEST(Evaluation, IsDeterministic) {
  Gen gen(3);
  const auto f = std::make_shared<PolynomialLoadCost>(
      std::vector<double>{0.0, 0.3, 1.7, 0.2});
  for (int i = 0; i < 50; ++i) {
    std::vector<Member> m;
    for (int e = 0; e < 6; ++e) m.push_back({e, gen.Uniform(0, 5)});
    const double a = f->Evaluate(m);
    const double b = f->Evaluate(m);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
  }
}

TEST(Json, GeneralInstanceRoundTrip) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  inst.resources.push_back(
      {ResourceId(1), std::make_shared<PolynomialLoadCost>(std::vector<double>{1.0, 2.0})});
  Request r;
  r.id = RequestId(0);
  r.strategies.push_back(Strategy({ResourceUse{ResourceId(0), 2.5}}));
  r.strategies.push_back(Strategy({ResourceUse{ResourceId(1), 1.0}}));
  inst.requests.push_back(r);
  const auto text = GeneralInstanceToJson(inst);
  const auto back = ParseGeneralInstance(text);
  EXPECT_EQ(GeneralInstanceToJson(back), text);
  EXPECT_DOUBLE_EQ(TotalCost(back, {0}), TotalCost(inst, {0}));
  EXPECT_DOUBLE_EQ(TotalCost(back, {1}), TotalCost(inst, {1}));
}

TEST(Json, CostDescriptorsRoundTrip) {
  const char* costs[] = {
      R"({"kind":"polynomial","coeffs":[0,1,2],"weights":[1,2,3]})",
      R"({"kind":"norm_sum","terms":[{"w":2,"subset":[0,2],"order":2},{"w":1,"order":1}]})",
      R"({"kind":"piecewise_power","k":2,"m1":1,"m2":3})",
      R"({"kind":"submodular_coverage","sets":[[0,1],[1]],"item_weights":[1,2]})",
      R"({"kind":"submodular_table","n":2,"values":[0,1,1,1.5]})",
      R"({"kind":"custom_table","n":1,"values":[0,4]})",
  };
  const auto ground = UnitGround(3);
  for (const char* text : costs) {
    const CostPtr f = ParseCost(text);
    const CostPtr g = ParseCost(CostToJson(*f));
    EXPECT_EQ(f->kind(), g->kind()) << text;
    const int n = f->kind() == CostKind::kCustomTable ? 1
                  : f->kind() == CostKind::kSubmodularTable ? 2 : 3;
    const auto tf = Tabulate(*f, std::span(ground).first(n));
    const auto tg = Tabulate(*g, std::span(ground).first(n));
    EXPECT_EQ(tf, tg) << text;
  }
}

TEST(Json, MalformedInputIsInputError) {
  EXPECT_THROW(ParseCost("{"), InputError);
  EXPECT_THROW(ParseCost(R"({"kind":"bogus"})"), InputError);
  EXPECT_THROW(ParseCost(R"({"kind":"polynomial","coeffs":[-1]})"), InputError);
  // Not submodular: f({0,1}) - f({1}) > f({0}) - f().
  EXPECT_THROW(ParseCost(R"({"kind":"submodular_table","n":2,"values":[0,1,1,3]})"),
               InputError);
  // Not monotone.
  EXPECT_THROW(ParseCost(R"({"kind":"custom_table","n":1,"values":[1,0]})"), InputError);
  EXPECT_THROW(ParseGeneralInstance(R"({"resources":[]})"), InputError);
}

}  // namespace
}  // namespace smoothpd
