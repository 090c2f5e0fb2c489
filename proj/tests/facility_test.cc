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
#include <memory>
#include <vector>

#include "smoothpd/apps/facility.h"
#include "smoothpd/apps/oracles.h"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/smoothness.h"
#include "test_util.h"

namespace smoothpd {
namespace {

using testing::Gen;

CostPtr Poly(std::vector<double> c) {
  return std::make_shared<PolynomialLoadCost>(std::move(c));
}

// Distances between points on a line.
std::vector<std::vector<double>> LineMetric(const std::vector<double>& pos) {
  std::vector<std::vector<double>> d(pos.size(), std::vector<double>(pos.size()));
  for (std::size_t a = 0; a < pos.size(); ++a) {
    for (std::size_t b = 0; b < pos.size(); ++b) d[a][b] = std::fabs(pos[a] - pos[b]);
  }
  return d;
}

FacilityInstance RandomInstance(Gen& gen, int nf, int clients) {
  FacilityInstance inst;
  inst.clients = clients;
  std::vector<double> x, y;
  for (int p = 0; p < nf + clients; ++p) {
    x.push_back(gen.Uniform(0, 10));
    y.push_back(gen.Uniform(0, 10));
  }
  inst.dist.assign(nf + clients, std::vector<double>(nf + clients));
  for (int a = 0; a < nf + clients; ++a) {
    for (int b = 0; b < nf + clients; ++b) {
      inst.dist[a][b] = std::hypot(x[a] - x[b], y[a] - y[b]);
    }
  }
  for (int i = 0; i < nf; ++i) {
    inst.facilities.push_back({gen.Uniform(1, 10), Poly({0, gen.Uniform(0, 1), gen.Uniform(0, 1)})});
  }
  inst.params = ComputePolyParams(2, PolyVariant::kStandard);
  return inst;
}

TEST(Facility, FreeFacilityFiresAtTheDistance) {
  FacilityInstance inst;
  inst.facilities.push_back({0.0, MakeModular(std::vector<double>{0.0})});
  inst.clients = 1;
  inst.dist = LineMetric({0.0, 2.5});
  inst.params = {1.0, 0.0, Provenance::kAnalytic, "linear"};
  const auto run = RunFacility(inst);
  ASSERT_EQ(run.records.size(), 1u);
  EXPECT_EQ(run.records[0].facility, 0);
  EXPECT_DOUBLE_EQ(run.records[0].alpha, 2.5);
  EXPECT_DOUBLE_EQ(run.total, 2.5);
}

// Facilities at 0 and 1.5, clients at -1 and 1; serving |S|^2 with
// (lambda, mu) = (4, 1/2), so caps are marginal / 8.
FacilityInstance TwoFacilities(double far_opening) {
  FacilityInstance inst;
  inst.facilities.push_back({0.0, Poly({0, 0, 1})});
  inst.facilities.push_back({far_opening, Poly({0, 0, 1})});
  inst.clients = 2;
  inst.dist = LineMetric({0.0, 1.5, -1.0, 1.0});
  inst.params = {4.0, 0.5, Provenance::kAnalytic, "poly"};
  return inst;
}

TEST(Facility, OpenCheapFacilityBeatsExpensiveClosedOne) {
  const auto run = RunFacility(TwoFacilities(10.0));
  // Client 0: levels 1 + 0 + 1/8 and 2.5 + 10 + 1/8.
  EXPECT_EQ(run.records[0].facility, 0);
  EXPECT_DOUBLE_EQ(run.records[0].alpha, 1.125);
  // Client 1: levels 1 + 0 + 3/8 and 0.5 + 10 + 1/8.
  EXPECT_EQ(run.records[1].facility, 0);
  EXPECT_DOUBLE_EQ(run.records[1].alpha, 1.375);
  EXPECT_DOUBLE_EQ(run.records[1].beta[1], 0.875);
}

TEST(Facility, CheapClosedFacilityWinsOnThreshold) {
  const auto run = RunFacility(TwoFacilities(0.5));
  EXPECT_EQ(run.records[0].facility, 0);
  // Client 1: levels 1.375 at the open one, 0.5 + 0.5 + 1/8 at the closed.
  EXPECT_EQ(run.records[1].facility, 1);
  EXPECT_DOUBLE_EQ(run.records[1].alpha, 1.125);
  EXPECT_EQ(run.open, (std::vector<char>{1, 1}));
  EXPECT_DOUBLE_EQ(run.opening_cost, 0.5);
}

TEST(Facility, TiesGoToTheLowerId) {
  FacilityInstance inst;
  inst.facilities = {{1.0, Poly({0, 1})}, {1.0, Poly({0, 1})}};
  inst.clients = 1;
  inst.dist = LineMetric({-1.0, 1.0, 0.0});
  inst.params = {1.0, 0.0, Provenance::kAnalytic, "linear"};
  EXPECT_EQ(RunFacility(inst).records[0].facility, 0);
}

TEST(Facility, DualFeasibleAndCostsConsistent) {
  Gen gen(5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = RandomInstance(gen, gen.Int(1, 3), gen.Int(1, 6));
    const auto run = RunFacility(inst);
    const auto v = CheckFacilityDual(inst, run);
    EXPECT_FALSE(v.has_value()) << v->Describe();
    std::vector<int> assignment;
    for (const auto& r : run.records) assignment.push_back(r.facility);
    EXPECT_NEAR(run.total, FacilityCost(inst, assignment), 1e-9 * (1 + run.total));
    const auto opt = FacilityOpt(inst);
    EXPECT_LE(opt.value, run.total + 1e-9);
    EXPECT_NEAR(opt.value, FacilityCost(inst, opt.assignment), 1e-9);
  }
}

TEST(Facility, PerturbedDualIsCaught) {
  const auto inst = TwoFacilities(10.0);
  auto run = RunFacility(inst);
  run.records[0].alpha += 5.0;
  const auto v = CheckFacilityDual(inst, run);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->client, 0);
}

TEST(Metric, DetectsTriangleViolations) {
  EXPECT_FALSE(CheckMetric(LineMetric({0, 1, 5, 2})).has_value());
  std::vector<std::vector<double>> d = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};
  const auto bad = CheckMetric(d);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ(bad->size(), 3u);
  d = {{0, 1}, {2, 0}};
  EXPECT_TRUE(CheckMetric(d).has_value());
}

TEST(Facility, JsonRoundTripAndValidation) {
  const char* text = R"({"facilities":[{"opening":2,"serving":{"kind":"polynomial","coeffs":[0,1,1]}}],
      "clients":1,"dist":[[0,3],[3,0]]})";
  const auto inst = ParseFacilityInstance(text);
  EXPECT_DOUBLE_EQ(inst.params.lambda, ComputePolyParams(2, PolyVariant::kStandard).lambda);
  const auto back = ParseFacilityInstance(FacilityInstanceToJson(inst));
  EXPECT_EQ(FacilityInstanceToJson(back), FacilityInstanceToJson(inst));
  EXPECT_THROW(ParseFacilityInstance(R"({"facilities":[{"opening":2,"serving":
      {"kind":"polynomial","coeffs":[0,1]}}],"clients":2,"dist":[[0,3],[3,0]]})"),
               InputError);
  EXPECT_THROW(ParseFacilityInstance(R"({"facilities":[{"opening":2,"serving":
      {"kind":"polynomial","coeffs":[0,1]}}],"clients":2,
      "dist":[[0,1,9],[1,0,1],[9,1,0]]})"),
               InputError);
}

}  // namespace
}  // namespace smoothpd
