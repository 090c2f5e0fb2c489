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

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/greedy.h"
#include "smoothpd/oracle.h"
#include "smoothpd/smoothness.h"
#include "test_util.h"

namespace smoothpd {
namespace {

using testing::Gen;
using testing::Power;
using testing::SingleUseRequest;

SmoothnessParams Params(double lambda, double mu) {
  SmoothnessParams p;
  p.lambda = lambda;
  p.mu = mu;
  return p;
}

// Random instance with polynomial costs of the given degree.
GeneralInstance RandomInstance(Gen& gen, int requests, int resources,
                               int max_strategies, int degree,
                               double constant = 0.0) {
  GeneralInstance inst;
  for (int e = 0; e < resources; ++e) {
    std::vector<double> c(degree + 1, 0.0);
    c[0] = constant;
    for (int t = 1; t <= degree; ++t) c[t] = gen.Uniform(0, 1);
    c[degree] = gen.Uniform(0.5, 2.0);
    inst.resources.push_back({ResourceId(e), std::make_shared<PolynomialLoadCost>(c)});
  }
  for (int i = 0; i < requests; ++i) {
    std::vector<double> amount(resources);
    for (double& a : amount) a = gen.Uniform(1, 10);
    Request r;
    r.id = RequestId(i);
    const int s = gen.Int(1, max_strategies);
    for (int j = 0; j < s; ++j) {
      std::vector<ResourceUse> uses;
      const int width = gen.Int(1, std::min(3, resources));
      std::vector<int> pool(resources);
      for (int e = 0; e < resources; ++e) pool[e] = e;
      std::shuffle(pool.begin(), pool.end(), gen.engine());
      for (int k = 0; k < width; ++k) uses.push_back({ResourceId(pool[k]), amount[pool[k]]});
      r.strategies.push_back(Strategy(uses));
    }
    inst.requests.push_back(r);
  }
  return inst;
}

TEST(Greedy, PicksTheCheaperStrategy) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), MakeModular({5.0})});
  inst.resources.push_back({ResourceId(1), MakeModular({3.0})});
  inst.requests.push_back(SingleUseRequest(0, {0, 1}));
  GreedyState state(inst);
  const auto [j, marginal] = state.Step(inst.requests[0]);
  EXPECT_EQ(j, 1);
  EXPECT_DOUBLE_EQ(marginal, 3.0);
}

TEST(Greedy, AvoidsTheLoadedSquare) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  inst.resources.push_back({ResourceId(1), Power(2)});
  inst.requests.push_back(SingleUseRequest(0, {0}));
  inst.requests.push_back(SingleUseRequest(1, {0, 1}));
  GreedyState state(inst);
  state.Step(inst.requests[0]);
  EXPECT_DOUBLE_EQ(state.StrategyMarginal(inst.requests[1], 0), 3.0);
  EXPECT_DOUBLE_EQ(state.StrategyMarginal(inst.requests[1], 1), 1.0);
  EXPECT_EQ(state.Step(inst.requests[1]).first, 1);
}

TEST(Greedy, TiesGoToTheLowerIndex) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  inst.resources.push_back({ResourceId(1), Power(2)});
  inst.requests.push_back(SingleUseRequest(0, {1, 0}));
  GreedyState state(inst);
  EXPECT_EQ(state.Step(inst.requests[0]).first, 0);
  EXPECT_EQ(state.users()[1].size(), 1u);
}

TEST(RunOnline, EmptyInstance) {
  GeneralInstance inst;
  const auto r = RunOnline(inst, Params(1, 0));
  EXPECT_EQ(r.certificate.primal, 0.0);
  EXPECT_EQ(r.certificate.dual, 0.0);
  EXPECT_EQ(r.certificate.Ratio(), 1.0);
}

TEST(RunOnline, LinearTelescopes) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(1)});
  for (int i = 0; i < 3; ++i) inst.requests.push_back(SingleUseRequest(i, {0}));
  const auto r = RunOnline(inst, Params(1, 0));
  EXPECT_DOUBLE_EQ(r.certificate.primal, 3.0);
  EXPECT_DOUBLE_EQ(r.certificate.dual, 3.0);
  EXPECT_DOUBLE_EQ(r.certificate.Ratio(), 1.0);
  EXPECT_FALSE(CheckDualFeasibility(inst, r.certificate).has_value());
}

TEST(RunOnline, SquareIdentity) {
  for (int k = 1; k <= 6; ++k) {
    GeneralInstance inst;
    inst.resources.push_back({ResourceId(0), Power(2)});
    for (int i = 0; i < k; ++i) inst.requests.push_back(SingleUseRequest(i, {0}));
    const auto r = RunOnline(inst, Params(3, 0.5));
    EXPECT_DOUBLE_EQ(r.certificate.primal, k * k);
    EXPECT_NEAR(r.certificate.dual, r.certificate.primal / 6.0, 1e-12);
  }
}

TEST(RunOnline, IdentityWithConstantTerms) {
  Gen gen(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = RandomInstance(gen, gen.Int(0, 8), gen.Int(1, 4), 3,
                                     gen.Int(1, 3), gen.Uniform(0, 2));
    const auto p = Params(gen.Uniform(1, 5), gen.Uniform(0, 0.9));
    const auto r = RunOnline(inst, p);
    const auto& c = r.certificate;
    EXPECT_NEAR(c.dual,
                (1 - p.mu) / p.lambda * c.primal - c.empty_offset / p.lambda,
                1e-9 * (1 + c.primal));
    EXPECT_NEAR(c.primal, TotalCost(inst, r.assignment), 1e-9 * (1 + c.primal));
  }
}

TEST(Certificate, FeasibleWithPolynomialParams) {
  Gen gen(17);
  for (int trial = 0; trial < 80; ++trial) {
    const int degree = gen.Int(1, 3);
    const auto inst = RandomInstance(gen, gen.Int(1, 8), gen.Int(1, 4), 3, degree);
    const auto p = ComputePolyParams(degree, PolyVariant::kStandard);
    const auto r = RunOnline(inst, p);
    const auto v = CheckDualFeasibility(inst, r.certificate);
    EXPECT_FALSE(v.has_value()) << v->Describe();
    const auto opt = OfflineOptGeneral(inst);
    EXPECT_LE(r.certificate.primal, p.Ratio() * opt.value + 1e-6);
    // Weak duality: the certificate never exceeds the optimum.
    EXPECT_LE(r.certificate.dual, opt.value + 1e-6);
  }
}

TEST(Certificate, InflatedBetaBreaksConfigurationConstraint) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  for (int i = 0; i < 3; ++i) inst.requests.push_back(SingleUseRequest(i, {0}));
  auto r = RunOnline(inst, ComputePolyParams(2, PolyVariant::kStandard));
  auto cert = r.certificate;
  cert.beta[{1, 0}] += 10.0 * 9.0;
  const auto v = CheckDualFeasibility(inst, cert);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->constraint, DualViolation::Constraint::kConfiguration);
  EXPECT_EQ(v->resource, 0);
  EXPECT_FALSE(v->Describe().empty());
}

TEST(Certificate, InflatedAlphaBreaksRequestConstraint) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(1)});
  inst.requests.push_back(SingleUseRequest(0, {0}));
  auto r = RunOnline(inst, Params(1, 0));
  auto cert = r.certificate;
  cert.alpha[0] += 1.0;
  const auto v = CheckDualFeasibility(inst, cert);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->constraint, DualViolation::Constraint::kRequest);
}

TEST(Certificate, TooOptimisticParamsAreCaught) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(2)});
  for (int i = 0; i < 4; ++i) inst.requests.push_back(SingleUseRequest(i, {0}));
  const auto r = RunOnline(inst, Params(1, 0));
  EXPECT_TRUE(CheckDualFeasibility(inst, r.certificate).has_value());
}

TEST(Certificate, SizeLimit) {
  GeneralInstance inst;
  inst.resources.push_back({ResourceId(0), Power(1)});
  for (int i = 0; i < 5; ++i) inst.requests.push_back(SingleUseRequest(i, {0}));
  const auto r = RunOnline(inst, Params(1, 0));
  EXPECT_THROW(CheckDualFeasibility(inst, r.certificate, 4), SizeError);
  EXPECT_NO_THROW(CheckDualFeasibility(inst, r.certificate, 5));
}

TEST(RunOnline, Deterministic) {
  Gen a(99), b(99);
  const auto i1 = RandomInstance(a, 8, 4, 3, 2);
  const auto i2 = RandomInstance(b, 8, 4, 3, 2);
  const auto p = ComputePolyParams(2, PolyVariant::kStandard);
  const auto r1 = RunOnline(i1, p), r2 = RunOnline(i2, p);
  EXPECT_EQ(r1.assignment, r2.assignment);
  EXPECT_EQ(r1.certificate.primal, r2.certificate.primal);
  EXPECT_EQ(r1.certificate.dual, r2.certificate.dual);
}

}  // namespace
}  // namespace smoothpd
