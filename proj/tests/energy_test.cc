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
#include <limits>
#include <memory>
#include <vector>

#include "smoothpd/apps/energy.h"
#include "smoothpd/apps/oracles.h"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "test_util.h"

namespace smoothpd {
namespace {

using testing::Gen;

std::shared_ptr<const LoadCost> PowerCurve(int k, double scale = 1.0) {
  std::vector<double> c(k + 1, 0.0);
  c[k] = scale;
  return std::make_shared<PolynomialLoadCost>(c);
}

EnergyInstance RandomInstance(Gen& gen, int machines, int jobs, int horizon,
                              bool nonconvex, bool penalties) {
  EnergyInstance inst;
  inst.eps = 2.0;
  for (int i = 0; i < machines; ++i) {
    if (nonconvex) {
      inst.power.push_back(std::make_shared<PiecewisePowerCost>(2, 2.0, 6.0));
    } else {
      inst.power.push_back(PowerCurve(gen.Int(2, 3), gen.Uniform(0.5, 2)));
    }
  }
  for (int j = 0; j < jobs; ++j) {
    EnergyJob job;
    job.release = gen.Int(0, horizon - 1);
    job.deadline = gen.Int(job.release + 1, horizon);
    for (int i = 0; i < machines; ++i) job.work.push_back(gen.Uniform(1, 10));
    if (penalties) job.penalty = gen.Uniform(1, 100);
    inst.jobs.push_back(job);
  }
  return WithResolvedLevels(inst);
}

TEST(Energy, OneSlotRoundsUpToTheGrid) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 0.5;
  inst.jobs.push_back({0, 1, {1.2}});
  inst = WithResolvedLevels(inst);
  EXPECT_EQ(inst.Units(0, 0), 3);
  const auto p = EnergyBestResponse(inst, {0.0}, 0, 0);
  EXPECT_EQ(p.units, std::vector<int>{3});
  EXPECT_NEAR(p.increase, 1.5 * 1.5, 1e-12);
}

TEST(Energy, QuadraticSplitsEvenly) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 1.0;
  inst.levels = 4;
  inst.jobs.push_back({0, 2, {2.0}});
  for (auto method : {EnergyMethod::kWaterFilling, EnergyMethod::kDp}) {
    const auto p = EnergyBestResponse(inst, {0.0, 0.0}, 0, 0, method);
    EXPECT_EQ(p.units, (std::vector<int>{1, 1}));
    EXPECT_NEAR(p.increase, 2.0, 1e-12);
  }
}

TEST(Energy, WaterFillingFillsTheValley) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 1.0;
  inst.levels = 10;
  inst.jobs.push_back({0, 3, {3.0}});
  const auto p = EnergyBestResponse(inst, {3.0, 0.0, 1.0}, 0, 0);
  EXPECT_EQ(p.units, (std::vector<int>{0, 2, 1}));
}

TEST(Energy, InfeasibleVolume) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 1.0;
  inst.levels = 1;
  inst.jobs.push_back({0, 2, {3.0}});
  EXPECT_THROW(EnergyBestResponse(inst, {0, 0}, 0, 0), InfeasibleError);
  EXPECT_THROW(inst.Validate(), InputError);
}

TEST(Energy, ResponsesMatchBruteForce) {
  Gen gen(3);
  for (int trial = 0; trial < 60; ++trial) {
    const bool nonconvex = trial % 2 == 1;
    const auto inst = RandomInstance(gen, 1, 1, gen.Int(1, 4), nonconvex, false);
    std::vector<double> speed(inst.horizon());
    for (double& v : speed) v = 2.0 * gen.Int(0, 3);
    const auto brute = BruteForceEnergyResponse(inst, speed, 0, 0);
    const auto dp = EnergyBestResponse(inst, speed, 0, 0, EnergyMethod::kDp);
    EXPECT_NEAR(dp.increase, brute.increase, 1e-9 * (1 + brute.increase));
    if (!nonconvex) {
      const auto wf = EnergyBestResponse(inst, speed, 0, 0, EnergyMethod::kWaterFilling);
      EXPECT_NEAR(wf.increase, brute.increase, 1e-9 * (1 + brute.increase));
    }
  }
}

// Halving eps keeps the old grid and needs no more volume, so the best
// energy can only go down.
TEST(Energy, RefiningTheGridNeverHurts) {
  Gen gen(12);
  for (int trial = 0; trial < 10; ++trial) {
    EnergyInstance base = RandomInstance(gen, 2, 3, 3, false, false);
    double prev_resp = std::numeric_limits<double>::infinity();
    double prev_opt = std::numeric_limits<double>::infinity();
    for (double eps : {0.4, 0.2, 0.1}) {
      EnergyInstance inst = base;
      inst.eps = eps;
      inst.levels = static_cast<int>(std::lround(12.0 / eps));
      const auto resp = EnergyBestResponse(inst, std::vector<double>(inst.horizon(), 0.0), 0, 0);
      EXPECT_LE(resp.increase, prev_resp + 1e-9);
      prev_resp = resp.increase;
      if (eps > 0.15) {
        const double opt = EnergyOpt(inst).value;
        EXPECT_LE(opt, prev_opt + 1e-9);
        prev_opt = opt;
      }
    }
  }
}

TEST(Energy, GreedyWithinBound) {
  Gen gen(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = RandomInstance(gen, 2, gen.Int(1, 5), 3, false, false);
    const auto run = RunEnergy(inst);
    const auto opt = EnergyOpt(inst);
    const double ratio = EnergyParams(inst).Ratio();
    EXPECT_LE(run.energy, ratio * opt.value + 1e-9) << "trial " << trial;
    EXPECT_GE(run.energy, opt.value - 1e-9);
    for (int j = 0; j < static_cast<int>(inst.jobs.size()); ++j) {
      int placed = 0;
      for (int u : run.profiles[j].units) placed += u;
      EXPECT_EQ(placed, inst.Units(j, run.machine[j]));
    }
  }
}

TEST(Prize, ZeroPenaltyRejects) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 1.0;
  inst.jobs.push_back({0, 1, {1.0}, 0.0});
  inst = WithResolvedLevels(inst);
  const auto run = RunPrize(inst, EnergyParams(inst));
  EXPECT_EQ(run.run.machine, std::vector<int>{-1});
  EXPECT_EQ(run.run.energy, 0.0);
}

TEST(Prize, HugePenaltyAccepts) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.eps = 1.0;
  inst.jobs.push_back({0, 1, {1.0}, 1e9});
  inst = WithResolvedLevels(inst);
  const auto run = RunPrize(inst, EnergyParams(inst));
  EXPECT_EQ(run.run.machine, std::vector<int>{0});
  EXPECT_NEAR(run.run.energy, 1.0, 1e-12);
}

TEST(Prize, NeedsFinitePenalties) {
  EnergyInstance inst;
  inst.power = {PowerCurve(2)};
  inst.jobs.push_back({0, 1, {1.0}});
  inst = WithResolvedLevels(inst);
  EXPECT_THROW(RunPrize(inst, EnergyParams(inst)), InputError);
}

TEST(Prize, IdentityAndRatio) {
  Gen gen(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = RandomInstance(gen, 2, gen.Int(1, 5), 3, false, true);
    const auto p = EnergyParams(inst);
    const auto run = RunPrize(inst, p);
    double rejected = 0;
    for (std::size_t j = 0; j < inst.jobs.size(); ++j) {
      if (run.run.machine[j] < 0) rejected += inst.jobs[j].penalty;
    }
    EXPECT_NEAR(run.dual, rejected + (1 - p.mu) / p.lambda * run.run.energy,
                1e-9 * (1 + run.run.total));
    const auto opt = PrizeOpt(inst);
    EXPECT_LE(run.run.total, p.Ratio() * opt.value + 1e-9) << "trial " << trial;
    EXPECT_LE(opt.value, run.run.total + 1e-9);
  }
}

TEST(Energy, JsonRoundTrip) {
  const auto inst = ParseEnergyInstance(R"({"power":[{"kind":"polynomial","coeffs":[0,0,1]}],
      "eps":0.5,"jobs":[{"release":0,"deadline":2,"work":3,"penalty":4}]})");
  EXPECT_EQ(inst.jobs[0].work, std::vector<double>{3});
  EXPECT_EQ(inst.jobs[0].penalty, 4);
  EXPECT_GT(inst.levels, 0);
  const auto back = ParseEnergyInstance(EnergyInstanceToJson(inst));
  EXPECT_EQ(EnergyInstanceToJson(back), EnergyInstanceToJson(inst));
  EXPECT_THROW(ParseEnergyInstance(R"({"power":[],"jobs":[]})"), InputError);
  EXPECT_THROW(ParseEnergyInstance(R"({"power":[{"kind":"polynomial","coeffs":[0,1]}],
      "jobs":[{"release":2,"deadline":1,"work":1}]})"),
               InputError);
}

}  // namespace
}  // namespace smoothpd
