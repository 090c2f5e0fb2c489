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
#include <cstdint>
#include <memory>
#include <vector>

#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/smoothness.h"
#include "test_util.h"

namespace smoothpd {
namespace {

using testing::Gen;

// kappa = 1 - min_e (f(N) - f(N - e)) / f(e), by direct table lookups.
double BruteCurvature(const std::vector<double>& t, int n) {
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  double best = 1.0;
  bool any = false;
  for (int e = 0; e < n; ++e) {
    const double single = t[std::uint64_t{1} << e];
    if (single <= 0) continue;
    const double r = (t[full] - t[full & ~(std::uint64_t{1} << e)]) / single;
    best = any ? std::min(best, r) : r;
    any = true;
  }
  return std::clamp(1.0 - best, 0.0, 1.0);
}

TEST(Curvature, ModularIsZero) {
  EXPECT_NEAR(ComputeCurvature(*MakeModular({1, 2, 3}), 3).kappa, 0.0, 1e-12);
}

TEST(Curvature, MinOfSizeAndOneIsOne) {
  const TableCost f(3, {0, 1, 1, 1, 1, 1, 1, 1}, CostKind::kSubmodularTable);
  EXPECT_NEAR(ComputeCurvature(f, 3).kappa, 1.0, 1e-12);
  // The lemma degenerates to f(S) >= 0.
  EXPECT_FALSE(CurvatureLemmaCheck(f, 3).has_value());
  EXPECT_THROW(ParamsFor(f, 3, 2), InputError);
}

TEST(Curvature, OverlappingCoverageMatchesBruteForce) {
  // Items 0..2 with weights 1, 2, 4. Element 0 covers {0, 1}, element 1
  // covers {1, 2}.
  const CoverageCost f({{0, 1}, {1, 2}}, {1, 2, 4});
  const auto t = Tabulate(f, UnitGround(2));
  EXPECT_NEAR(ComputeCurvature(f, 2).kappa, BruteCurvature(t, 2), 1e-12);
  // f(0)=3, f(1)=6, f(01)=7: marginals of the last element are 1 and 4.
  EXPECT_NEAR(ComputeCurvature(f, 2).kappa, 1.0 - std::min(1.0 / 3, 4.0 / 6), 1e-12);
}

TEST(Curvature, AllZeroSingletonsIsAnError) {
  const TableCost f(2, {0, 0, 0, 0}, CostKind::kSubmodularTable);
  EXPECT_THROW(ComputeCurvature(f, 2), InputError);
}

TEST(Curvature, ZeroSingletonsAreExcluded) {
  const TableCost f(2, {0, 0, 2, 2}, CostKind::kSubmodularTable);
  const auto c = ComputeCurvature(f, 2);
  EXPECT_EQ(c.zero_singletons, std::vector<int>{0});
  EXPECT_NEAR(c.kappa, 0.0, 1e-12);
}

TEST(Curvature, LemmaHoldsOnRandomSubmodularTables) {
  Gen gen(77);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.Int(1, 8);
    const auto t = gen.SubmodularTable(n);
    const TableCost f(n, t, CostKind::kSubmodularTable);
    bool any_positive = false;
    for (int e = 0; e < n; ++e) any_positive |= t[std::uint64_t{1} << e] > 0;
    if (!any_positive) continue;
    EXPECT_NEAR(ComputeCurvature(f, n).kappa, BruteCurvature(t, n), 1e-12);
    EXPECT_FALSE(CurvatureLemmaCheck(f, n).has_value()) << "trial " << trial;
  }
}

TEST(Curvature, LemmaCatchesSupermodularTables) {
  // Not submodular: f({0,1}) = 1 < f(0) + f(1) while the last marginals
  // are large, so the clamped curvature is 0 and the lemma must fail.
  const TableCost f(3, {0, 1, 1, 1, 1, 5, 5, 10}, CostKind::kCustomTable);
  const auto c = CurvatureLemmaCheck(f, 3);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (std::vector<int>{0, 1}));
}

TEST(Tables, MonotoneAndSubmodularPredicates) {
  EXPECT_TRUE(IsMonotoneTable({0, 1, 1, 2}, 2));
  EXPECT_FALSE(IsMonotoneTable({0, 1, 0.5, 0.7}, 2));
  EXPECT_TRUE(IsSubmodularTable({0, 1, 1, 1.5}, 2));
  EXPECT_FALSE(IsSubmodularTable({0, 1, 1, 3}, 2));
  EXPECT_THROW(TableCost(2, {0, 1, 1}, CostKind::kCustomTable), InputError);
  EXPECT_THROW(TableCost(2, {0, 1, 1, 3}, CostKind::kSubmodularTable), InputError);
}

TEST(Families, PiecewisePowerShape) {
  const PiecewisePowerCost f(2, 1.0, 3.0);
  EXPECT_DOUBLE_EQ(f.Shape(0.5), 0.25);
  EXPECT_DOUBLE_EQ(f.Shape(2.0), 1.0);  // flat inside (m1, m2)
  EXPECT_DOUBLE_EQ(f.Shape(3.0), 9.0);
  EXPECT_DOUBLE_EQ(f.Shape(4.0), 16.0);
  EXPECT_THROW(PiecewisePowerCost(2, 3.0, 1.0), InputError);
}

TEST(Families, NormSumMatchesHandComputation) {
  const NormSumCost f({{2.0, {0, 1}, 2.0}, {1.0, {}, 1.0}});
  const std::vector<Member> m = {{0, 3.0}, {1, 4.0}, {2, 1.0}};
  // 2 * ||(3,4)||_2 + ||(3,4,1)||_1 = 10 + 8.
  EXPECT_NEAR(f.Evaluate(m), 18.0, 1e-12);
}

TEST(Families, PolynomialShapeAndWeights) {
  const PolynomialLoadCost f({1.0, 0.0, 2.0}, {1.0, 3.0});
  const std::vector<Member> m = {{0, 1.0}, {1, 1.0}};
  EXPECT_DOUBLE_EQ(f.Evaluate(m), 1.0 + 2.0 * 16.0);
  EXPECT_EQ(f.degree(), 2);
}

TEST(ParamsFor, NormSumAndModularAreOneZero) {
  const NormSumCost norm({{1.0, {}, 2.0}});
  auto p = ParamsFor(norm, 4, 3);
  EXPECT_DOUBLE_EQ(p.local.lambda, 1.0);
  EXPECT_DOUBLE_EQ(p.local.mu, 0.0);
  p = ParamsFor(*MakeModular({1, 2}), 2, 1);
  EXPECT_DOUBLE_EQ(p.local.lambda, 1.0);
  EXPECT_DOUBLE_EQ(p.local.mu, 0.0);
  EXPECT_DOUBLE_EQ(p.mu_alg, 0.0);
}

TEST(ParamsFor, QuadraticLocalParamsVerify) {
  const auto f = std::make_shared<PolynomialLoadCost>(
      std::vector<double>{0, 0.5, 1.0}, std::vector<double>{1, 2, 3, 1.5, 2.5, 1});
  for (int d : {1, 2, 4}) {
    const auto p = ParamsFor(*f, 6, d);
    EXPECT_NEAR(p.mu_alg, 0.5, 1e-12);
    EXPECT_NEAR(p.log_factor, std::log(1.0 + 2.0 * d * d), 1e-12);
    EXPECT_FALSE(VerifyLocalSmoothness(*f, UnitGround(6), p.local).has_value()) << d;
    EXPECT_NEAR(p.CertificateBound(), 8 * p.log_factor * p.local.lambda / 0.5, 1e-9);
    EXPECT_NEAR(p.RatioBound(), 4 * p.CertificateBound(), 1e-9);
  }
}

TEST(ParamsFor, PiecewiseParamsVerify) {
  const auto f = std::make_shared<PiecewisePowerCost>(
      2, 5.0, 15.0, std::vector<double>{3, 7, 2, 9, 4});
  const auto p = ParamsFor(*f, 5, 3);
  EXPECT_FALSE(VerifyLocalSmoothness(*f, UnitGround(5), p.local).has_value());
}

TEST(ParamsFor, SubmodularUsesCurvature) {
  const CoverageCost f({{0, 3}, {1, 3}, {2}}, {1, 1, 1, 1});
  const auto p = ParamsFor(f, 3, 2);
  const double kappa = ComputeCurvature(f, 3).kappa;
  EXPECT_NEAR(p.local.lambda, 1.0 / (1.0 - kappa), 1e-12);
  EXPECT_DOUBLE_EQ(p.local.mu, 0.0);
}

TEST(ParamsFor, CustomNeedsAssertedParams) {
  const TableCost f(1, {0, 1}, CostKind::kCustomTable);
  EXPECT_THROW(ParamsFor(f, 1, 1), InputError);
  const auto p = CoveringFromLocal({2.0, 0.0, Provenance::kAsserted, "user"}, 2);
  EXPECT_DOUBLE_EQ(p.local.lambda, 2.0);
  EXPECT_THROW(CoveringFromLocal({2.0, 0.5, Provenance::kAsserted, "user"}, 2), InputError);
}

TEST(LogFactor, Values) {
  EXPECT_NEAR(LogFactor(1), std::log(3.0), 1e-15);
  EXPECT_NEAR(LogFactor(4), std::log(33.0), 1e-15);
}

}  // namespace
}  // namespace smoothpd
