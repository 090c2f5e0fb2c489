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
#ifndef SMOOTHPD_SMOOTHNESS_H_
#define SMOOTHPD_SMOOTHNESS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smoothpd/set_function.h"

namespace smoothpd {

enum class Provenance { kAnalytic, kVerified, kAsserted };

struct SmoothnessParams {
  double lambda = 1.0;
  double mu = 0.0;
  Provenance provenance = Provenance::kAsserted;
  // Formula id for analytic params, enumeration bound for verified ones.
  std::string source;

  // Throws InputError unless lambda > 0 and mu < 1.
  void Validate() const;

  // lambda / (1 - mu).
  double Ratio() const;
};

std::string ProvenanceName(Provenance p);

inline constexpr int kDefaultSmoothnessNMax = 8;

// A violating instance of the chain inequality. Element lists hold
// ground indices.
struct ChainCounterexample {
  std::vector<int> a;                 // a_1, ..., a_n in order
  std::vector<std::vector<int>> chain;  // B_1 ⊆ ... ⊆ B_n
  std::vector<int> b;                 // B ⊇ B_n
  double lhs = 0.0;
  double rhs = 0.0;
};

// Exhaustive check of
//   sum_i [f(B_i + a_i) - f(B_i)] <= lambda f(A) + mu f(B)
// over every ordered A ⊆ ground and every chain B_1 ⊆ ... ⊆ B_n ⊆ B.
// Throws SizeError if ground.size() > n_max.
std::optional<ChainCounterexample> VerifySmoothness(
    const SetCostFunction& f, std::span<const Member> ground,
    const SmoothnessParams& params, int n_max = kDefaultSmoothnessNMax);

struct LocalCounterexample {
  std::vector<int> s;
  std::vector<int> r;
  double lhs = 0.0;
  double rhs = 0.0;
};

// Per-set local smoothness
//   sum_{e in S} [f(R + e) - f(R)] <= lambda f(S) + mu f(R)
// for every pair (S, R) of subsets of ground.
std::optional<LocalCounterexample> VerifyLocalSmoothness(
    const SetCostFunction& f, std::span<const Member> ground,
    const SmoothnessParams& params, int n_max = kDefaultSmoothnessNMax);

// Smallest lambda for which the per-set local inequality holds with the
// given mu on ground; +inf if no finite lambda works.
double MinimalLocalLambda(const SetCostFunction& f,
                          std::span<const Member> ground, double mu,
                          int n_max = kDefaultSmoothnessNMax);

struct BOfK {
  double z0 = 0.0;
  double b = 0.0;
};

// Root z0 > 0 of a z^k = (1+z)^(k-1) and b = (1+z0)^(k-1) (1 + z0/(k+1)).
// Requires k >= 1 and 0 < a <= 1.
BOfK ComputeBOfK(int k, double a);

enum class PolyVariant { kStandard, kLogScaled };

// Smoothness params for polynomials of degree k with non-negative
// coefficients. The standard variant uses mu = (k-1)/k, the log-scaled
// one mu = (k-1)/(k ln k). With self_check the result is confirmed on
// |A|^t, t <= k, over 8 unit elements.
SmoothnessParams ComputePolyParams(int k, PolyVariant variant,
                                   bool self_check = false);

// Same construction for an arbitrary target mu in (0, 1) (mu may be 0
// only for k = 1).
SmoothnessParams PolyParamsForMu(int k, double mu);

}  // namespace smoothpd

#endif  // SMOOTHPD_SMOOTHNESS_H_
