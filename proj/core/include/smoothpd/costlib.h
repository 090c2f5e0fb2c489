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
#ifndef SMOOTHPD_COSTLIB_H_
#define SMOOTHPD_COSTLIB_H_

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "smoothpd/set_function.h"
#include "smoothpd/smoothness.h"

namespace smoothpd {

// f(S) = g(sum_{e in S} a_e) with g(y) = sum_t coeffs[t] y^t.
class PolynomialLoadCost : public LoadCost {
 public:
  explicit PolynomialLoadCost(std::vector<double> coeffs,
                              std::vector<double> element_weights = {});

  double Shape(double load) const override;
  CostKind kind() const override { return CostKind::kPolynomial; }

  int degree() const { return degree_; }
  const std::vector<double>& coeffs() const { return coeffs_; }

 private:
  std::vector<double> coeffs_;
  int degree_ = 1;
};

// sum_{e in S} a_e.
std::shared_ptr<const PolynomialLoadCost> MakeModular(
    std::vector<double> element_weights);

struct NormTerm {
  double w = 1.0;
  std::vector<int> subset;  // empty means every element
  double order = 2.0;       // k >= 1
};

// f(S) = sum_j w_j ||x(S ∩ S_j)||_{k_j}, where x holds the member weights.
class NormSumCost : public SetCostFunction {
 public:
  explicit NormSumCost(std::vector<NormTerm> terms);

  double Evaluate(std::span<const Member> members) const override;
  CostKind kind() const override { return CostKind::kNormSum; }

  const std::vector<NormTerm>& terms() const { return terms_; }

 private:
  std::vector<NormTerm> terms_;
  std::vector<std::vector<char>> in_subset_;
};

// g(y) = y^k outside (m1, m2) and m1^k inside it: non-convex but monotone.
class PiecewisePowerCost : public LoadCost {
 public:
  PiecewisePowerCost(int k, double m1, double m2,
                     std::vector<double> element_weights = {});

  double Shape(double load) const override;
  CostKind kind() const override { return CostKind::kPiecewisePower; }

  int k() const { return k_; }
  double m1() const { return m1_; }
  double m2() const { return m2_; }

 private:
  int k_;
  double m1_;
  double m2_;
};

// Weighted coverage: element e covers the items sets[e]; f(S) is the total
// weight of items covered by S. Submodular by construction.
class CoverageCost : public SetCostFunction {
 public:
  CoverageCost(std::vector<std::vector<int>> sets,
               std::vector<double> item_weights);

  double Evaluate(std::span<const Member> members) const override;
  CostKind kind() const override { return CostKind::kSubmodularCoverage; }

  const std::vector<std::vector<int>>& sets() const { return sets_; }
  const std::vector<double>& item_weights() const { return item_weights_; }

 private:
  std::vector<std::vector<int>> sets_;
  std::vector<double> item_weights_;
};

inline constexpr int kMaxTableElements = 16;

// Explicit value per subset of {0..n-1}, indexed by bitmask. Construction
// checks non-negativity and monotonicity, plus submodularity when the kind
// is kSubmodularTable. Member weights are ignored.
class TableCost : public SetCostFunction {
 public:
  TableCost(int n, std::vector<double> values, CostKind kind);

  double Evaluate(std::span<const Member> members) const override;
  CostKind kind() const override { return kind_; }

  int n() const { return n_; }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_;
  std::vector<double> values_;
  CostKind kind_;
};

bool IsMonotoneTable(const std::vector<double>& values, int n);
bool IsSubmodularTable(const std::vector<double>& values, int n);

struct Curvature {
  double kappa = 0.0;
  std::vector<int> zero_singletons;  // excluded from the minimum
};

// Total curvature over the ground {0..n-1}. Throws InputError when every
// singleton value is zero.
Curvature ComputeCurvature(const SetCostFunction& f, int n);

// Checks f(S) >= (1 - kappa) sum_{e in S} f({e}) for every S; returns the
// first violating S.
std::optional<std::vector<int>> CurvatureLemmaCheck(const SetCostFunction& f,
                                                    int n, int n_max = 16);

// ln(1 + 2 d^2).
double LogFactor(int d);

// Parameters for running the covering algorithm on f with row sparsity d.
// local holds (lambda, mu_local), the local smoothness constants of F;
// mu_alg = 8 ln(1+2d^2) mu_local is the mu of the ratio lambda / (1-mu).
struct CoveringParams {
  SmoothnessParams local;
  double mu_alg = 0.0;
  double log_factor = 0.0;
  int d = 1;

  // primal / dual <= 8 ln(1+2d^2) lambda / (1 - mu_alg); the acceptance
  // bound multiplies this by 4.
  double CertificateBound() const;
  double RatioBound() const { return 4.0 * CertificateBound(); }
};

// Local params bundled with the covering constants for asserted input.
CoveringParams CoveringFromLocal(const SmoothnessParams& local, int d);

// Analytic params for the built-in families over ground {0..n-1}. Throws
// InputError for custom functions (params must be asserted) and for
// submodular functions of curvature 1.
CoveringParams ParamsFor(const SetCostFunction& f, int n, int d);

}  // namespace smoothpd

#endif  // SMOOTHPD_COSTLIB_H_
