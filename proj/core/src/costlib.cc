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
#include "smoothpd/costlib.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "smoothpd/errors.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {

PolynomialLoadCost::PolynomialLoadCost(std::vector<double> coeffs,
                                       std::vector<double> element_weights)
    : LoadCost(std::move(element_weights)), coeffs_(std::move(coeffs)) {
  degree_ = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    if (!(coeffs_[t] >= 0.0)) {
      throw InputError("polynomial coefficients must be non-negative");
    }
    if (coeffs_[t] > 0.0) degree_ = static_cast<int>(t);
  }
  if (degree_ < 1) throw InputError("polynomial cost needs degree >= 1");
}

double PolynomialLoadCost::Shape(double load) const {
  double v = 0.0;
  for (std::size_t t = coeffs_.size(); t-- > 0;) v = v * load + coeffs_[t];
  return v;
}

std::shared_ptr<const PolynomialLoadCost> MakeModular(
    std::vector<double> element_weights) {
  return std::make_shared<PolynomialLoadCost>(std::vector<double>{0.0, 1.0},
                                              std::move(element_weights));
}

NormSumCost::NormSumCost(std::vector<NormTerm> terms)
    : terms_(std::move(terms)) {
  for (const NormTerm& t : terms_) {
    if (!(t.w > 0.0)) throw InputError("norm term weights must be positive");
    if (!(t.order >= 1.0)) throw InputError("norm order must be at least 1");
    std::vector<char> mark;
    for (int e : t.subset) {
      if (e < 0) throw InputError("negative element in norm subset");
      if (static_cast<std::size_t>(e) >= mark.size()) mark.resize(e + 1, 0);
      mark[e] = 1;
    }
    in_subset_.push_back(std::move(mark));
  }
}

double NormSumCost::Evaluate(std::span<const Member> members) const {
  double total = 0.0;
  for (std::size_t j = 0; j < terms_.size(); ++j) {
    const NormTerm& t = terms_[j];
    const std::vector<char>& mark = in_subset_[j];
    double acc = 0.0;
    for (const Member& m : members) {
      const bool inside =
          t.subset.empty() ||
          (m.element >= 0 && static_cast<std::size_t>(m.element) < mark.size() &&
           mark[m.element]);
      if (inside) acc += std::pow(std::fabs(m.weight), t.order);
    }
    if (acc > 0.0) total += t.w * std::pow(acc, 1.0 / t.order);
  }
  return total;
}

PiecewisePowerCost::PiecewisePowerCost(int k, double m1, double m2,
                                       std::vector<double> element_weights)
    : LoadCost(std::move(element_weights)), k_(k), m1_(m1), m2_(m2) {
  if (k < 1) throw InputError("piecewise power needs k >= 1");
  if (!(m1 >= 0.0 && m1 < m2)) {
    throw InputError("piecewise power needs 0 <= m1 < m2");
  }
}

double PiecewisePowerCost::Shape(double load) const {
  if (load > m1_ && load < m2_) return std::pow(m1_, k_);
  return std::pow(load, k_);
}

CoverageCost::CoverageCost(std::vector<std::vector<int>> sets,
                           std::vector<double> item_weights)
    : sets_(std::move(sets)), item_weights_(std::move(item_weights)) {
  for (double w : item_weights_) {
    if (!(w >= 0.0)) throw InputError("item weights must be non-negative");
  }
  for (const auto& s : sets_) {
    for (int item : s) {
      if (item < 0 || static_cast<std::size_t>(item) >= item_weights_.size()) {
        throw InputError("coverage set references an unknown item");
      }
    }
  }
}

double CoverageCost::Evaluate(std::span<const Member> members) const {
  std::vector<char> covered(item_weights_.size(), 0);
  double total = 0.0;
  for (const Member& m : members) {
    if (m.element < 0 || static_cast<std::size_t>(m.element) >= sets_.size()) {
      continue;
    }
    for (int item : sets_[m.element]) {
      if (!covered[item]) {
        covered[item] = 1;
        total += item_weights_[item];
      }
    }
  }
  return total;
}

bool IsMonotoneTable(const std::vector<double>& values, int n) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t s = 0; s < count; ++s) {
    for (int e = 0; e < n; ++e) {
      const std::uint32_t bit = 1u << e;
      if (!(s & bit) && values[s | bit] < values[s] - Tolerance()) return false;
    }
  }
  return true;
}

bool IsSubmodularTable(const std::vector<double>& values, int n) {
  // Equivalent local form: f(S+a) + f(S+b) >= f(S+a+b) + f(S).
  const std::uint32_t count = 1u << n;
  for (std::uint32_t s = 0; s < count; ++s) {
    for (int a = 0; a < n; ++a) {
      const std::uint32_t ba = 1u << a;
      if (s & ba) continue;
      for (int b = a + 1; b < n; ++b) {
        const std::uint32_t bb = 1u << b;
        if (s & bb) continue;
        const double lhs = values[s | ba] + values[s | bb];
        const double rhs = values[s | ba | bb] + values[s];
        if (lhs < rhs - Tolerance() * (1.0 + std::fabs(rhs))) return false;
      }
    }
  }
  return true;
}

TableCost::TableCost(int n, std::vector<double> values, CostKind kind)
    : n_(n), values_(std::move(values)), kind_(kind) {
  if (kind_ != CostKind::kCustomTable && kind_ != CostKind::kSubmodularTable) {
    throw InputError("table costs are custom_table or submodular_table");
  }
  if (n_ < 0 || n_ > kMaxTableElements) {
    throw SizeError("table costs support at most 16 elements");
  }
  if (values_.size() != (std::size_t{1} << n_)) {
    throw InputError("table needs 2^n values");
  }
  for (double v : values_) {
    if (!(v >= 0.0)) throw InputError("table values must be non-negative");
  }
  if (!IsMonotoneTable(values_, n_)) {
    throw InputError("table cost is not monotone");
  }
  if (kind_ == CostKind::kSubmodularTable && !IsSubmodularTable(values_, n_)) {
    throw InputError("table cost is not submodular");
  }
}

double TableCost::Evaluate(std::span<const Member> members) const {
  std::uint32_t mask = 0;
  for (const Member& m : members) {
    if (m.element < 0 || m.element >= n_) {
      throw InputError("element " + std::to_string(m.element) +
                       " outside the table ground set");
    }
    mask |= 1u << m.element;
  }
  return values_[mask];
}

Curvature ComputeCurvature(const SetCostFunction& f, int n) {
  const auto ground = UnitGround(n);
  const double full = f.Evaluate(ground);
  Curvature out;
  double ratio = 1.0;
  bool any = false;
  std::vector<Member> rest;
  for (int e = 0; e < n; ++e) {
    const Member single[] = {ground[e]};
    const double fe = f.Evaluate(single);
    if (fe <= 0.0) {
      out.zero_singletons.push_back(e);
      continue;
    }
    rest.clear();
    for (int x = 0; x < n; ++x) {
      if (x != e) rest.push_back(ground[x]);
    }
    const double last = full - f.Evaluate(rest);
    ratio = any ? std::min(ratio, last / fe) : last / fe;
    any = true;
  }
  if (!any) throw InputError("curvature undefined: every singleton is zero");
  out.kappa = std::clamp(1.0 - ratio, 0.0, 1.0);
  return out;
}

std::optional<std::vector<int>> CurvatureLemmaCheck(const SetCostFunction& f,
                                                    int n, int n_max) {
  if (n > n_max || n > kMaxTabulatedGround) {
    throw SizeError("curvature check limited to " + std::to_string(n_max) +
                    " elements");
  }
  const double kappa = ComputeCurvature(f, n).kappa;
  const auto ground = UnitGround(n);
  const std::vector<double> t = Tabulate(f, ground);
  const std::uint32_t count = 1u << n;
  std::vector<double> singles_sum(count, 0.0);
  for (std::uint32_t s = 1; s < count; ++s) {
    const int low = std::countr_zero(s);
    singles_sum[s] = singles_sum[s & (s - 1)] + t[1u << low];
  }
  for (std::uint32_t s = 0; s < count; ++s) {
    const double rhs = (1.0 - kappa) * singles_sum[s];
    if (t[s] < rhs - Tolerance() * (1.0 + std::fabs(rhs))) {
      std::vector<int> out;
      for (int e = 0; e < n; ++e) {
        if (s >> e & 1u) out.push_back(e);
      }
      return out;
    }
  }
  return std::nullopt;
}

double LogFactor(int d) {
  return std::log(1.0 + 2.0 * static_cast<double>(d) * d);
}

double CoveringParams::CertificateBound() const {
  return 8.0 * log_factor * local.lambda / (1.0 - mu_alg);
}

CoveringParams CoveringFromLocal(const SmoothnessParams& local, int d) {
  if (d < 1) throw InputError("row sparsity d must be at least 1");
  local.Validate();
  CoveringParams p;
  p.local = local;
  p.d = d;
  p.log_factor = LogFactor(d);
  p.mu_alg = 8.0 * p.log_factor * local.mu;
  if (!(p.mu_alg < 1.0)) {
    throw InputError("local mu too large: 8 ln(1+2d^2) mu must stay below 1");
  }
  return p;
}

namespace {

SmoothnessParams PolyLocal(int k, double log_factor) {
  if (k == 1) {
    SmoothnessParams p{1.0, 0.0, Provenance::kAnalytic, "linear"};
    return p;
  }
  const double mu_local = ((k - 1.0) / k) / (8.0 * log_factor);
  SmoothnessParams p = PolyParamsForMu(k, mu_local);
  p.source = "poly_local(k=" + std::to_string(k) + ")";
  return p;
}

}  // namespace

CoveringParams ParamsFor(const SetCostFunction& f, int n, int d) {
  const double log_factor = LogFactor(std::max(d, 1));
  switch (f.kind()) {
    case CostKind::kNormSum:
      return CoveringFromLocal({1.0, 0.0, Provenance::kAnalytic, "norm"}, d);
    case CostKind::kPolynomial: {
      const auto& poly = dynamic_cast<const PolynomialLoadCost&>(f);
      return CoveringFromLocal(PolyLocal(poly.degree(), log_factor), d);
    }
    case CostKind::kPiecewisePower: {
      const auto& pw = dynamic_cast<const PiecewisePowerCost&>(f);
      SmoothnessParams p = PolyLocal(pw.k(), log_factor);
      p.source = "piecewise_from_poly(k=" + std::to_string(pw.k()) + ")";
      // The flat stretch makes g jump at m2, so the polynomial constant is
      // only a starting point; enumeration raises it where needed.
      if (n <= 12) {
        const double need = MinimalLocalLambda(f, UnitGround(n), p.mu, 12);
        if (!std::isfinite(need)) {
          throw NumericError("piecewise cost admits no finite lambda");
        }
        if (need > p.lambda) {
          p.lambda = need * (1.0 + 1e-9);
          p.provenance = Provenance::kVerified;
          p.source += ";raised_by_enumeration(n=" + std::to_string(n) + ")";
        }
      }
      return CoveringFromLocal(p, d);
    }
    case CostKind::kSubmodularCoverage:
    case CostKind::kSubmodularTable: {
      const Curvature c = ComputeCurvature(f, n);
      if (c.kappa >= 1.0 - 1e-12) {
        throw InputError("submodular cost with curvature 1 has no finite "
                         "local smoothness params");
      }
      return CoveringFromLocal(
          {1.0 / (1.0 - c.kappa), 0.0, Provenance::kAnalytic, "curvature"}, d);
    }
    case CostKind::kCustomTable:
    case CostKind::kCustom:
      break;
  }
  throw InputError(std::string(CostKindName(f.kind())) +
                   " cost needs asserted params");
}

}  // namespace smoothpd
