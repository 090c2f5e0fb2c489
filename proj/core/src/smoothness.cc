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
#include "smoothpd/smoothness.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "smoothpd/errors.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {
namespace {

std::vector<int> MaskToIndices(std::uint32_t mask) {
  std::vector<int> out;
  for (int i = 0; mask != 0; ++i, mask >>= 1) {
    if (mask & 1u) out.push_back(i);
  }
  return out;
}

void CheckSize(std::size_t n, int n_max) {
  if (static_cast<int>(n) > n_max) {
    throw SizeError("ground set of " + std::to_string(n) +
                    " elements exceeds the enumeration limit " +
                    std::to_string(n_max));
  }
  if (n > 12) throw SizeError("enumeration is limited to 12 elements");
}

double Slack(double rhs) { return Tolerance() * (1.0 + std::fabs(rhs)); }

// Replaces v[S] by max over supersets of S, tracking the maximizer.
void SupersetMax(std::vector<double>& v, std::vector<std::uint32_t>& arg,
                 int n) {
  const std::uint32_t count = 1u << n;
  for (std::uint32_t s = 0; s < count; ++s) arg[s] = s;
  for (int bit = 0; bit < n; ++bit) {
    const std::uint32_t b = 1u << bit;
    for (std::uint32_t s = 0; s < count; ++s) {
      if ((s & b) == 0 && v[s | b] > v[s]) {
        v[s] = v[s | b];
        arg[s] = arg[s | b];
      }
    }
  }
}

double H(int k, double z) {
  // ((1/z) + 1)^(k-1) / z, strictly decreasing in z > 0.
  return std::pow(1.0 / z + 1.0, k - 1) / z;
}

}  // namespace

void SmoothnessParams::Validate() const {
  if (!(lambda > 0.0)) throw InputError("lambda must be positive");
  if (!(mu < 1.0)) throw InputError("mu must be below 1");
}

double SmoothnessParams::Ratio() const { return lambda / (1.0 - mu); }

std::string ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kAnalytic: return "analytic";
    case Provenance::kVerified: return "verified";
    case Provenance::kAsserted: return "asserted";
  }
  return "asserted";
}

std::optional<ChainCounterexample> VerifySmoothness(
    const SetCostFunction& f, std::span<const Member> ground,
    const SmoothnessParams& params, int n_max) {
  CheckSize(ground.size(), n_max);
  if (ground.size() > 10) {
    throw SizeError("chain enumeration is limited to 10 elements");
  }
  params.Validate();
  const int n = static_cast<int>(ground.size());
  const std::uint32_t count = 1u << n;
  const std::vector<double> t = Tabulate(f, ground);

  // g[r][s]: best value of the remaining chain when the elements of r are
  // still to be placed and the chain currently sits at s (the next B may
  // be any superset of s). The final B contributes -mu f(B).
  std::vector<std::vector<double>> g(count, std::vector<double>(count));
  std::vector<std::vector<std::uint32_t>> g_arg(
      count, std::vector<std::uint32_t>(count));
  std::vector<std::vector<int>> h_arg(count, std::vector<int>(count, -1));

  for (std::uint32_t s = 0; s < count; ++s) g[0][s] = -params.mu * t[s];
  SupersetMax(g[0], g_arg[0], n);

  for (std::uint32_t r = 1; r < count; ++r) {
    std::vector<double>& h = g[r];
    for (std::uint32_t s = 0; s < count; ++s) {
      double best = -std::numeric_limits<double>::infinity();
      int best_a = -1;
      for (std::uint32_t rest = r; rest != 0; rest &= rest - 1) {
        const int a = std::countr_zero(rest);
        const std::uint32_t bit = 1u << a;
        const double v = t[s | bit] - t[s] + g[r ^ bit][s];
        if (v > best) {
          best = v;
          best_a = a;
        }
      }
      h[s] = best;
      h_arg[r][s] = best_a;
    }
    SupersetMax(h, g_arg[r], n);
  }

  for (std::uint32_t a = 1; a < count; ++a) {
    const double lhs_minus_mu = g[a][0];
    const double rhs_lambda = params.lambda * t[a];
    if (lhs_minus_mu <= rhs_lambda + Slack(rhs_lambda)) continue;

    ChainCounterexample cx;
    std::uint32_t r = a;
    std::uint32_t s = 0;
    double lhs = 0.0;
    while (r != 0) {
      const std::uint32_t next = g_arg[r][s];
      const int elem = h_arg[r][next];
      const std::uint32_t bit = 1u << elem;
      lhs += t[next | bit] - t[next];
      cx.a.push_back(elem);
      cx.chain.push_back(MaskToIndices(next));
      r ^= bit;
      s = next;
    }
    const std::uint32_t b = g_arg[0][s];
    cx.b = MaskToIndices(b);
    cx.lhs = lhs;
    cx.rhs = params.lambda * t[a] + params.mu * t[b];
    return cx;
  }
  return std::nullopt;
}

namespace {

// Calls visit(s, r, lhs) for every pair, where lhs is the summed
// marginal of the elements of s on top of r.
template <typename Visit>
void ForEachLocalPair(const std::vector<double>& t, int n, Visit visit) {
  const std::uint32_t count = 1u << n;
  std::vector<double> marg(n);
  std::vector<double> lhs(count);
  for (std::uint32_t r = 0; r < count; ++r) {
    for (int e = 0; e < n; ++e) marg[e] = t[r | (1u << e)] - t[r];
    lhs[0] = 0.0;
    for (std::uint32_t s = 1; s < count; ++s) {
      const int low = std::countr_zero(s);
      lhs[s] = lhs[s & (s - 1)] + marg[low];
      if (!visit(s, r, lhs[s])) return;
    }
  }
}

}  // namespace

std::optional<LocalCounterexample> VerifyLocalSmoothness(
    const SetCostFunction& f, std::span<const Member> ground,
    const SmoothnessParams& params, int n_max) {
  CheckSize(ground.size(), n_max);
  params.Validate();
  const int n = static_cast<int>(ground.size());
  const std::vector<double> t = Tabulate(f, ground);
  std::optional<LocalCounterexample> found;
  ForEachLocalPair(t, n, [&](std::uint32_t s, std::uint32_t r, double lhs) {
    const double rhs = params.lambda * t[s] + params.mu * t[r];
    if (lhs <= rhs + Slack(rhs)) return true;
    found = LocalCounterexample{MaskToIndices(s), MaskToIndices(r), lhs, rhs};
    return false;
  });
  return found;
}

double MinimalLocalLambda(const SetCostFunction& f,
                          std::span<const Member> ground, double mu,
                          int n_max) {
  CheckSize(ground.size(), n_max);
  const int n = static_cast<int>(ground.size());
  const std::vector<double> t = Tabulate(f, ground);
  double lambda = 0.0;
  ForEachLocalPair(t, n, [&](std::uint32_t s, std::uint32_t r, double lhs) {
    const double excess = lhs - mu * t[r];
    if (excess <= Slack(mu * t[r])) return true;
    if (t[s] <= 0.0) {
      lambda = std::numeric_limits<double>::infinity();
      return false;
    }
    lambda = std::max(lambda, excess / t[s]);
    return true;
  });
  return lambda;
}

BOfK ComputeBOfK(int k, double a) {
  if (k < 1) throw InputError("compute_b_of_k needs k >= 1");
  if (!(a > 0.0 && a <= 1.0)) throw InputError("compute_b_of_k needs 0 < a <= 1");
  // With a <= 1 the root satisfies z0 >= 1 because H(1) = 2^(k-1) >= a.
  double lo = 1.0;
  double hi = 2.0;
  int guard = 0;
  while (H(k, hi) > a) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 2000) throw NumericError("no bracket for z0");
  }
  if (H(k, lo) == a) hi = lo;
  int steps = 0;
  while ((hi - lo) > 1e-12 * hi) {
    if (++steps > 200) throw NumericError("bisection for z0 did not converge");
    const double mid = 0.5 * (lo + hi);
    if (H(k, mid) > a) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  BOfK out;
  out.z0 = 0.5 * (lo + hi);
  out.b = std::pow(1.0 + out.z0, k - 1) * (1.0 + out.z0 / (k + 1));
  return out;
}

SmoothnessParams PolyParamsForMu(int k, double mu) {
  if (k < 1) throw InputError("polynomial degree must be at least 1");
  if (k >= 2 && !(mu > 0.0)) {
    throw InputError("degree >= 2 needs a positive mu");
  }
  if (!(mu < 1.0)) throw InputError("mu must be below 1");
  SmoothnessParams p;
  p.lambda = 1.0;
  p.mu = k == 1 ? std::max(mu, 0.0) : mu;
  for (int t = 2; t <= k; ++t) {
    // Monomial y^t: convexity plus the b(t-1) inequality with coefficient
    // a gives lambda = t b(t-1), mu = (t-1) a.
    const double a = std::min(1.0, mu / (t - 1));
    p.lambda = std::max(p.lambda, t * ComputeBOfK(t - 1, a).b);
  }
  p.provenance = Provenance::kAnalytic;
  p.source = "poly_b_of_k(k=" + std::to_string(k) + ")";
  return p;
}

SmoothnessParams ComputePolyParams(int k, PolyVariant variant,
                                   bool self_check) {
  if (k < 1) throw InputError("polynomial degree must be at least 1");
  double mu = 0.0;
  if (k >= 2) {
    mu = variant == PolyVariant::kStandard
             ? (k - 1.0) / k
             : (k - 1.0) / (k * std::log(static_cast<double>(k)));
  }
  if (variant == PolyVariant::kLogScaled && mu >= 1.0) {
    throw NumericError("log-scaled mu is not below 1 for this degree");
  }
  SmoothnessParams p = PolyParamsForMu(k, mu);
  if (self_check) {
    class Power : public SetCostFunction {
     public:
      explicit Power(int t) : t_(t) {}
      double Evaluate(std::span<const Member> m) const override {
        double load = 0.0;
        for (const Member& x : m) load += x.weight;
        return std::pow(load, t_);
      }
      CostKind kind() const override { return CostKind::kCustom; }

     private:
      int t_;
    };
    const auto ground = UnitGround(8);
    for (int t = 1; t <= k; ++t) {
      if (VerifySmoothness(Power(t), ground, p)) {
        throw NumericError("computed polynomial params fail enumeration at t=" +
                           std::to_string(t));
      }
    }
  }
  return p;
}

}  // namespace smoothpd
