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
#include "smoothpd/greedy.h"

#include <bit>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "smoothpd/errors.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {

GreedyState::GreedyState(const GeneralInstance& instance)
    : instance_(&instance),
      users_(instance.resources.size()),
      resource_cost_(instance.resources.size()),
      chosen_(instance.requests.size(), -1),
      request_marginal_(instance.requests.size(), 0.0) {
  for (std::size_t e = 0; e < instance.resources.size(); ++e) {
    resource_cost_[e] = instance.resources[e].cost->Evaluate({});
    empty_offset_ += resource_cost_[e];
  }
  primal_ = empty_offset_;
}

double GreedyState::MarginalOn(int e, const Member& m) const {
  std::vector<Member> with = users_[e];
  with.push_back(m);
  return instance_->resources[e].cost->Evaluate(with) - resource_cost_[e];
}

double GreedyState::StrategyMarginal(const Request& r, int j) const {
  double total = 0.0;
  for (const ResourceUse& u : r.strategies[j].uses) {
    total += MarginalOn(u.resource.value, {r.id.value, u.amount});
  }
  return total;
}

std::pair<int, double> GreedyState::Step(const Request& r) {
  const int i = r.id.value;
  if (i < 0 || static_cast<std::size_t>(i) >= chosen_.size()) {
    throw InputError("unknown request id " + std::to_string(i));
  }
  if (chosen_[i] >= 0) {
    throw InputError("request " + std::to_string(i) + " already processed");
  }
  // Marginal of i on every resource it could use, frozen now.
  for (const Strategy& s : r.strategies) {
    for (const ResourceUse& u : s.uses) {
      const auto key = std::make_pair(i, u.resource.value);
      if (!marginals_.count(key)) {
        marginals_[key] = MarginalOn(u.resource.value, {i, u.amount});
      }
    }
  }
  int best = 0;
  double best_cost = 0.0;
  for (std::size_t j = 0; j < r.strategies.size(); ++j) {
    double cost = 0.0;
    for (const ResourceUse& u : r.strategies[j].uses) {
      cost += marginals_.at({i, u.resource.value});
    }
    if (j == 0 || cost < best_cost - Tolerance()) {
      best = static_cast<int>(j);
      best_cost = cost;
    }
  }
  for (const ResourceUse& u : r.strategies[best].uses) {
    const int e = u.resource.value;
    users_[e].push_back({i, u.amount});
    const double updated = instance_->resources[e].cost->Evaluate(users_[e]);
    primal_ += updated - resource_cost_[e];
    resource_cost_[e] = updated;
  }
  chosen_[i] = best;
  request_marginal_[i] = best_cost;
  return {best, best_cost};
}

double DualCertificate::Ratio() const {
  if (std::fabs(primal) <= Tolerance() && std::fabs(dual) <= Tolerance()) {
    return 1.0;
  }
  return primal / dual;
}

GreedyResult RunOnline(const GeneralInstance& instance,
                       const SmoothnessParams& params) {
  params.Validate();
  instance.Validate();
  GreedyState state(instance);
  for (const Request& r : instance.requests) state.Step(r);

  DualCertificate cert;
  cert.params = params;
  cert.alpha.resize(instance.requests.size());
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    cert.alpha[i] = state.request_marginal()[i] / params.lambda;
  }
  for (const auto& [key, m] : state.marginals()) {
    cert.beta[key] = m / params.lambda;
  }
  cert.gamma.resize(instance.resources.size());
  double dual = 0.0;
  for (double a : cert.alpha) dual += a;
  for (std::size_t e = 0; e < instance.resources.size(); ++e) {
    cert.gamma[e] = -(params.mu / params.lambda) * state.resource_cost()[e];
    dual += cert.gamma[e];
  }
  // Recompute the primal from scratch so it does not inherit the
  // incremental sums' rounding.
  cert.primal = TotalCost(instance, state.chosen());
  cert.dual = dual;
  cert.empty_offset = state.empty_offset();
  return {state.chosen(), std::move(state), std::move(cert)};
}

std::string DualViolation::Describe() const {
  std::ostringstream out;
  if (constraint == Constraint::kRequest) {
    out << "request constraint violated for request " << request
        << " strategy " << strategy;
  } else {
    out << "configuration constraint violated for resource " << resource
        << " configuration {";
    for (std::size_t k = 0; k < configuration.size(); ++k) {
      out << (k ? "," : "") << configuration[k];
    }
    out << "}";
  }
  out << ": lhs " << lhs << " > rhs " << rhs;
  return out.str();
}

std::optional<DualViolation> CheckDualFeasibility(
    const GeneralInstance& instance, const DualCertificate& cert, int n_max,
    double tol) {
  auto beta = [&](int i, int e) {
    auto it = cert.beta.find({i, e});
    return it == cert.beta.end() ? 0.0 : it->second;
  };
  auto exceeds = [&](double lhs, double rhs) {
    return lhs > rhs + tol * (1.0 + std::fabs(rhs));
  };

  // Candidate users of each resource with their (unique) contribution.
  std::vector<std::vector<Member>> candidates(instance.resources.size());
  for (const Request& r : instance.requests) {
    const int i = r.id.value;
    for (std::size_t j = 0; j < r.strategies.size(); ++j) {
      double rhs = 0.0;
      for (const ResourceUse& u : r.strategies[j].uses) {
        rhs += beta(i, u.resource.value);
        auto& c = candidates[u.resource.index()];
        if (c.empty() || c.back().element != i) c.push_back({i, u.amount});
      }
      const double lhs = cert.alpha.at(i);
      if (exceeds(lhs, rhs)) {
        DualViolation v;
        v.constraint = DualViolation::Constraint::kRequest;
        v.request = i;
        v.strategy = static_cast<int>(j);
        v.lhs = lhs;
        v.rhs = rhs;
        return v;
      }
    }
  }

  for (std::size_t e = 0; e < instance.resources.size(); ++e) {
    const auto& c = candidates[e];
    if (static_cast<int>(c.size()) > n_max) {
      throw SizeError("resource " + std::to_string(e) + " has " +
                      std::to_string(c.size()) +
                      " candidate requests, above the limit " +
                      std::to_string(n_max));
    }
    const SetCostFunction& f = *instance.resources[e].cost;
    const std::vector<double> t = Tabulate(f, c);
    const std::uint32_t count = 1u << c.size();
    std::vector<double> beta_sum(count, 0.0);
    for (std::uint32_t a = 0; a < count; ++a) {
      if (a != 0) {
        const int low = std::countr_zero(a);
        beta_sum[a] = beta_sum[a & (a - 1)] +
                      beta(c[low].element, static_cast<int>(e));
      }
      const double lhs = cert.gamma.at(e) + beta_sum[a];
      if (exceeds(lhs, t[a])) {
        DualViolation v;
        v.constraint = DualViolation::Constraint::kConfiguration;
        v.resource = static_cast<int>(e);
        for (std::size_t k = 0; k < c.size(); ++k) {
          if (a >> k & 1u) v.configuration.push_back(c[k].element);
        }
        v.lhs = lhs;
        v.rhs = t[a];
        return v;
      }
    }
  }
  return std::nullopt;
}

}  // namespace smoothpd
