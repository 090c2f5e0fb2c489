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
#ifndef SMOOTHPD_GREEDY_H_
#define SMOOTHPD_GREEDY_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/smoothness.h"

namespace smoothpd {

class GreedyState {
 public:
  explicit GreedyState(const GeneralInstance& instance);

  // Marginal cost of strategy j of request r against the current sets.
  double StrategyMarginal(const Request& r, int j) const;

  // Picks the cheapest strategy (lowest index on ties), records the
  // marginal of r on every resource of any of its strategies, and adds r
  // to the sets of the chosen strategy. Returns (index, marginal).
  std::pair<int, double> Step(const Request& r);

  const std::vector<std::vector<Member>>& users() const { return users_; }
  const std::vector<double>& resource_cost() const { return resource_cost_; }
  const std::vector<int>& chosen() const { return chosen_; }
  const std::vector<double>& request_marginal() const {
    return request_marginal_;
  }
  // (request, resource) -> marginal cost at the request's arrival.
  const std::map<std::pair<int, int>, double>& marginals() const {
    return marginals_;
  }
  double primal() const { return primal_; }
  // sum_e f_e(empty).
  double empty_offset() const { return empty_offset_; }

 private:
  double MarginalOn(int e, const Member& m) const;

  const GeneralInstance* instance_;
  std::vector<std::vector<Member>> users_;
  std::vector<double> resource_cost_;
  std::vector<int> chosen_;
  std::vector<double> request_marginal_;
  std::map<std::pair<int, int>, double> marginals_;
  double primal_ = 0.0;
  double empty_offset_ = 0.0;
};

struct DualCertificate {
  std::vector<double> alpha;                     // per request
  std::map<std::pair<int, int>, double> beta;    // (request, resource)
  std::vector<double> gamma;                     // per resource
  double primal = 0.0;
  double dual = 0.0;
  double empty_offset = 0.0;
  SmoothnessParams params;

  // primal / dual, 1 when both vanish.
  double Ratio() const;
};

struct GreedyResult {
  Assignment assignment;
  GreedyState state;
  DualCertificate certificate;
};

// Processes the requests in arrival order and builds the certificate:
// alpha_i = marginal / lambda, beta_{i,e} = marginal of i on e at arrival
// / lambda, gamma_e = -(mu/lambda) f_e(A*_e).
GreedyResult RunOnline(const GeneralInstance& instance,
                       const SmoothnessParams& params);

struct DualViolation {
  enum class Constraint { kRequest, kConfiguration };
  Constraint constraint = Constraint::kRequest;
  int request = -1;       // kRequest: (request, strategy)
  int strategy = -1;
  int resource = -1;      // kConfiguration: (resource, configuration)
  std::vector<int> configuration;
  double lhs = 0.0;
  double rhs = 0.0;

  std::string Describe() const;
};

inline constexpr int kDefaultDualNMax = 12;

// alpha_i <= sum_{e in s_ij} beta_{i,e} for every (i, j), and
// gamma_e + sum_{i in A} beta_{i,e} <= f_e(A) for every resource and every
// configuration A of requests that can use it. Throws SizeError when a
// resource has more than n_max candidate requests.
std::optional<DualViolation> CheckDualFeasibility(
    const GeneralInstance& instance, const DualCertificate& cert,
    int n_max = kDefaultDualNMax, double tol = 1e-9);

}  // namespace smoothpd

#endif  // SMOOTHPD_GREEDY_H_
