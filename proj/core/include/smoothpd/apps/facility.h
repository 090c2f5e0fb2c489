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
#ifndef SMOOTHPD_APPS_FACILITY_H_
#define SMOOTHPD_APPS_FACILITY_H_

#include <optional>
#include <string>
#include <vector>

#include "smoothpd/set_function.h"
#include "smoothpd/smoothness.h"

namespace smoothpd {

struct Facility {
  double opening = 0.0;  // a_i
  CostPtr serving;       // f_i over client ids
};

// Points 0..F-1 are the facilities, F..F+n-1 the clients in arrival order.
struct FacilityInstance {
  std::vector<Facility> facilities;
  std::vector<std::vector<double>> dist;
  int clients = 0;
  SmoothnessParams params;  // of the serving costs

  double Distance(int facility, int client) const {
    return dist[facility][facilities.size() + client];
  }
  // Throws InputError unless dist is a metric of the right size.
  void Validate() const;
};

struct FacilityRecord {
  int facility = -1;
  double alpha = 0.0;
  std::vector<double> beta;   // per facility
  std::vector<double> gamma;  // per facility
  double cap = 0.0;           // gamma cap of the chosen facility
  double marginal = 0.0;      // serving marginal at the chosen facility
};

struct FacilityRun {
  std::vector<FacilityRecord> records;
  std::vector<char> open;
  std::vector<std::vector<Member>> served;
  std::vector<double> theta;  // -(1/lambda) final serving cost
  double opening_cost = 0.0;
  double connection_cost = 0.0;
  double serving_cost = 0.0;
  double total = 0.0;
  double dual = 0.0;  // sum alpha + sum theta
};

struct FacilityOptions {
  // Multiplier of the serving marginal that caps gamma; negative means
  // mu / lambda.
  double gamma_scale = -1.0;
};

// Event-driven simulation of the continuous bidding. Client j fires at
// facility i at level d_ij + R_i + cap_i, where R_i is the part of a_i
// not yet covered by bids and cap_i the gamma cap; the smallest level
// wins, lowest id on ties.
FacilityRun RunFacility(const FacilityInstance& instance,
                        const FacilityOptions& options = {});

double FacilityCost(const FacilityInstance& instance,
                    const std::vector<int>& assignment);

struct FacilityDualViolation {
  int facility = -1;
  int client = -1;  // -1 for the per-facility constraints
  std::vector<int> set;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string Describe() const;
};

// alpha_j <= d_ij + beta_ij + gamma_ij, sum_j beta_ij <= a_i and
// theta_i + sum_{j in S} gamma_ij <= f_i(S) for every S (when the client
// count is at most n_max; otherwise only the first two).
std::optional<FacilityDualViolation> CheckFacilityDual(
    const FacilityInstance& instance, const FacilityRun& run, int n_max = 12,
    double tol = 1e-9);

// Triangle inequality, symmetry and zero diagonal; returns the first
// offending triple (i, j, k) with d_ik > d_ij + d_jk.
std::optional<std::vector<int>> CheckMetric(
    const std::vector<std::vector<double>>& dist, double tol = 1e-9);

// {"facilities":[{"opening":2,"serving":{...}}],"clients":3,
//  "dist":[[...]],"params":{"lambda":1,"mu":0}}; params default to the
// analytic ones of polynomial serving costs.
FacilityInstance ParseFacilityInstance(const std::string& json);
std::string FacilityInstanceToJson(const FacilityInstance& instance);

}  // namespace smoothpd

#endif  // SMOOTHPD_APPS_FACILITY_H_
