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
#ifndef SMOOTHPD_APPS_ORACLES_H_
#define SMOOTHPD_APPS_ORACLES_H_

#include <vector>

#include "smoothpd/apps/energy.h"
#include "smoothpd/apps/facility.h"
#include "smoothpd/apps/routing.h"
#include "smoothpd/apps/vector_scheduling.h"

// Exhaustive baselines for the applications. All of them are exponential
// and meant for small inputs only.
namespace smoothpd {

// Cheapest set of k pairwise edge-disjoint simple paths by enumeration.
double BruteForceRouteMarginal(const RoutingInstance& instance,
                               const std::vector<double>& edge_load,
                               const RoutingRequest& request);

// Every profile in {0..L}^window with enough volume.
EnergyProfile BruteForceEnergyResponse(const EnergyInstance& instance,
                                       const std::vector<double>& speed, int j,
                                       int i);

struct AppOpt {
  double value = 0.0;
  std::vector<int> assignment;  // -1 marks rejected jobs
};

// m^n assignments, minimizing the vector-scheduling objective.
AppOpt VecSchedOpt(const VecSchedInstance& instance);

// Least energy to run the given jobs together on machine i, over every
// combination of grid profiles.
double MachineSubsetEnergy(const EnergyInstance& instance, int i,
                           const std::vector<int>& jobs);

// m^n assignments (every job accepted).
AppOpt EnergyOpt(const EnergyInstance& instance);

// (m+1)^n choices: a machine or rejection.
AppOpt PrizeOpt(const EnergyInstance& instance);

// f^n assignments including opening costs.
AppOpt FacilityOpt(const FacilityInstance& instance);

}  // namespace smoothpd

#endif  // SMOOTHPD_APPS_ORACLES_H_
