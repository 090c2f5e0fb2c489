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
#ifndef SMOOTHPD_APPS_ENERGY_H_
#define SMOOTHPD_APPS_ENERGY_H_

#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "smoothpd/set_function.h"
#include "smoothpd/smoothness.h"

namespace smoothpd {

struct EnergyJob {
  int release = 0;
  int deadline = 1;           // runs in slots release .. deadline-1
  std::vector<double> work;   // p_ij per machine
  double penalty = std::numeric_limits<double>::infinity();
};

// Speeds per slot come from {0, eps, ..., levels * eps}; a slot lasts
// delta time units. Power functions are the shapes of load costs.
struct EnergyInstance {
  std::vector<std::shared_ptr<const LoadCost>> power;
  std::vector<EnergyJob> jobs;
  double eps = 0.5;
  int levels = 0;  // 0 picks the smallest level count that fits any job
  double delta = 1.0;

  int machines() const { return static_cast<int>(power.size()); }
  int horizon() const;
  // Grid units of eps * delta volume needed by job j on machine i.
  int Units(int j, int i) const;
  // Throws InputError on malformed data; levels must be resolved.
  void Validate() const;
};

// Smallest L with L * eps * delta >= max p_ij, so every job fits in a
// single slot.
int MinimalLevels(const EnergyInstance& instance);
EnergyInstance WithResolvedLevels(EnergyInstance instance);

// Polynomial powers with non-negative coefficients are convex; everything
// else goes through the exact DP.
bool IsConvexPower(const LoadCost& power);

enum class EnergyMethod { kAuto, kWaterFilling, kDp };

struct EnergyProfile {
  std::vector<int> units;  // per slot over the whole horizon
  double increase = 0.0;
};

// Cheapest grid profile for job j on machine i against the machine's
// current speeds (per slot). Throws InfeasibleError if the window cannot
// hold the work and SizeError if the DP state space exceeds 10^7.
EnergyProfile EnergyBestResponse(const EnergyInstance& instance,
                                 const std::vector<double>& speed, int j,
                                 int i,
                                 EnergyMethod method = EnergyMethod::kAuto);

// sum_t delta [P(u_t) - P(0)]: energy above idle.
double MachineEnergy(const LoadCost& power, double delta,
                     const std::vector<double>& speed);

struct EnergyRun {
  std::vector<int> machine;  // -1 for rejected jobs
  std::vector<EnergyProfile> profiles;
  std::vector<std::vector<double>> speed;  // [machine][slot]
  double energy = 0.0;
  double penalties = 0.0;
  double total = 0.0;
};

// Every job goes to the machine with the smallest best-response increase
// (lowest index on ties).
EnergyRun RunEnergy(const EnergyInstance& instance,
                    EnergyMethod method = EnergyMethod::kAuto);

struct PrizeRun {
  EnergyRun run;
  std::vector<double> min_increase;
  std::vector<double> alpha;  // max(pi_j - min increase / lambda, 0)
  std::vector<double> gamma;  // -(mu/lambda) final energy per machine
  double dual = 0.0;          // sum_j (pi_j - alpha_j) + sum_i gamma_i
  SmoothnessParams params;
};

// Rejects a job iff its cheapest increase exceeds lambda * pi_j. Requires
// finite penalties.
PrizeRun RunPrize(const EnergyInstance& instance,
                  const SmoothnessParams& params,
                  EnergyMethod method = EnergyMethod::kAuto);

// Largest polynomial degree among the powers mapped to its standard
// params; InputError for non-polynomial powers.
SmoothnessParams EnergyParams(const EnergyInstance& instance);

// {"power":[{...cost...}],"eps":0.5,"levels":0,"delta":1,
//  "jobs":[{"release":0,"deadline":3,"work":[2,3],"penalty":5}]}; a scalar
// "work" applies to every machine.
EnergyInstance ParseEnergyInstance(const std::string& json);
std::string EnergyInstanceToJson(const EnergyInstance& instance);

}  // namespace smoothpd

#endif  // SMOOTHPD_APPS_ENERGY_H_
