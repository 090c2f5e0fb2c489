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
#ifndef SMOOTHPD_APPS_VECTOR_SCHEDULING_H_
#define SMOOTHPD_APPS_VECTOR_SCHEDULING_H_

#include <string>
#include <vector>

#include "smoothpd/smoothness.h"

namespace smoothpd {

enum class NormMode { kAlpha, kInfinity };

struct VecJob {
  std::vector<std::vector<double>> load;  // [machine][dimension]
};

struct VecSchedInstance {
  int machines = 1;
  int dims = 1;
  NormMode mode = NormMode::kAlpha;
  double alpha = 2.0;  // ignored for kInfinity
  std::vector<VecJob> jobs;

  void Validate() const;
};

// The potential is a degree-q polynomial-like function of the loads; q is
// ceil(alpha + ln d) for L_alpha and ceil(ln m + ln d) for L_inf, at
// least 1.
struct VecSchedParams {
  int q = 1;
  SmoothnessParams poly;  // params of degree-q polynomials
  double bound = 1.0;     // (ratio * d [* m])^(1/q)
};

VecSchedParams ComputeVecSchedParams(const VecSchedInstance& instance);

// loads is [machine][dimension].
double VecSchedPotential(const VecSchedInstance& instance, int q,
                         const std::vector<std::vector<double>>& loads);

// max_k of the alpha-norm (or max) over machines of the load in
// dimension k.
double VecSchedObjective(const VecSchedInstance& instance,
                         const std::vector<std::vector<double>>& loads);

// Machine whose potential grows least when job is added; lowest index on
// ties.
int VecScheduleStep(const VecSchedInstance& instance, int q,
                    const std::vector<std::vector<double>>& loads,
                    const VecJob& job);

struct VecSchedRun {
  std::vector<int> assignment;
  std::vector<std::vector<double>> loads;
  VecSchedParams params;
  double potential = 0.0;
  double objective = 0.0;
};

VecSchedRun RunVecSched(const VecSchedInstance& instance);

std::vector<std::vector<double>> VecSchedLoads(
    const VecSchedInstance& instance, const std::vector<int>& assignment);

// {"machines":3,"dims":2,"norm":"alpha"|"inf","alpha":2,
//  "jobs":[{"load":[[1,2],[2,1],[3,3]]}]}; a flat "load" applies to
// every machine.
VecSchedInstance ParseVecSchedInstance(const std::string& json);
std::string VecSchedInstanceToJson(const VecSchedInstance& instance);

}  // namespace smoothpd

#endif  // SMOOTHPD_APPS_VECTOR_SCHEDULING_H_
