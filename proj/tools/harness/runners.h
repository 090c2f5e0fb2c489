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
#ifndef SMOOTHPD_TOOLS_RUNNERS_H_
#define SMOOTHPD_TOOLS_RUNNERS_H_

#include <cstdint>
#include <limits>
#include <string>

#include "smoothpd/apps/energy.h"
#include "smoothpd/apps/facility.h"
#include "smoothpd/apps/routing.h"
#include "smoothpd/apps/vector_scheduling.h"
#include "smoothpd/core.h"
#include "smoothpd/costlib.h"
#include "smoothpd/covering.h"

namespace smoothpd::tools {

inline constexpr double kNotAvailable = std::numeric_limits<double>::quiet_NaN();

// One CSV row. NaN numbers and empty strings print as "-".
struct ResultRow {
  std::string algorithm;
  std::string family;
  std::uint64_t seed = 0;
  int n = 0;
  std::string param;  // d, k or alpha, as "key=value"
  double primal = kNotAvailable;
  double dual = kNotAvailable;
  double opt = kNotAvailable;
  double ratio = kNotAvailable;
  double bound = kNotAvailable;
  std::string bound_derived;  // how the bound constant was obtained
  std::string dual_feasible;  // yes / no / SKIPPED / -
  std::string lemma2_ok;      // yes / no / -
  double runtime_ms = kNotAvailable;
  bool ok = true;
  std::string failure;

  void Fail(const std::string& why);
};

struct CaseOptions {
  bool oracle = true;
  bool check_dual = true;
  int dual_n_max = 12;
  CoveringOptions covering;
  bool auto_refine = false;
};

// Each runner fills the row and marks it failed when an asserted
// invariant breaks: ratio above bound, infeasible dual, broken
// certificate identity or lemma bound.
ResultRow RunGreedyCase(const GeneralInstance& instance,
                        const SmoothnessParams& params, const CaseOptions& opt);
ResultRow RunCoveringCase(const CoveringInstance& instance,
                          const CoveringParams& params, const CaseOptions& opt);
ResultRow RunRoutingCase(const RoutingInstance& instance, const CaseOptions& opt);
ResultRow RunVecSchedCase(const VecSchedInstance& instance, const CaseOptions& opt);
ResultRow RunEnergyCase(const EnergyInstance& instance, const CaseOptions& opt);
ResultRow RunPrizeCase(const EnergyInstance& instance, const CaseOptions& opt);
// The facility ratio is reported together with
// C = ratio / (ln n + lambda/(1-mu)) but not asserted.
ResultRow RunFacilityCase(const FacilityInstance& instance, const CaseOptions& opt);

}  // namespace smoothpd::tools

#endif  // SMOOTHPD_TOOLS_RUNNERS_H_
