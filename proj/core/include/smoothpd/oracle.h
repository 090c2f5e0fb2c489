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
#ifndef SMOOTHPD_ORACLE_H_
#define SMOOTHPD_ORACLE_H_

#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/covering.h"

namespace smoothpd {

struct OfflineOpt {
  double value = 0.0;
  Assignment assignment;
  long long nodes = 0;  // search nodes visited
};

inline constexpr double kMaxOracleProduct = 1e7;

// Exact offline optimum by depth-first search over the strategy product in
// lexicographic order, pruning on the partial cost (a lower bound because
// the costs are monotone and non-negative). Among optimal assignments the
// lexicographically smallest is returned. Throws SizeError if the product
// of strategy counts exceeds 10^7.
OfflineOpt OfflineOptGeneral(const GeneralInstance& instance);

struct GridOpt {
  double value = 0.0;          // min F over feasible grid points
  std::vector<double> x;
  double integral_value = 0.0;  // min f(S) over feasible sets S
  std::vector<int> integral_set;
  double lipschitz_slack = 0.0;  // step * sum_e max marginal of e
  int resolution = 40;

  // Lower bound on the continuous fractional optimum.
  double LowerBound() const;
};

// Grid search over {0, 1/r, ..., 1}^n for min F(x) subject to every row.
// F is multilinear and monotone, so for fixed leading coordinates the last
// one is set to the smallest feasible grid value. Throws SizeError when
// n > max_n, and InfeasibleError if the rows cannot be satisfied.
GridOpt FractionalOptGrid(const SetCostFunction& f, int n,
                          const std::vector<CoveringRow>& rows,
                          int resolution = 40, int max_n = 6);

}  // namespace smoothpd

#endif  // SMOOTHPD_ORACLE_H_
