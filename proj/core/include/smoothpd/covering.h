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
#ifndef SMOOTHPD_COVERING_H_
#define SMOOTHPD_COVERING_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "smoothpd/costlib.h"
#include "smoothpd/multilinear.h"
#include "smoothpd/set_function.h"

namespace smoothpd {

// sum_e b_e x_e >= 1, sparse and sorted by resource.
struct CoveringRow {
  int id = 0;
  std::vector<std::pair<int, double>> b;

  double Coef(int e) const;
};

struct CoveringInstance {
  int n = 0;  // resources
  int d = 1;  // row sparsity bound
  CostPtr cost;
  std::vector<CoveringRow> rows;

  // Throws InputError on non-positive coefficients, unknown resources,
  // rows denser than d, or duplicate entries.
  void Validate() const;
};

void ValidateRow(const CoveringRow& row, int n, int d);

struct CoveringOptions {
  // Step on the normalized clock: each step advances tau by dtau times the
  // smallest active partial derivative, so no coordinate moves by more than
  // about 2 dtau per step.
  double dtau = 1e-4;
  double grad_floor = 1e-12;
  std::int64_t max_steps = 10'000'000;
  // Lemma bound checkpoints, in steps (also run at epoch and row ends).
  int lemma_every = 1000;
  double lemma_tol = 1e-2;
  // Rate diagnostic: sum_e dF/dx_e * dx_e/dtau <= 2 + rate_slack_factor *
  // dtau.
  double rate_slack_factor = 10.0;
};

// A maximal stretch during which the saturated set A* is constant.
struct Epoch {
  int id = 0;
  std::vector<int> saturated;  // A*
};

struct CoveringDiagnostics {
  std::int64_t steps = 0;
  double tau = 0.0;
  double max_rate = 0.0;
  std::int64_t rate_trips = 0;
  double lemma_max_gap = 0.0;  // max over checkpoints of RHS - x_e
  int lemma_worst_resource = -1;
  std::int64_t lemma_checks = 0;
  bool monotone = true;
  int skipped_rows = 0;
};

struct CoveringState {
  std::vector<double> x;
  std::vector<char> saturated;
  std::vector<Epoch> epochs;
  // (row index, epoch id) -> alpha_{i, A} with A the epoch's snapshot.
  std::map<std::pair<int, int>, double> alpha;
  std::vector<CoveringRow> rows;
  double dtau = 1e-4;
  int d = 1;
  CoveringDiagnostics diag;
};

struct LemmaReport {
  bool holds = true;
  int resource = -1;  // resource with the largest gap
  double gap = 0.0;   // max_e (RHS_e - x_e); <= 0 when strict
};

struct CoveringCertificate {
  std::map<std::pair<int, int>, double> alpha;
  std::vector<double> beta;
  double gamma = 0.0;
  double primal = 0.0;
  double dual = 0.0;

  double Ratio() const;
};

struct CoveringDualViolation {
  int constraint = 1;  // 1: per resource, 2: per set
  int resource = -1;
  std::vector<int> set;
  double lhs = 0.0;
  double rhs = 0.0;

  std::string Describe() const;
};

// Online fractional covering driven by the multilinear extension of f.
class CoveringSolver {
 public:
  CoveringSolver(CostPtr f, int n, int d, const CoveringParams& params,
                 const CoveringOptions& options = {});

  // Runs the continuous process for one new row until it is satisfied.
  // Throws InputError for malformed rows and Error if the step guard
  // fires.
  void ProcessConstraint(const CoveringRow& row);

  // Lemma bound at the current point with tolerance tol.
  LemmaReport CheckLemmaBound(double tol) const;

  CoveringCertificate BuildCertificate() const;

  // Both dual constraints; the second enumerates all S, n <= n_max.
  std::optional<CoveringDualViolation> CheckDual(
      const CoveringCertificate& cert, int n_max = 16) const;
  double DualTolerance(const CoveringCertificate& cert) const;

  double Primal() const;
  const CoveringState& state() const { return state_; }
  const CoveringParams& params() const { return params_; }
  const CoveringOptions& options() const { return options_; }

 private:
  double Truncation(int row, const std::vector<char>& saturated) const;
  void StartEpoch();
  double LemmaRhs(int e, double grad) const;
  void Checkpoint(const std::vector<double>& grad);

  CostPtr f_;
  int n_;
  CoveringParams params_;
  CoveringOptions options_;
  Multilinear ml_;
  CoveringState state_;
  // Running sum_i sum_{A not containing e} b_{i,e,A} alpha_{i,A}.
  std::vector<double> dual_load_;
  // c_{i,A*} for every row in the current epoch.
  std::vector<double> epoch_c_;
};

struct CoveringRun {
  CoveringState state;
  CoveringCertificate certificate;
  LemmaReport lemma;
  bool feasible = true;        // every row satisfied to 1e-6
  double min_row_slack = 0.0;  // min_i (sum_e b_{i,e} x_e - 1)
  double final_dtau = 1e-4;
  int refinements = 0;
  // Filled when a dual check was requested and n <= dual_n_max.
  bool dual_checked = false;
  std::optional<CoveringDualViolation> dual_violation;
};

// Runs all rows in order. With auto_refine the run is repeated with dtau
// halved (up to max_refinements times) while the lemma bound or the rate
// diagnostic is out of tolerance. A positive dual_n_max also checks the
// certificate when the instance has at most that many resources.
CoveringRun SolveCovering(const CoveringInstance& instance,
                          const CoveringParams& params,
                          const CoveringOptions& options = {},
                          bool auto_refine = false, int max_refinements = 3,
                          int dual_n_max = 0);

}  // namespace smoothpd

#endif  // SMOOTHPD_COVERING_H_
