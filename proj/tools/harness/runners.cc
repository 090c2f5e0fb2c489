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
#include "runners.h"

#include <cmath>
#include <sstream>

#include "generators.h"
#include "smoothpd/apps/oracles.h"
#include "smoothpd/errors.h"
#include "smoothpd/greedy.h"
#include "smoothpd/oracle.h"

namespace smoothpd::tools {
namespace {

constexpr double kRatioSlack = 1e-6;

std::string Num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double SafeRatio(double primal, double opt) {
  if (std::fabs(opt) <= 1e-12) return std::fabs(primal) <= 1e-12 ? 1.0 : kNotAvailable;
  return primal / opt;
}

void CheckRatio(ResultRow& row) {
  if (std::isnan(row.ratio) || std::isnan(row.bound)) return;
  if (row.ratio > row.bound + kRatioSlack) {
    row.Fail("ratio " + Num(row.ratio) + " above bound " + Num(row.bound));
  }
}

std::string PolyLabel(const SmoothnessParams& p) {
  return "lambda/(1-mu) with " + p.source;
}

}  // namespace

void ResultRow::Fail(const std::string& why) {
  ok = false;
  if (!failure.empty()) failure += "; ";
  failure += why;
}

ResultRow RunGreedyCase(const GeneralInstance& instance,
                        const SmoothnessParams& params, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "greedy";
  row.family = "polynomial";
  row.n = static_cast<int>(instance.num_requests());
  const GreedyResult res = RunOnline(instance, params);
  row.primal = res.certificate.primal;
  row.dual = res.certificate.dual;
  row.bound = params.Ratio();
  row.bound_derived = PolyLabel(params);
  const double expect = (1.0 - params.mu) / params.lambda * row.primal -
                        res.certificate.empty_offset / params.lambda;
  if (std::fabs(row.dual - expect) > 1e-9 * (1.0 + std::fabs(row.primal))) {
    row.Fail("certificate identity off by " + Num(row.dual - expect));
  }
  if (opt.oracle) {
    row.opt = OfflineOptGeneral(instance).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    CheckRatio(row);
  }
  row.dual_feasible = "-";
  if (opt.check_dual) {
    try {
      const auto v = CheckDualFeasibility(instance, res.certificate, opt.dual_n_max);
      row.dual_feasible = v ? "no" : "yes";
      if (v) row.Fail("dual infeasible: " + v->Describe());
    } catch (const SizeError&) {
      row.dual_feasible = "SKIPPED";
    }
  }
  row.lemma2_ok = "-";
  return row;
}

ResultRow RunCoveringCase(const CoveringInstance& instance,
                          const CoveringParams& params, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "cover";
  row.family = std::string(CostKindName(instance.cost->kind()));
  row.n = instance.n;
  row.param = "d=" + std::to_string(instance.d);
  const int dual_n = opt.check_dual ? opt.dual_n_max : 0;
  const CoveringRun run = SolveCovering(instance, params, opt.covering,
                                        opt.auto_refine, 3, dual_n);
  row.primal = run.certificate.primal;
  row.dual = run.certificate.dual;
  row.bound = params.RatioBound();
  row.bound_derived = "4*8*ln(1+2d^2)*lambda/(1-mu_alg), lambda=" +
                      Num(params.local.lambda) + " mu_alg=" + Num(params.mu_alg);
  if (!run.feasible) row.Fail("row slack " + Num(run.min_row_slack));
  if (!run.state.diag.monotone) row.Fail("x not monotone");
  if (run.state.diag.rate_trips > 0) {
    row.Fail("rate bound tripped " + std::to_string(run.state.diag.rate_trips) +
             " times");
  }
  row.lemma2_ok = run.lemma.holds ? "yes" : "no";
  if (!run.lemma.holds) row.Fail("lemma gap " + Num(run.lemma.gap));
  if (!opt.check_dual) {
    row.dual_feasible = "-";
  } else if (!run.dual_checked) {
    row.dual_feasible = "SKIPPED";
  } else {
    row.dual_feasible = run.dual_violation ? "no" : "yes";
    if (run.dual_violation) row.Fail("dual: " + run.dual_violation->Describe());
  }
  if (opt.oracle && !instance.rows.empty()) {
    try {
      const GridOpt g = FractionalOptGrid(*instance.cost, instance.n, instance.rows);
      row.opt = g.value;
      row.ratio = SafeRatio(row.primal, g.value);
      CheckRatio(row);
      const double lower = g.LowerBound();
      if (lower > 0.0 && row.primal / lower > row.bound + kRatioSlack) {
        row.Fail("ratio against the slack-adjusted optimum above bound");
      }
    } catch (const SizeError&) {
      row.opt = kNotAvailable;
    }
  }
  return row;
}

ResultRow RunRoutingCase(const RoutingInstance& instance, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "routing";
  row.family = "polynomial";
  row.n = static_cast<int>(instance.requests.size());
  const GeneralInstance general = RoutingToGeneral(instance);
  const SmoothnessParams params = GeneralParams(general);
  const RoutingRun run = RunRouting(instance);
  row.primal = run.cost;
  row.bound = params.Ratio();
  row.bound_derived = PolyLabel(params);
  row.dual_feasible = "-";
  row.lemma2_ok = "-";
  if (opt.check_dual) {
    // The explicit-strategy form carries the certificate.
    const GreedyResult res = RunOnline(general, params);
    row.dual = res.certificate.dual;
    if (std::fabs(res.certificate.primal - run.cost) > 1e-9 * (1.0 + run.cost)) {
      row.Fail("flow best response disagrees with the explicit greedy");
    }
    try {
      const auto v = CheckDualFeasibility(general, res.certificate, opt.dual_n_max);
      row.dual_feasible = v ? "no" : "yes";
      if (v) row.Fail("dual infeasible: " + v->Describe());
    } catch (const SizeError&) {
      row.dual_feasible = "SKIPPED";
    }
  }
  if (opt.oracle) {
    row.opt = OfflineOptGeneral(general).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    CheckRatio(row);
  }
  return row;
}

ResultRow RunVecSchedCase(const VecSchedInstance& instance, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "vecsched";
  row.family = instance.mode == NormMode::kAlpha ? "L_alpha" : "L_inf";
  row.n = static_cast<int>(instance.jobs.size());
  const VecSchedRun run = RunVecSched(instance);
  row.param = instance.mode == NormMode::kAlpha ? "alpha=" + Num(instance.alpha)
                                                : "m=" + std::to_string(instance.machines);
  row.param += " q=" + std::to_string(run.params.q);
  row.primal = run.objective;
  row.bound = run.params.bound;
  row.bound_derived = instance.mode == NormMode::kAlpha
                          ? "(lambda_q/(1-mu_q)*d)^(1/q)"
                          : "(lambda_q/(1-mu_q)*d*m)^(1/q)";
  row.dual_feasible = "-";
  row.lemma2_ok = "-";
  if (opt.oracle) {
    row.opt = VecSchedOpt(instance).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    CheckRatio(row);
  }
  return row;
}

ResultRow RunEnergyCase(const EnergyInstance& instance, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "energy";
  row.family = IsConvexPower(*instance.power[0]) ? "convex" : "nonconvex";
  row.n = static_cast<int>(instance.jobs.size());
  row.param = "eps=" + Num(instance.eps);
  const EnergyRun run = RunEnergy(instance);
  row.primal = run.energy;
  row.dual_feasible = "-";
  row.lemma2_ok = "-";
  try {
    const SmoothnessParams p = EnergyParams(instance);
    row.bound = p.Ratio();
    row.bound_derived = PolyLabel(p);
  } catch (const InputError&) {
    row.bound_derived = "none (non-polynomial power)";
  }
  if (opt.oracle) {
    row.opt = EnergyOpt(instance).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    CheckRatio(row);
  }
  return row;
}

ResultRow RunPrizeCase(const EnergyInstance& instance, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "prize";
  row.family = "convex";
  row.n = static_cast<int>(instance.jobs.size());
  row.param = "eps=" + Num(instance.eps);
  const SmoothnessParams p = EnergyParams(instance);
  const PrizeRun run = RunPrize(instance, p);
  row.primal = run.run.total;
  row.dual = run.dual;
  row.bound = p.Ratio();
  row.bound_derived = PolyLabel(p);
  row.dual_feasible = "-";
  row.lemma2_ok = "-";
  const double expect = run.run.penalties + (1.0 - p.mu) / p.lambda * run.run.energy;
  if (std::fabs(run.dual - expect) > 1e-9 * (1.0 + row.primal)) {
    row.Fail("prize dual identity off by " + Num(run.dual - expect));
  }
  if (opt.oracle) {
    row.opt = PrizeOpt(instance).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    CheckRatio(row);
  }
  return row;
}

ResultRow RunFacilityCase(const FacilityInstance& instance, const CaseOptions& opt) {
  ResultRow row;
  row.algorithm = "facility";
  row.family = "polynomial";
  row.n = instance.clients;
  const FacilityRun run = RunFacility(instance);
  row.primal = run.total;
  row.dual = run.dual;
  row.lemma2_ok = "-";
  const double log_n = std::log(std::max(instance.clients, 1));
  const double scale = log_n + instance.params.Ratio();
  row.bound_derived = "not asserted; C = ratio/(ln n + lambda/(1-mu))";
  for (const FacilityRecord& r : run.records) {
    if (r.gamma[r.facility] > r.cap + 1e-12 * (1.0 + r.cap)) {
      row.Fail("gamma above its cap");
    }
  }
  row.dual_feasible = "-";
  if (opt.check_dual) {
    const auto v = CheckFacilityDual(instance, run, opt.dual_n_max);
    row.dual_feasible = instance.clients > opt.dual_n_max ? "SKIPPED" : (v ? "no" : "yes");
    if (v) row.Fail("dual infeasible: " + v->Describe());
  }
  if (opt.oracle) {
    row.opt = FacilityOpt(instance).value;
    row.ratio = SafeRatio(row.primal, row.opt);
    if (!std::isnan(row.ratio)) row.param = "C=" + Num(row.ratio / scale);
  }
  return row;
}

}  // namespace smoothpd::tools
