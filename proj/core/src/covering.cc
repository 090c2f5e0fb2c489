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
#include "smoothpd/covering.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <sstream>

#include "smoothpd/errors.h"

namespace smoothpd {
namespace {

constexpr double kExpCap = 700.0;

double CoverOf(const CoveringRow& row, const std::vector<double>& x) {
  double s = 0.0;
  for (const auto& [e, b] : row.b) s += b * std::min(x[e], 1.0);
  return s;
}

}  // namespace

double CoveringRow::Coef(int e) const {
  auto it = std::lower_bound(
      b.begin(), b.end(), e,
      [](const std::pair<int, double>& p, int key) { return p.first < key; });
  return it != b.end() && it->first == e ? it->second : 0.0;
}

void ValidateRow(const CoveringRow& row, int n, int d) {
  if (static_cast<int>(row.b.size()) > d) {
    throw InputError("row " + std::to_string(row.id) + " has " +
                     std::to_string(row.b.size()) +
                     " entries, above the sparsity bound d=" +
                     std::to_string(d));
  }
  if (row.b.empty()) {
    throw InputError("row " + std::to_string(row.id) + " is empty");
  }
  for (std::size_t k = 0; k < row.b.size(); ++k) {
    const auto& [e, b] = row.b[k];
    if (e < 0 || e >= n) {
      throw InputError("row " + std::to_string(row.id) +
                       " references unknown resource " + std::to_string(e));
    }
    if (!(b > 0.0) || !std::isfinite(b)) {
      throw InputError("row " + std::to_string(row.id) +
                       " has a non-positive coefficient");
    }
    if (k > 0 && row.b[k - 1].first >= e) {
      throw InputError("row " + std::to_string(row.id) +
                       " is unsorted or repeats a resource");
    }
  }
}

void CoveringInstance::Validate() const {
  if (n < 0) throw InputError("negative resource count");
  if (d < 1) throw InputError("row sparsity d must be at least 1");
  if (!cost) throw InputError("covering instance has no cost");
  for (const CoveringRow& r : rows) ValidateRow(r, n, d);
}

double CoveringCertificate::Ratio() const {
  if (std::fabs(primal) <= 1e-12 && std::fabs(dual) <= 1e-12) return 1.0;
  return primal / dual;
}

std::string CoveringDualViolation::Describe() const {
  std::ostringstream out;
  if (constraint == 1) {
    out << "alpha mass on resource " << resource << " exceeds beta";
  } else {
    out << "set constraint violated for {";
    for (std::size_t k = 0; k < set.size(); ++k) {
      out << (k ? "," : "") << set[k];
    }
    out << "}";
  }
  out << ": lhs " << lhs << " > rhs " << rhs;
  return out.str();
}

CoveringSolver::CoveringSolver(CostPtr f, int n, int d,
                               const CoveringParams& params,
                               const CoveringOptions& options)
    : f_(f), n_(n), params_(params), options_(options), ml_(f, n) {
  if (d < 1) throw InputError("row sparsity d must be at least 1");
  if (!(options.dtau > 0.0)) throw InputError("dtau must be positive");
  params_.local.Validate();
  state_.x.assign(n, 0.0);
  state_.saturated.assign(n, 0);
  state_.dtau = options.dtau;
  state_.d = d;
  dual_load_.assign(n, 0.0);
  StartEpoch();
}

double CoveringSolver::Truncation(int row,
                                  const std::vector<char>& saturated) const {
  double c = 1.0;
  for (const auto& [e, b] : state_.rows[row].b) {
    if (saturated[e]) c -= b;
  }
  return std::max(c, 0.0);
}

void CoveringSolver::StartEpoch() {
  Epoch ep;
  ep.id = static_cast<int>(state_.epochs.size());
  for (int e = 0; e < n_; ++e) {
    if (state_.saturated[e]) ep.saturated.push_back(e);
  }
  state_.epochs.push_back(std::move(ep));
  epoch_c_.resize(state_.rows.size());
  for (std::size_t i = 0; i < state_.rows.size(); ++i) {
    epoch_c_[i] = Truncation(static_cast<int>(i), state_.saturated);
  }
}

double CoveringSolver::Primal() const {
  return ml_.Value(FractionalPoint(state_.x));
}

void CoveringSolver::ProcessConstraint(const CoveringRow& row) {
  ValidateRow(row, n_, state_.d);
  const int k = static_cast<int>(state_.rows.size());
  state_.rows.push_back(row);
  epoch_c_.push_back(Truncation(k, state_.saturated));

  const double lambda = params_.local.lambda;
  const double log_factor = params_.log_factor;
  const double inv_d = 1.0 / state_.d;
  const double rate_cap = 2.0 + options_.rate_slack_factor * options_.dtau;
  CoveringDiagnostics& diag = state_.diag;

  struct Active {
    int e;
    double b;  // b_{k,e,A*}
  };
  std::vector<Active> act;
  std::vector<double> dx(n_);
  std::vector<double> dec(state_.rows.size());
  bool first = true;

  while (true) {
    const double c = epoch_c_[k];
    if (c <= 1e-12) {
      if (first) ++diag.skipped_rows;
      break;
    }
    act.clear();
    double cover = 0.0;
    for (const auto& [e, b] : row.b) {
      if (state_.saturated[e]) continue;
      const double bt = std::min(b, c);
      act.push_back({e, bt});
      cover += bt * state_.x[e];
    }
    if (cover >= c * (1.0 - 1e-12)) break;
    if (act.empty()) {
      throw InfeasibleError("row " + std::to_string(row.id) +
                            " cannot be satisfied inside [0,1]^n");
    }
    first = false;

    const int cur = static_cast<int>(state_.epochs.size()) - 1;
    const std::vector<double> grad = ml_.Gradient(FractionalPoint(state_.x));
    double gbar = std::numeric_limits<double>::infinity();
    for (const Active& a : act) {
      gbar = std::min(gbar, std::max(grad[a.e], options_.grad_floor));
    }
    const double h = options_.dtau * gbar;

    // Increase step.
    double rate = 0.0;
    double dcover = 0.0;
    double theta = 1.0;
    for (const Active& a : act) {
      const double g = std::max(grad[a.e], options_.grad_floor);
      const double r = (a.b * state_.x[a.e] + inv_d) / g;
      rate += std::max(grad[a.e], 0.0) * r;
      dx[a.e] = h * r;
      dcover += a.b * dx[a.e];
      if (state_.x[a.e] + dx[a.e] >= 1.0) {
        theta = std::min(theta, (1.0 - state_.x[a.e]) / dx[a.e]);
      }
    }
    if (cover + dcover >= c) theta = std::min(theta, (c - cover) / dcover);
    diag.max_rate = std::max(diag.max_rate, rate);
    if (rate > rate_cap) ++diag.rate_trips;

    // Decrease step: for every tight coordinate, move alpha mass off the
    // live row with the largest truncated coefficient on it.
    std::fill(dec.begin(), dec.end(), 0.0);
    for (const Active& a : act) {
      if (dual_load_[a.e] < grad[a.e] / lambda) continue;
      int m = -1;
      double bm = 0.0;
      for (int i = 0; i <= k; ++i) {
        auto it = state_.alpha.find({i, cur});
        if (it == state_.alpha.end() || it->second <= 0.0) continue;
        const double bi = std::min(state_.rows[i].Coef(a.e), epoch_c_[i]);
        if (bi > bm) {
          bm = bi;
          m = i;
        }
      }
      if (m < 0) continue;
      dec[m] += (1.0 / c) * (a.b / bm) / (lambda * log_factor);
    }

    const double dt = theta * h;
    std::vector<std::pair<int, double>> deltas;
    deltas.push_back({k, dt / (c * lambda * log_factor)});
    for (int i = 0; i <= k; ++i) {
      if (dec[i] <= 0.0) continue;
      deltas.push_back({i, -dt * dec[i]});
    }
    // Net change per row, keeping alpha non-negative.
    std::map<int, double> net;
    for (const auto& [i, v] : deltas) net[i] += v;
    for (auto& [i, v] : net) {
      double& slot = state_.alpha[{i, cur}];
      if (slot + v < 0.0) v = -slot;
      slot += v;
      if (v == 0.0) continue;
      const double ci = epoch_c_[i];
      for (const auto& [e, b] : state_.rows[i].b) {
        if (!state_.saturated[e]) dual_load_[e] += std::min(b, ci) * v;
      }
    }

    bool saturated_now = false;
    for (const Active& a : act) {
      const double before = state_.x[a.e];
      double after = before + theta * dx[a.e];
      if (after >= 1.0 - 1e-12) {
        after = 1.0;
        state_.saturated[a.e] = 1;
        saturated_now = true;
      }
      if (after < before) diag.monotone = false;
      state_.x[a.e] = after;
    }
    diag.tau += dt;
    if (++diag.steps > options_.max_steps) {
      std::ostringstream msg;
      msg << "covering step guard fired on row " << row.id << " after "
          << diag.steps << " steps; x =";
      for (double v : state_.x) msg << ' ' << v;
      throw Error(msg.str());
    }
    if (saturated_now) {
      StartEpoch();
      Checkpoint(ml_.Gradient(FractionalPoint(state_.x)));
    } else if (options_.lemma_every > 0 &&
               diag.steps % options_.lemma_every == 0) {
      Checkpoint(grad);
    }
  }
  Checkpoint(ml_.Gradient(FractionalPoint(state_.x)));
}

double CoveringSolver::LemmaRhs(int e, double grad) const {
  const double g = std::max(grad, options_.grad_floor);
  const double scale = params_.local.lambda * params_.log_factor / g;
  std::vector<double> mass(state_.epochs.size(), 0.0);
  std::vector<double> max_b(state_.epochs.size(), 0.0);
  std::vector<char> has_e(state_.epochs.size(), 0);
  for (const Epoch& ep : state_.epochs) {
    has_e[ep.id] = std::binary_search(ep.saturated.begin(),
                                      ep.saturated.end(), e);
  }
  auto truncated = [&](int i, const Epoch& ep) {
    double c = 1.0;
    for (int s : ep.saturated) c -= state_.rows[i].Coef(s);
    return std::min(state_.rows[i].Coef(e), std::max(c, 0.0));
  };
  for (const Epoch& ep : state_.epochs) {
    if (has_e[ep.id]) continue;
    for (std::size_t i = 0; i < state_.rows.size(); ++i) {
      max_b[ep.id] = std::max(max_b[ep.id], truncated(static_cast<int>(i), ep));
    }
  }
  for (const auto& [key, a] : state_.alpha) {
    const auto [i, ep] = key;
    if (has_e[ep] || a == 0.0) continue;
    mass[ep] += truncated(i, state_.epochs[ep]) * a;
  }
  double rhs = 0.0;
  for (const Epoch& ep : state_.epochs) {
    if (has_e[ep.id] || max_b[ep.id] <= 0.0 || mass[ep.id] == 0.0) continue;
    const double expo = std::min(scale * mass[ep.id], kExpCap);
    rhs += std::expm1(expo) / (max_b[ep.id] * state_.d);
  }
  return rhs;
}

void CoveringSolver::Checkpoint(const std::vector<double>& grad) {
  CoveringDiagnostics& diag = state_.diag;
  ++diag.lemma_checks;
  for (int e = 0; e < n_; ++e) {
    const double gap = LemmaRhs(e, grad[e]) - state_.x[e];
    if (gap > diag.lemma_max_gap) {
      diag.lemma_max_gap = gap;
      diag.lemma_worst_resource = e;
    }
  }
}

LemmaReport CoveringSolver::CheckLemmaBound(double tol) const {
  const std::vector<double> grad = ml_.Gradient(FractionalPoint(state_.x));
  LemmaReport rep;
  rep.gap = -std::numeric_limits<double>::infinity();
  for (int e = 0; e < n_; ++e) {
    const double gap = LemmaRhs(e, grad[e]) - state_.x[e];
    if (gap > rep.gap) {
      rep.gap = gap;
      rep.resource = e;
    }
  }
  if (n_ == 0) rep.gap = 0.0;
  rep.holds = rep.gap <= tol;
  return rep;
}

CoveringCertificate CoveringSolver::BuildCertificate() const {
  CoveringCertificate cert;
  const FractionalPoint x(state_.x);
  const double lambda = params_.local.lambda;
  cert.primal = ml_.Value(x);
  cert.beta = ml_.Gradient(x);
  for (double& b : cert.beta) b /= lambda;
  cert.gamma = -(params_.local.mu / lambda) * cert.primal;
  cert.alpha = state_.alpha;
  double dual = cert.gamma;
  for (const auto& [key, a] : state_.alpha) {
    const auto [i, ep] = key;
    double c = 1.0;
    for (int s : state_.epochs[ep].saturated) c -= state_.rows[i].Coef(s);
    dual += std::max(c, 0.0) * a;
  }
  cert.dual = dual;
  return cert;
}

double CoveringSolver::DualTolerance(const CoveringCertificate& cert) const {
  double max_beta = 0.0;
  for (double b : cert.beta) max_beta = std::max(max_beta, std::fabs(b));
  return 1e-6 + 10.0 * state_.dtau * (1.0 + max_beta);
}

std::optional<CoveringDualViolation> CoveringSolver::CheckDual(
    const CoveringCertificate& cert, int n_max) const {
  if (n_ > n_max) {
    throw SizeError("covering dual check limited to " +
                    std::to_string(n_max) + " resources");
  }
  const double tol = DualTolerance(cert);
  std::vector<double> load(n_, 0.0);
  for (const auto& [key, a] : cert.alpha) {
    const auto [i, ep] = key;
    const Epoch& epoch = state_.epochs[ep];
    double c = 1.0;
    for (int s : epoch.saturated) c -= state_.rows[i].Coef(s);
    c = std::max(c, 0.0);
    for (const auto& [e, b] : state_.rows[i].b) {
      if (std::binary_search(epoch.saturated.begin(), epoch.saturated.end(),
                             e)) {
        continue;
      }
      load[e] += std::min(b, c) * a;
    }
  }
  for (int e = 0; e < n_; ++e) {
    if (load[e] > cert.beta[e] + tol) {
      CoveringDualViolation v;
      v.constraint = 1;
      v.resource = e;
      v.lhs = load[e];
      v.rhs = cert.beta[e];
      return v;
    }
  }
  const std::vector<double> t = Tabulate(*f_, UnitGround(n_));
  const std::uint32_t count = 1u << n_;
  std::vector<double> beta_sum(count, 0.0);
  for (std::uint32_t s = 0; s < count; ++s) {
    if (s != 0) {
      beta_sum[s] = beta_sum[s & (s - 1)] + cert.beta[std::countr_zero(s)];
    }
    const double lhs = cert.gamma + beta_sum[s];
    if (lhs > t[s] + tol) {
      CoveringDualViolation v;
      v.constraint = 2;
      for (int e = 0; e < n_; ++e) {
        if (s >> e & 1u) v.set.push_back(e);
      }
      v.lhs = lhs;
      v.rhs = t[s];
      return v;
    }
  }
  return std::nullopt;
}

CoveringRun SolveCovering(const CoveringInstance& instance,
                          const CoveringParams& params,
                          const CoveringOptions& options, bool auto_refine,
                          int max_refinements, int dual_n_max) {
  instance.Validate();
  CoveringOptions opts = options;
  for (int attempt = 0;; ++attempt) {
    CoveringSolver solver(instance.cost, instance.n, instance.d, params, opts);
    for (const CoveringRow& row : instance.rows) solver.ProcessConstraint(row);
    CoveringRun run;
    run.state = solver.state();
    run.certificate = solver.BuildCertificate();
    run.lemma.gap = run.state.diag.lemma_max_gap;
    run.lemma.resource = run.state.diag.lemma_worst_resource;
    run.lemma.holds = run.lemma.gap <= opts.lemma_tol;
    run.min_row_slack = std::numeric_limits<double>::infinity();
    for (const CoveringRow& row : instance.rows) {
      run.min_row_slack =
          std::min(run.min_row_slack, CoverOf(row, run.state.x) - 1.0);
    }
    if (instance.rows.empty()) run.min_row_slack = 0.0;
    run.feasible = run.min_row_slack >= -1e-6;
    run.final_dtau = opts.dtau;
    run.refinements = attempt;
    const bool drift = !run.lemma.holds || run.state.diag.rate_trips > 0;
    if (!auto_refine || !drift || attempt >= max_refinements) {
      if (dual_n_max > 0 && instance.n <= dual_n_max) {
        run.dual_checked = true;
        run.dual_violation = solver.CheckDual(run.certificate, dual_n_max);
      }
      return run;
    }
    opts.dtau *= 0.5;
  }
}

}  // namespace smoothpd
