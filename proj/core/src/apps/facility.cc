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
#include "smoothpd/apps/facility.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {

std::optional<std::vector<int>> CheckMetric(
    const std::vector<std::vector<double>>& dist, double tol) {
  const std::size_t n = dist.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n) throw InputError("distance matrix is not square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i][i]) > tol) {
      return std::vector<int>{int(i), int(i), int(i)};
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!(dist[i][j] >= 0.0) || !std::isfinite(dist[i][j]) ||
          std::abs(dist[i][j] - dist[j][i]) > tol) {
        return std::vector<int>{int(i), int(j), int(i)};
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (dist[i][k] > dist[i][j] + dist[j][k] + tol * (1.0 + dist[i][k])) {
          return std::vector<int>{int(i), int(j), int(k)};
        }
      }
    }
  }
  return std::nullopt;
}

void FacilityInstance::Validate() const {
  if (facilities.empty()) throw InputError("need at least one facility");
  for (const Facility& f : facilities) {
    if (!(f.opening >= 0.0) || !std::isfinite(f.opening)) {
      throw InputError("opening costs must be finite and non-negative");
    }
    if (!f.serving) throw InputError("facility without serving cost");
  }
  if (clients < 0) throw InputError("negative client count");
  if (dist.size() != facilities.size() + clients) {
    throw InputError("distance matrix must cover facilities and clients");
  }
  if (auto bad = CheckMetric(dist)) {
    std::ostringstream os;
    os << "distances are not a metric at (" << (*bad)[0] << ", " << (*bad)[1]
       << ", " << (*bad)[2] << ")";
    throw InputError(os.str());
  }
  params.Validate();
}

FacilityRun RunFacility(const FacilityInstance& instance,
                        const FacilityOptions& options) {
  instance.Validate();
  const int nf = static_cast<int>(instance.facilities.size());
  const double scale = options.gamma_scale >= 0.0
                           ? options.gamma_scale
                           : instance.params.mu / instance.params.lambda;
  FacilityRun run;
  run.open.assign(nf, 0);
  run.served.assign(nf, {});
  std::vector<double> remaining(nf);
  std::vector<double> value(nf);
  for (int i = 0; i < nf; ++i) {
    remaining[i] = instance.facilities[i].opening;
    value[i] = instance.facilities[i].serving->Evaluate(run.served[i]);
  }

  for (int j = 0; j < instance.clients; ++j) {
    std::vector<double> marginal(nf), cap(nf), level(nf);
    int winner = 0;
    for (int i = 0; i < nf; ++i) {
      auto with = run.served[i];
      with.push_back({j, 1.0});
      marginal[i] = instance.facilities[i].serving->Evaluate(with) - value[i];
      cap[i] = scale * marginal[i];
      level[i] = instance.Distance(i, j) + remaining[i] + cap[i];
      if (level[i] < level[winner] - Tolerance() * (1.0 + level[winner])) {
        winner = i;
      }
    }
    FacilityRecord rec;
    rec.facility = winner;
    rec.alpha = level[winner];
    rec.cap = cap[winner];
    rec.marginal = marginal[winner];
    rec.beta.resize(nf);
    rec.gamma.resize(nf);
    for (int i = 0; i < nf; ++i) {
      const double over = rec.alpha - instance.Distance(i, j);
      rec.beta[i] = std::min(std::max(over, 0.0), remaining[i]);
      rec.gamma[i] = i == winner
                         ? cap[i]
                         : std::min(std::max(over - remaining[i], 0.0), cap[i]);
      remaining[i] -= rec.beta[i];
    }
    // The winner's bids cover its opening cost exactly.
    remaining[winner] = 0.0;
    if (!run.open[winner]) {
      run.open[winner] = 1;
      run.opening_cost += instance.facilities[winner].opening;
    }
    run.connection_cost += instance.Distance(winner, j);
    run.served[winner].push_back({j, 1.0});
    value[winner] += marginal[winner];
    run.records.push_back(std::move(rec));
  }

  run.theta.resize(nf);
  for (int i = 0; i < nf; ++i) {
    const double f = instance.facilities[i].serving->Evaluate(run.served[i]);
    if (run.open[i]) run.serving_cost += f;
    run.theta[i] = -f / instance.params.lambda;
    run.dual += run.theta[i];
  }
  for (const FacilityRecord& r : run.records) run.dual += r.alpha;
  run.total = run.opening_cost + run.connection_cost + run.serving_cost;
  return run;
}

double FacilityCost(const FacilityInstance& instance,
                    const std::vector<int>& assignment) {
  const int nf = static_cast<int>(instance.facilities.size());
  if (assignment.size() != static_cast<std::size_t>(instance.clients)) {
    throw InputError("assignment does not cover the clients");
  }
  std::vector<std::vector<Member>> served(nf);
  double total = 0.0;
  for (int j = 0; j < instance.clients; ++j) {
    const int i = assignment[j];
    if (i < 0 || i >= nf) throw InputError("bad facility index");
    served[i].push_back({j, 1.0});
    total += instance.Distance(i, j);
  }
  for (int i = 0; i < nf; ++i) {
    if (served[i].empty()) continue;
    total += instance.facilities[i].opening +
             instance.facilities[i].serving->Evaluate(served[i]);
  }
  return total;
}

std::string FacilityDualViolation::Describe() const {
  std::ostringstream os;
  os << "facility " << facility;
  if (client >= 0) os << ", client " << client;
  if (!set.empty()) {
    os << ", set {";
    for (std::size_t k = 0; k < set.size(); ++k) os << (k ? "," : "") << set[k];
    os << "}";
  }
  os << ": " << lhs << " > " << rhs;
  return os.str();
}

std::optional<FacilityDualViolation> CheckFacilityDual(
    const FacilityInstance& instance, const FacilityRun& run, int n_max,
    double tol) {
  const int nf = static_cast<int>(instance.facilities.size());
  auto over = [tol](double lhs, double rhs) {
    return lhs > rhs + tol * (1.0 + std::abs(rhs));
  };
  for (int j = 0; j < instance.clients; ++j) {
    const FacilityRecord& r = run.records[j];
    for (int i = 0; i < nf; ++i) {
      const double rhs = instance.Distance(i, j) + r.beta[i] + r.gamma[i];
      if (over(r.alpha, rhs)) return FacilityDualViolation{i, j, {}, r.alpha, rhs};
    }
  }
  for (int i = 0; i < nf; ++i) {
    double bids = 0.0;
    for (const FacilityRecord& r : run.records) bids += r.beta[i];
    if (over(bids, instance.facilities[i].opening)) {
      return FacilityDualViolation{i, -1, {}, bids, instance.facilities[i].opening};
    }
  }
  if (instance.clients > n_max || instance.clients > kMaxTabulatedGround) {
    return std::nullopt;
  }
  const auto ground = UnitGround(instance.clients);
  for (int i = 0; i < nf; ++i) {
    const auto table = Tabulate(*instance.facilities[i].serving, ground);
    for (std::size_t mask = 0; mask < table.size(); ++mask) {
      double lhs = run.theta[i];
      for (int j = 0; j < instance.clients; ++j) {
        if (mask >> j & 1) lhs += run.records[j].gamma[i];
      }
      if (over(lhs, table[mask])) {
        std::vector<int> set;
        for (int j = 0; j < instance.clients; ++j) {
          if (mask >> j & 1) set.push_back(j);
        }
        return FacilityDualViolation{i, -1, set, lhs, table[mask]};
      }
    }
  }
  return std::nullopt;
}

FacilityInstance ParseFacilityInstance(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    FacilityInstance inst;
    int degree = 1;
    bool all_poly = true;
    for (const json& f : j.at("facilities")) {
      Facility fac;
      fac.opening = f.value("opening", 0.0);
      fac.serving = ParseCost(f.at("serving").dump());
      if (const auto* p = dynamic_cast<const PolynomialLoadCost*>(fac.serving.get())) {
        degree = std::max(degree, p->degree());
      } else {
        all_poly = false;
      }
      inst.facilities.push_back(std::move(fac));
    }
    inst.clients = j.at("clients").get<int>();
    inst.dist = j.at("dist").get<std::vector<std::vector<double>>>();
    if (j.contains("params")) {
      const json& p = j.at("params");
      inst.params.lambda = p.at("lambda").get<double>();
      inst.params.mu = p.at("mu").get<double>();
      inst.params.provenance = Provenance::kAsserted;
      inst.params.source = "input";
    } else if (all_poly) {
      inst.params = ComputePolyParams(degree, PolyVariant::kStandard);
    } else {
      throw InputError("non-polynomial serving costs need explicit params");
    }
    inst.Validate();
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad facility instance: ") + e.what());
  }
}

std::string FacilityInstanceToJson(const FacilityInstance& inst) {
  using nlohmann::json;
  json facilities = json::array();
  for (const Facility& f : inst.facilities) {
    facilities.push_back(
        {{"opening", f.opening}, {"serving", json::parse(CostToJson(*f.serving))}});
  }
  json j;
  j["facilities"] = facilities;
  j["clients"] = inst.clients;
  j["dist"] = inst.dist;
  j["params"] = {{"lambda", inst.params.lambda}, {"mu", inst.params.mu}};
  return j.dump();
}

}  // namespace smoothpd
