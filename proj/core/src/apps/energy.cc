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
#include "smoothpd/apps/energy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {
namespace {

constexpr double kMaxDpStates = 1e7;

double SlotCost(const LoadCost& power, double delta, double u, double v) {
  return delta * (power.Shape(u + v) - power.Shape(u));
}

double ProfileIncrease(const EnergyInstance& inst, int i,
                       const std::vector<double>& speed,
                       const std::vector<int>& units) {
  double total = 0.0;
  for (std::size_t t = 0; t < units.size(); ++t) {
    if (units[t] > 0) {
      total += SlotCost(*inst.power[i], inst.delta, speed[t],
                        units[t] * inst.eps);
    }
  }
  return total;
}

EnergyProfile WaterFill(const EnergyInstance& inst, const std::vector<double>& speed,
                        int j, int i, int units) {
  const EnergyJob& job = inst.jobs[j];
  EnergyProfile out;
  out.units.assign(inst.horizon(), 0);
  for (int step = 0; step < units; ++step) {
    int best = -1;
    double level = 0.0;
    for (int t = job.release; t < job.deadline; ++t) {
      if (out.units[t] >= inst.levels) continue;
      const double h = speed[t] + out.units[t] * inst.eps;
      if (best < 0 || h < level - 1e-12 * (1.0 + std::abs(level))) {
        best = t;
        level = h;
      }
    }
    ++out.units[best];
  }
  out.increase = ProfileIncrease(inst, i, speed, out.units);
  return out;
}

EnergyProfile DpResponse(const EnergyInstance& inst, const std::vector<double>& speed,
                         int j, int i, int units) {
  const EnergyJob& job = inst.jobs[j];
  const int w = job.deadline - job.release;
  if (static_cast<double>(w + 1) * (units + 1) > kMaxDpStates) {
    throw SizeError("energy DP state space exceeds 10^7");
  }
  const double inf = std::numeric_limits<double>::infinity();
  // cost[t][k]: cheapest way to place k units in the first t window slots.
  std::vector<std::vector<double>> cost(w + 1, std::vector<double>(units + 1, inf));
  std::vector<std::vector<int>> pick(w + 1, std::vector<int>(units + 1, 0));
  cost[0][0] = 0.0;
  for (int t = 0; t < w; ++t) {
    const double u = speed[job.release + t];
    std::vector<double> slot(std::min(inst.levels, units) + 1);
    for (std::size_t n = 0; n < slot.size(); ++n) {
      slot[n] = SlotCost(*inst.power[i], inst.delta, u, n * inst.eps);
    }
    for (int k = 0; k <= units; ++k) {
      for (int n = 0; n <= std::min<int>(k, slot.size() - 1); ++n) {
        const double c = cost[t][k - n] + slot[n];
        if (c < cost[t + 1][k]) {
          cost[t + 1][k] = c;
          pick[t + 1][k] = n;
        }
      }
    }
  }
  EnergyProfile out;
  out.units.assign(inst.horizon(), 0);
  int k = units;
  for (int t = w; t > 0; --t) {
    out.units[job.release + t - 1] = pick[t][k];
    k -= pick[t][k];
  }
  out.increase = ProfileIncrease(inst, i, speed, out.units);
  return out;
}

// Per machine best responses; returns the winner (lowest index on ties).
int BestMachine(const EnergyInstance& inst,
                const std::vector<std::vector<double>>& speed, int j,
                EnergyMethod method, EnergyProfile* best) {
  int winner = -1;
  for (int i = 0; i < inst.machines(); ++i) {
    EnergyProfile p = EnergyBestResponse(inst, speed[i], j, i, method);
    if (winner < 0 ||
        p.increase < best->increase - Tolerance() * (1.0 + std::abs(best->increase))) {
      winner = i;
      *best = std::move(p);
    }
  }
  return winner;
}

void Apply(const EnergyInstance& inst, std::vector<double>& speed,
           const EnergyProfile& p) {
  for (std::size_t t = 0; t < p.units.size(); ++t) speed[t] += p.units[t] * inst.eps;
}

double TotalEnergy(const EnergyInstance& inst,
                   const std::vector<std::vector<double>>& speed) {
  double e = 0.0;
  for (int i = 0; i < inst.machines(); ++i) {
    e += MachineEnergy(*inst.power[i], inst.delta, speed[i]);
  }
  return e;
}

}  // namespace

int EnergyInstance::horizon() const {
  int h = 0;
  for (const EnergyJob& j : jobs) h = std::max(h, j.deadline);
  return h;
}

int EnergyInstance::Units(int j, int i) const {
  const double p = jobs[j].work[i];
  if (p <= 0.0) return 0;
  return static_cast<int>(std::ceil(p / (delta * eps) - 1e-9));
}

void EnergyInstance::Validate() const {
  if (power.empty()) throw InputError("need at least one machine");
  for (const auto& p : power) {
    if (!p) throw InputError("machine without power function");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) throw InputError("eps must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InputError("delta must be positive");
  }
  if (levels < 1) throw InputError("levels must be resolved to at least 1");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const EnergyJob& job = jobs[j];
    const std::string name = "job " + std::to_string(j);
    if (job.release < 0 || job.release >= job.deadline) {
      throw InputError(name + " needs 0 <= release < deadline");
    }
    if (job.work.size() != power.size()) {
      throw InputError(name + " needs one work value per machine");
    }
    for (int i = 0; i < machines(); ++i) {
      const double p = job.work[i];
      if (!(p >= 0.0) || !std::isfinite(p)) {
        throw InputError(name + " has invalid work");
      }
      if (Units(static_cast<int>(j), i) >
          static_cast<long long>(levels) * (job.deadline - job.release)) {
        throw InputError(name + " does not fit the speed grid");
      }
    }
    if (!(job.penalty >= 0.0)) throw InputError(name + " has a negative penalty");
  }
}

int MinimalLevels(const EnergyInstance& instance) {
  int l = 1;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    for (int i = 0; i < instance.machines(); ++i) {
      l = std::max(l, instance.Units(static_cast<int>(j), i));
    }
  }
  return l;
}

EnergyInstance WithResolvedLevels(EnergyInstance instance) {
  if (instance.levels <= 0) instance.levels = MinimalLevels(instance);
  return instance;
}

bool IsConvexPower(const LoadCost& power) {
  // Non-negative coefficients are enforced at construction.
  return power.kind() == CostKind::kPolynomial;
}

EnergyProfile EnergyBestResponse(const EnergyInstance& instance,
                                 const std::vector<double>& speed, int j,
                                 int i, EnergyMethod method) {
  const EnergyJob& job = instance.jobs.at(j);
  const int units = instance.Units(j, i);
  if (units > static_cast<long long>(instance.levels) * (job.deadline - job.release)) {
    throw InfeasibleError("job " + std::to_string(j) +
                          " cannot finish on the speed grid");
  }
  if (method == EnergyMethod::kAuto) {
    method = IsConvexPower(*instance.power[i]) ? EnergyMethod::kWaterFilling
                                               : EnergyMethod::kDp;
  }
  return method == EnergyMethod::kWaterFilling
             ? WaterFill(instance, speed, j, i, units)
             : DpResponse(instance, speed, j, i, units);
}

double MachineEnergy(const LoadCost& power, double delta,
                     const std::vector<double>& speed) {
  const double idle = power.Shape(0.0);
  double e = 0.0;
  for (double u : speed) e += delta * (power.Shape(u) - idle);
  return e;
}

EnergyRun RunEnergy(const EnergyInstance& instance, EnergyMethod method) {
  instance.Validate();
  EnergyRun run;
  run.speed.assign(instance.machines(), std::vector<double>(instance.horizon(), 0.0));
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    EnergyProfile p;
    const int i = BestMachine(instance, run.speed, static_cast<int>(j), method, &p);
    Apply(instance, run.speed[i], p);
    run.machine.push_back(i);
    run.profiles.push_back(std::move(p));
  }
  run.energy = TotalEnergy(instance, run.speed);
  run.total = run.energy;
  return run;
}

PrizeRun RunPrize(const EnergyInstance& instance,
                  const SmoothnessParams& params, EnergyMethod method) {
  instance.Validate();
  params.Validate();
  for (const EnergyJob& job : instance.jobs) {
    if (!std::isfinite(job.penalty)) {
      throw InputError("prize collecting needs finite penalties");
    }
  }
  PrizeRun out;
  out.params = params;
  EnergyRun& run = out.run;
  run.speed.assign(instance.machines(), std::vector<double>(instance.horizon(), 0.0));
  const double lambda = params.lambda;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    const double pi = instance.jobs[j].penalty;
    EnergyProfile p;
    const int i = BestMachine(instance, run.speed, static_cast<int>(j), method, &p);
    out.min_increase.push_back(p.increase);
    out.alpha.push_back(std::max(pi - p.increase / lambda, 0.0));
    if (p.increase > lambda * pi + Tolerance() * (1.0 + lambda * pi)) {
      run.machine.push_back(-1);
      run.penalties += pi;
      run.profiles.push_back({std::vector<int>(instance.horizon(), 0), 0.0});
    } else {
      Apply(instance, run.speed[i], p);
      run.machine.push_back(i);
      run.profiles.push_back(std::move(p));
    }
  }
  run.energy = TotalEnergy(instance, run.speed);
  run.total = run.energy + run.penalties;
  out.dual = 0.0;
  for (std::size_t j = 0; j < instance.jobs.size(); ++j) {
    out.dual += instance.jobs[j].penalty - out.alpha[j];
  }
  for (int i = 0; i < instance.machines(); ++i) {
    out.gamma.push_back(-(params.mu / lambda) *
                        MachineEnergy(*instance.power[i], instance.delta, run.speed[i]));
    out.dual += out.gamma.back();
  }
  return out;
}

SmoothnessParams EnergyParams(const EnergyInstance& instance) {
  int k = 1;
  for (const auto& p : instance.power) {
    const auto* poly = dynamic_cast<const PolynomialLoadCost*>(p.get());
    if (!poly) {
      throw InputError("analytic params need polynomial power functions");
    }
    k = std::max(k, poly->degree());
  }
  return ComputePolyParams(k, PolyVariant::kStandard);
}

EnergyInstance ParseEnergyInstance(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    EnergyInstance inst;
    for (const json& c : j.at("power")) {
      auto load = std::dynamic_pointer_cast<const LoadCost>(ParseCost(c.dump()));
      if (!load) throw InputError("power functions must be load-based");
      inst.power.push_back(std::move(load));
    }
    inst.eps = j.value("eps", 0.5);
    inst.levels = j.value("levels", 0);
    inst.delta = j.value("delta", 1.0);
    for (const json& jj : j.at("jobs")) {
      EnergyJob job;
      job.release = jj.at("release").get<int>();
      job.deadline = jj.at("deadline").get<int>();
      const json& w = jj.at("work");
      if (w.is_number()) {
        job.work.assign(inst.power.size(), w.get<double>());
      } else {
        job.work = w.get<std::vector<double>>();
      }
      if (jj.contains("penalty") && !jj.at("penalty").is_null()) {
        job.penalty = jj.at("penalty").get<double>();
      }
      inst.jobs.push_back(std::move(job));
    }
    inst = WithResolvedLevels(std::move(inst));
    inst.Validate();
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad energy instance: ") + e.what());
  }
}

std::string EnergyInstanceToJson(const EnergyInstance& inst) {
  using nlohmann::json;
  json power = json::array();
  for (const auto& p : inst.power) power.push_back(json::parse(CostToJson(*p)));
  json jobs = json::array();
  for (const EnergyJob& job : inst.jobs) {
    json jj = {{"release", job.release}, {"deadline", job.deadline}, {"work", job.work}};
    if (std::isfinite(job.penalty)) jj["penalty"] = job.penalty;
    jobs.push_back(jj);
  }
  json j;
  j["power"] = power;
  j["eps"] = inst.eps;
  j["levels"] = inst.levels;
  j["delta"] = inst.delta;
  j["jobs"] = jobs;
  return j.dump();
}

}  // namespace smoothpd
