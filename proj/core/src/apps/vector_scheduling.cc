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
#include "smoothpd/apps/vector_scheduling.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "smoothpd/errors.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {

void VecSchedInstance::Validate() const {
  if (machines < 1) throw InputError("need at least one machine");
  if (dims < 1) throw InputError("need at least one dimension");
  if (mode == NormMode::kAlpha && !(alpha >= 1.0 && std::isfinite(alpha))) {
    throw InputError("alpha must be a finite number >= 1");
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const auto& load = jobs[j].load;
    if (load.size() != static_cast<std::size_t>(machines)) {
      throw InputError("job " + std::to_string(j) + " needs one load vector per machine");
    }
    for (const auto& v : load) {
      if (v.size() != static_cast<std::size_t>(dims)) {
        throw InputError("job " + std::to_string(j) + " has a load of the wrong dimension");
      }
      for (double x : v) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
          throw InputError("loads must be finite and non-negative");
        }
      }
    }
  }
}

VecSchedParams ComputeVecSchedParams(const VecSchedInstance& instance) {
  instance.Validate();
  VecSchedParams p;
  const double log_d = std::log(static_cast<double>(instance.dims));
  const double raw = instance.mode == NormMode::kAlpha
                         ? instance.alpha + log_d
                         : std::log(static_cast<double>(instance.machines)) + log_d;
  // Snap values that are integral up to rounding before taking the ceiling.
  const double snapped = std::round(raw);
  const double q = std::abs(raw - snapped) < 1e-9 ? snapped : std::ceil(raw);
  p.q = std::max(1, static_cast<int>(q));
  p.poly = ComputePolyParams(p.q, PolyVariant::kStandard);
  double scale = instance.dims;
  if (instance.mode == NormMode::kInfinity) scale *= instance.machines;
  p.bound = std::pow(p.poly.Ratio() * scale, 1.0 / p.q);
  return p;
}

double VecSchedPotential(const VecSchedInstance& instance, int q,
                         const std::vector<std::vector<double>>& loads) {
  double total = 0.0;
  for (int k = 0; k < instance.dims; ++k) {
    if (instance.mode == NormMode::kAlpha) {
      double s = 0.0;
      for (int i = 0; i < instance.machines; ++i) {
        s += std::pow(loads[i][k], instance.alpha);
      }
      total += std::pow(s, q / instance.alpha);
    } else {
      for (int i = 0; i < instance.machines; ++i) {
        total += std::pow(loads[i][k], q);
      }
    }
  }
  return total;
}

double VecSchedObjective(const VecSchedInstance& instance,
                         const std::vector<std::vector<double>>& loads) {
  double best = 0.0;
  for (int k = 0; k < instance.dims; ++k) {
    double v = 0.0;
    if (instance.mode == NormMode::kAlpha) {
      for (int i = 0; i < instance.machines; ++i) {
        v += std::pow(loads[i][k], instance.alpha);
      }
      v = std::pow(v, 1.0 / instance.alpha);
    } else {
      for (int i = 0; i < instance.machines; ++i) v = std::max(v, loads[i][k]);
    }
    best = std::max(best, v);
  }
  return best;
}

int VecScheduleStep(const VecSchedInstance& instance, int q,
                    const std::vector<std::vector<double>>& loads,
                    const VecJob& job) {
  const double before = VecSchedPotential(instance, q, loads);
  int best = 0;
  double best_increase = 0.0;
  auto trial = loads;
  for (int i = 0; i < instance.machines; ++i) {
    for (int k = 0; k < instance.dims; ++k) trial[i][k] += job.load[i][k];
    const double inc = VecSchedPotential(instance, q, trial) - before;
    for (int k = 0; k < instance.dims; ++k) trial[i][k] = loads[i][k];
    const double tol = Tolerance() * (1.0 + std::abs(best_increase));
    if (i == 0 || inc < best_increase - tol) {
      best = i;
      best_increase = inc;
    }
  }
  return best;
}

std::vector<std::vector<double>> VecSchedLoads(
    const VecSchedInstance& instance, const std::vector<int>& assignment) {
  std::vector<std::vector<double>> loads(
      instance.machines, std::vector<double>(instance.dims, 0.0));
  for (std::size_t j = 0; j < assignment.size(); ++j) {
    const int i = assignment[j];
    if (i < 0 || i >= instance.machines) throw InputError("bad machine index");
    for (int k = 0; k < instance.dims; ++k) {
      loads[i][k] += instance.jobs[j].load[i][k];
    }
  }
  return loads;
}

VecSchedRun RunVecSched(const VecSchedInstance& instance) {
  VecSchedRun run;
  run.params = ComputeVecSchedParams(instance);
  run.loads.assign(instance.machines, std::vector<double>(instance.dims, 0.0));
  for (const VecJob& job : instance.jobs) {
    const int i = VecScheduleStep(instance, run.params.q, run.loads, job);
    for (int k = 0; k < instance.dims; ++k) run.loads[i][k] += job.load[i][k];
    run.assignment.push_back(i);
  }
  run.potential = VecSchedPotential(instance, run.params.q, run.loads);
  run.objective = VecSchedObjective(instance, run.loads);
  return run;
}

VecSchedInstance ParseVecSchedInstance(const std::string& text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    VecSchedInstance inst;
    inst.machines = j.at("machines").get<int>();
    inst.dims = j.value("dims", 1);
    const std::string norm = j.value("norm", std::string("alpha"));
    if (norm == "alpha") {
      inst.mode = NormMode::kAlpha;
    } else if (norm == "inf") {
      inst.mode = NormMode::kInfinity;
    } else {
      throw InputError("norm must be alpha or inf");
    }
    inst.alpha = j.value("alpha", 2.0);
    for (const json& jj : j.at("jobs")) {
      VecJob job;
      const json& load = jj.at("load");
      if (!load.empty() && load[0].is_number()) {
        job.load.assign(inst.machines, load.get<std::vector<double>>());
      } else {
        job.load = load.get<std::vector<std::vector<double>>>();
      }
      inst.jobs.push_back(std::move(job));
    }
    inst.Validate();
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad vector scheduling instance: ") + e.what());
  }
}

std::string VecSchedInstanceToJson(const VecSchedInstance& inst) {
  using nlohmann::json;
  json jobs = json::array();
  for (const VecJob& job : inst.jobs) jobs.push_back({{"load", job.load}});
  json j;
  j["machines"] = inst.machines;
  j["dims"] = inst.dims;
  j["norm"] = inst.mode == NormMode::kAlpha ? "alpha" : "inf";
  if (inst.mode == NormMode::kAlpha) j["alpha"] = inst.alpha;
  j["jobs"] = jobs;
  return j.dump();
}

}  // namespace smoothpd
