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
#include "smoothpd/apps/oracles.h"

#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "smoothpd/errors.h"

namespace smoothpd {
namespace {

constexpr double kMaxEnumeration = 1e7;

// Visits every vector in {0..base-1}^n in lexicographic order.
void Odometer(int n, int base, const std::function<void(const std::vector<int>&)>& visit) {
  if (std::pow(static_cast<double>(base), n) > kMaxEnumeration) {
    throw SizeError("exhaustive search exceeds 10^7 candidates");
  }
  std::vector<int> v(n, 0);
  while (true) {
    visit(v);
    int k = n - 1;
    while (k >= 0 && ++v[k] == base) v[k--] = 0;
    if (k < 0) return;
  }
}

}  // namespace

double BruteForceRouteMarginal(const RoutingInstance& instance,
                               const std::vector<double>& edge_load,
                               const RoutingRequest& request) {
  const auto paths = EnumerateSimplePaths(instance, request.s, request.t);
  std::vector<double> cost(instance.edges.size());
  for (std::size_t e = 0; e < cost.size(); ++e) {
    const auto& f = *instance.edges[e].cost;
    cost[e] = f.Shape(edge_load[e] + request.load[e]) - f.Shape(edge_load[e]);
  }
  double best = std::numeric_limits<double>::infinity();
  std::vector<char> taken(instance.edges.size(), 0);
  std::function<void(std::size_t, int, double)> pick = [&](std::size_t from, int left,
                                                           double acc) {
    if (left == 0) {
      best = std::min(best, acc);
      return;
    }
    for (std::size_t p = from; p < paths.size(); ++p) {
      bool clash = false;
      double add = 0.0;
      for (int e : paths[p]) {
        clash = clash || taken[e];
        add += cost[e];
      }
      if (clash) continue;
      for (int e : paths[p]) taken[e] = 1;
      pick(p + 1, left - 1, acc + add);
      for (int e : paths[p]) taken[e] = 0;
    }
  };
  pick(0, request.k, 0.0);
  if (!std::isfinite(best)) throw InfeasibleError("not enough edge-disjoint paths");
  return best;
}

EnergyProfile BruteForceEnergyResponse(const EnergyInstance& instance,
                                       const std::vector<double>& speed, int j,
                                       int i) {
  const EnergyJob& job = instance.jobs.at(j);
  const int w = job.deadline - job.release;
  const int units = instance.Units(j, i);
  const auto& power = *instance.power[i];
  EnergyProfile best;
  best.increase = std::numeric_limits<double>::infinity();
  Odometer(w, instance.levels + 1, [&](const std::vector<int>& v) {
    int total = 0;
    for (int n : v) total += n;
    if (total < units) return;
    double inc = 0.0;
    for (int t = 0; t < w; ++t) {
      const double u = speed[job.release + t];
      inc += instance.delta * (power.Shape(u + v[t] * instance.eps) - power.Shape(u));
    }
    if (inc < best.increase) {
      best.increase = inc;
      best.units.assign(instance.horizon(), 0);
      for (int t = 0; t < w; ++t) best.units[job.release + t] = v[t];
    }
  });
  if (!std::isfinite(best.increase)) throw InfeasibleError("no feasible profile");
  return best;
}

AppOpt VecSchedOpt(const VecSchedInstance& instance) {
  instance.Validate();
  AppOpt best;
  best.value = std::numeric_limits<double>::infinity();
  Odometer(static_cast<int>(instance.jobs.size()), instance.machines,
           [&](const std::vector<int>& a) {
             const double v = VecSchedObjective(instance, VecSchedLoads(instance, a));
             if (v < best.value) {
               best.value = v;
               best.assignment = a;
             }
           });
  return best;
}

double MachineSubsetEnergy(const EnergyInstance& instance, int i,
                           const std::vector<int>& jobs) {
  const int h = instance.horizon();
  // Energy only depends on the final per-slot units, so the search keeps
  // the set of reachable load vectors job by job.
  std::set<std::vector<int>> states{std::vector<int>(h, 0)};
  for (int j : jobs) {
    const EnergyJob& job = instance.jobs[j];
    const int units = instance.Units(j, i);
    std::set<std::vector<int>> next;
    for (const auto& s : states) {
      std::vector<int> cur = s;
      std::function<void(int, int)> place = [&](int t, int left) {
        if (t == job.deadline - 1) {
          if (left > instance.levels) return;
          cur[t] += left;
          next.insert(cur);
          cur[t] -= left;
          return;
        }
        for (int n = 0; n <= std::min(left, instance.levels); ++n) {
          cur[t] += n;
          place(t + 1, left - n);
          cur[t] -= n;
        }
      };
      place(job.release, units);
      if (static_cast<double>(next.size()) > kMaxEnumeration) {
        throw SizeError("machine profile search exceeds 10^7 states");
      }
    }
    if (next.empty()) throw InfeasibleError("job does not fit the speed grid");
    states = std::move(next);
  }
  const auto& power = *instance.power[i];
  const double idle = power.Shape(0.0);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : states) {
    double e = 0.0;
    for (int n : s) e += instance.delta * (power.Shape(n * instance.eps) - idle);
    best = std::min(best, e);
  }
  return best;
}

namespace {

// table[i][mask]: least energy of the job subset mask on machine i.
std::vector<std::vector<double>> SubsetTables(const EnergyInstance& instance) {
  const int n = static_cast<int>(instance.jobs.size());
  if (n > 20) throw SizeError("too many jobs for the subset oracle");
  std::vector<std::vector<double>> table(instance.machines(),
                                         std::vector<double>(std::size_t{1} << n));
  for (int i = 0; i < instance.machines(); ++i) {
    for (std::size_t mask = 0; mask < table[i].size(); ++mask) {
      std::vector<int> jobs;
      for (int j = 0; j < n; ++j) {
        if (mask >> j & 1) jobs.push_back(j);
      }
      table[i][mask] = MachineSubsetEnergy(instance, i, jobs);
    }
  }
  return table;
}

AppOpt EnergyLikeOpt(const EnergyInstance& instance, bool allow_reject) {
  instance.Validate();
  const auto table = SubsetTables(instance);
  const int m = instance.machines();
  AppOpt best;
  best.value = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> masks(m);
  Odometer(static_cast<int>(instance.jobs.size()), allow_reject ? m + 1 : m,
           [&](const std::vector<int>& a) {
             std::fill(masks.begin(), masks.end(), 0);
             double v = 0.0;
             for (std::size_t j = 0; j < a.size(); ++j) {
               if (a[j] == m) {
                 v += instance.jobs[j].penalty;
               } else {
                 masks[a[j]] |= std::size_t{1} << j;
               }
             }
             for (int i = 0; i < m; ++i) v += table[i][masks[i]];
             if (v < best.value) {
               best.value = v;
               best.assignment = a;
             }
           });
  for (int& i : best.assignment) {
    if (i == m) i = -1;
  }
  return best;
}

}  // namespace

AppOpt EnergyOpt(const EnergyInstance& instance) {
  return EnergyLikeOpt(instance, false);
}

AppOpt PrizeOpt(const EnergyInstance& instance) {
  return EnergyLikeOpt(instance, true);
}

AppOpt FacilityOpt(const FacilityInstance& instance) {
  instance.Validate();
  AppOpt best;
  best.value = std::numeric_limits<double>::infinity();
  Odometer(instance.clients, static_cast<int>(instance.facilities.size()),
           [&](const std::vector<int>& a) {
             const double v = FacilityCost(instance, a);
             if (v < best.value) {
               best.value = v;
               best.assignment = a;
             }
           });
  return best;
}

}  // namespace smoothpd
