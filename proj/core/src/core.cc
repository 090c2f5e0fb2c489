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
#include "smoothpd/core.h"

#include <algorithm>
#include <map>
#include <string>

#include "smoothpd/errors.h"

namespace smoothpd {

Strategy::Strategy(std::vector<ResourceUse> u) : uses(std::move(u)) {
  std::sort(uses.begin(), uses.end(),
            [](const ResourceUse& a, const ResourceUse& b) {
              return a.resource < b.resource;
            });
}

double Strategy::AmountOn(ResourceId e) const {
  for (const ResourceUse& u : uses) {
    if (u.resource == e) return u.amount;
  }
  return 0.0;
}

bool Strategy::Uses(ResourceId e) const {
  return std::any_of(uses.begin(), uses.end(),
                     [e](const ResourceUse& u) { return u.resource == e; });
}

void GeneralInstance::Validate() const {
  for (std::size_t e = 0; e < resources.size(); ++e) {
    if (resources[e].id.index() != e) {
      throw InputError("resource ids must be contiguous from 0");
    }
    if (!resources[e].cost) {
      throw InputError("resource " + std::to_string(e) + " has no cost");
    }
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const Request& r = requests[i];
    if (r.id.index() != i) {
      throw InputError("request ids must be contiguous from 0");
    }
    if (r.strategies.empty()) {
      throw InputError("request " + std::to_string(i) + " has no strategies");
    }
    std::map<int, double> seen;
    for (const Strategy& s : r.strategies) {
      if (s.uses.empty()) {
        throw InputError("request " + std::to_string(i) +
                         " has an empty strategy");
      }
      for (const ResourceUse& u : s.uses) {
        if (u.resource.value < 0 ||
            u.resource.index() >= resources.size()) {
          throw InputError("request " + std::to_string(i) +
                           " references unknown resource " +
                           std::to_string(u.resource.value));
        }
        if (!(u.amount >= 0.0)) {
          throw InputError("negative contribution in request " +
                           std::to_string(i));
        }
        auto [it, inserted] = seen.emplace(u.resource.value, u.amount);
        if (!inserted && it->second != u.amount) {
          // The configuration LP gives each (request, resource) pair one
          // dual variable, so the contribution must not depend on the
          // strategy.
          throw InputError("request " + std::to_string(i) +
                           " uses resource " +
                           std::to_string(u.resource.value) +
                           " with different contributions");
        }
      }
    }
  }
}

std::vector<std::vector<Member>> UsersPerResource(
    const GeneralInstance& instance, const Assignment& assignment) {
  if (assignment.size() != instance.requests.size()) {
    throw InputError("assignment covers " + std::to_string(assignment.size()) +
                     " requests, instance has " +
                     std::to_string(instance.requests.size()));
  }
  std::vector<std::vector<Member>> users(instance.resources.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const Request& r = instance.requests[i];
    const int j = assignment[i];
    if (j < 0 || static_cast<std::size_t>(j) >= r.strategies.size()) {
      throw InputError("strategy index " + std::to_string(j) +
                       " out of range for request " + std::to_string(i));
    }
    for (const ResourceUse& u : r.strategies[j].uses) {
      if (u.resource.value < 0 || u.resource.index() >= users.size()) {
        throw InputError("unknown resource in request " + std::to_string(i));
      }
      users[u.resource.index()].push_back(
          {static_cast<int>(i), u.amount});
    }
  }
  return users;
}

double TotalCost(const GeneralInstance& instance,
                 const Assignment& assignment) {
  const auto users = UsersPerResource(instance, assignment);
  double total = 0.0;
  for (std::size_t e = 0; e < users.size(); ++e) {
    total += instance.resources[e].cost->Evaluate(users[e]);
  }
  return total;
}

}  // namespace smoothpd
