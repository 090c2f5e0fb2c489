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
#ifndef SMOOTHPD_CORE_H_
#define SMOOTHPD_CORE_H_

#include <compare>
#include <cstddef>
#include <functional>
#include <vector>

#include "smoothpd/set_function.h"

namespace smoothpd {

// Dense integer identifier, contiguous from 0 within an instance.
template <typename Tag>
struct StrongId {
  int value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(int v) : value(v) {}

  constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

using ResourceId = StrongId<struct ResourceTag>;
using RequestId = StrongId<struct RequestTag>;

struct ResourceUse {
  ResourceId resource;
  double amount = 1.0;  // contribution p_{i,e}; 1 for pure membership
};

// A feasible action of a request: the resources it occupies together with
// its contribution on each. Kept sorted by resource id.
struct Strategy {
  std::vector<ResourceUse> uses;

  Strategy() = default;
  explicit Strategy(std::vector<ResourceUse> uses);

  // Contribution on resource e, or 0 if the strategy does not use e.
  double AmountOn(ResourceId e) const;
  bool Uses(ResourceId e) const;
};

struct Request {
  RequestId id;
  std::vector<Strategy> strategies;
};

struct Resource {
  ResourceId id;
  CostPtr cost;
};

// Resources with their cost functions and the request stream in arrival
// order.
struct GeneralInstance {
  std::vector<Resource> resources;
  std::vector<Request> requests;

  // Throws InputError unless ids are contiguous from 0, every request has
  // a non-empty strategy list of non-empty strategies with non-negative
  // contributions referencing declared resources, and each request uses a
  // single contribution per resource across its strategies.
  void Validate() const;

  std::size_t num_resources() const { return resources.size(); }
  std::size_t num_requests() const { return requests.size(); }
};

// Chosen strategy index per request, indexed by RequestId.
using Assignment = std::vector<int>;

// Per-resource user multisets A_e induced by an assignment.
std::vector<std::vector<Member>> UsersPerResource(
    const GeneralInstance& instance, const Assignment& assignment);

// sum_e f_e(A_e). Throws InputError if the assignment does not cover the
// requests or names an out-of-range strategy.
double TotalCost(const GeneralInstance& instance,
                 const Assignment& assignment);

}  // namespace smoothpd

template <typename Tag>
struct std::hash<smoothpd::StrongId<Tag>> {
  std::size_t operator()(smoothpd::StrongId<Tag> id) const noexcept {
    return std::hash<int>{}(id.value);
  }
};

#endif  // SMOOTHPD_CORE_H_
