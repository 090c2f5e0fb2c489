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
#ifndef SMOOTHPD_APPS_ROUTING_H_
#define SMOOTHPD_APPS_ROUTING_H_

#include <memory>
#include <string>
#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/set_function.h"

namespace smoothpd {

struct RoutingEdge {
  int u = 0;
  int v = 0;
  std::shared_ptr<const LoadCost> cost;  // f_e on the aggregate load
};

struct RoutingRequest {
  int s = 0;
  int t = 0;
  int k = 1;                 // number of edge-disjoint paths
  std::vector<double> load;  // p_{i,e} per edge
};

struct RoutingInstance {
  int nodes = 0;
  std::vector<RoutingEdge> edges;
  std::vector<RoutingRequest> requests;

  // Throws InputError on malformed data and InfeasibleError if some request
  // does not admit k edge-disjoint paths.
  void Validate() const;
};

struct RouteChoice {
  std::vector<std::vector<int>> paths;  // edge ids from s to t
  std::vector<int> edges;               // union of the paths, sorted
  double marginal = 0.0;
};

// Largest number of edge-disjoint s-t paths.
int MaxDisjointPaths(const RoutingInstance& instance, int s, int t);

// Cheapest k edge-disjoint s-t paths under edge cost
// f_e(load_e + p_e) - f_e(load_e): unit-capacity min-cost flow by
// successive shortest paths with potentials. Throws InfeasibleError.
RouteChoice RouteBestResponse(const RoutingInstance& instance,
                              const std::vector<double>& edge_load,
                              const RoutingRequest& request);

struct RoutingRun {
  std::vector<RouteChoice> choices;
  std::vector<double> edge_load;
  double cost = 0.0;
};

// Online greedy: each request takes its best response against the loads
// so far.
RoutingRun RunRouting(const RoutingInstance& instance);

double RoutingCost(const RoutingInstance& instance,
                   const std::vector<double>& edge_load);

// Every simple s-t path as a sorted edge list (small graphs only).
std::vector<std::vector<int>> EnumerateSimplePaths(
    const RoutingInstance& instance, int s, int t);

// The same problem with every k-tuple of edge-disjoint simple paths as an
// explicit strategy; resources are edges.
GeneralInstance RoutingToGeneral(const RoutingInstance& instance);

// {"nodes":4,"edges":[{"u":0,"v":1,"cost":{...}}],
//  "requests":[{"s":0,"t":3,"k":1,"load":[...]}]}; "load" may be a single
// number applied to every edge.
RoutingInstance ParseRoutingInstance(const std::string& json);
std::string RoutingInstanceToJson(const RoutingInstance& instance);

}  // namespace smoothpd

#endif  // SMOOTHPD_APPS_ROUTING_H_
