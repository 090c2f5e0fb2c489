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
#ifndef SMOOTHPD_TOOLS_GENERATORS_H_
#define SMOOTHPD_TOOLS_GENERATORS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "smoothpd/apps/energy.h"
#include "smoothpd/apps/facility.h"
#include "smoothpd/apps/routing.h"
#include "smoothpd/apps/vector_scheduling.h"
#include "smoothpd/core.h"
#include "smoothpd/covering.h"

// Seeded instance generators. Every draw comes from one mt19937_64 seeded
// with the given seed, so equal specs give identical instances.
namespace smoothpd::tools {

// Polynomial resource costs g(y) = sum_{t=1..degree} c_t y^t with
// c_t ~ U[0,1] below the top degree and c_degree ~ U[0.5,2]. Each request
// draws 1..strategies strategies over 1..min(3, resources) resources;
// contributions are U[1,10], fixed per (request, resource).
struct GeneralGenSpec {
  int requests = 6;
  int resources = 4;
  int strategies = 3;
  int degree = 2;
  std::uint64_t seed = 1;
};
GeneralInstance GenerateGeneral(const GeneralGenSpec& spec);

// Families: "polynomial" (weights U[1,10]), "norm_sum" (2-3 terms, orders
// in {1,2,3}, w ~ U[1,10]), "piecewise_power" (k=2, m1=5, m2=15, weights
// U[1,10]) and "submodular" (weighted coverage where each element owns a
// private item, so the curvature stays below 1). Rows have 1..d distinct
// resources with coefficients U[0.25,2], scaled up to a sum of 1.2 when
// they add up to less so that every row is satisfiable in [0,1]^n.
struct CoveringGenSpec {
  std::string family = "polynomial";
  int n = 4;
  int rows = 6;
  int d = 3;
  int degree = 2;
  std::uint64_t seed = 1;
};
CoveringInstance GenerateCovering(const CoveringGenSpec& spec);
CostPtr GenerateCoveringCost(const std::string& family, int n, int degree,
                             std::uint64_t seed);

// Random spanning tree plus extra edges, polynomial edge costs, per-edge
// loads U[1,10], k ~ U{1..min(max_k, disjoint paths)}.
struct RoutingGenSpec {
  int nodes = 5;
  int extra_edges = 3;
  int requests = 4;
  int max_k = 2;
  int degree = 2;
  std::uint64_t seed = 1;
};
RoutingInstance GenerateRouting(const RoutingGenSpec& spec);

// Loads U[1,10] per machine and dimension.
struct VecSchedGenSpec {
  int machines = 3;
  int dims = 2;
  int jobs = 6;
  std::string norm = "alpha";
  double alpha = 2.0;
  std::uint64_t seed = 1;
};
VecSchedInstance GenerateVecSched(const VecSchedGenSpec& spec);

// Work U[1,work_max] per machine, windows inside [0, horizon), power
// z^degree scaled by U[0.5,2] (or the piecewise power with m1=eps,
// m2=3 eps when nonconvex), penalties U[1,penalty_max] when enabled.
struct EnergyGenSpec {
  int machines = 2;
  int jobs = 5;
  int horizon = 3;
  int degree = 2;
  double eps = 2.0;
  double delta = 1.0;
  double work_max = 10.0;
  bool nonconvex = false;
  bool penalties = false;
  double penalty_max = 100.0;
  std::uint64_t seed = 1;
};
EnergyInstance GenerateEnergy(const EnergyGenSpec& spec);

// Complete graph on facilities and clients with U[1,10] edge weights,
// closed under shortest paths; opening costs U[1,10]; serving costs
// c_1 |S| + c_2 |S|^degree with c ~ U[0,1].
struct FacilityGenSpec {
  int facilities = 3;
  int clients = 6;
  int degree = 2;
  std::uint64_t seed = 1;
};
FacilityInstance GenerateFacility(const FacilityGenSpec& spec);

// Params of the polynomial resource costs of a general instance (max
// degree, standard variant). Throws InputError for other costs.
SmoothnessParams GeneralParams(const GeneralInstance& instance);

}  // namespace smoothpd::tools

#endif  // SMOOTHPD_TOOLS_GENERATORS_H_
