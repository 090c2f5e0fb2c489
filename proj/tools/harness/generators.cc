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
#include "generators.h"

#include <algorithm>
#include <memory>
#include <numeric>
#include <random>

#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"

namespace smoothpd::tools {
namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen_);
  }
  int Int(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  // k distinct values from {0..n-1}, sorted.
  std::vector<int> Distinct(int n, int k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), gen_);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 gen_;
};

std::vector<double> PolyCoeffs(Rng& rng, int degree) {
  std::vector<double> c(degree + 1, 0.0);
  for (int t = 1; t < degree; ++t) c[t] = rng.Uniform(0.0, 1.0);
  c[degree] = rng.Uniform(0.5, 2.0);
  return c;
}

void CheckSize(bool ok, const char* what) {
  if (!ok) throw InputError(std::string("invalid size: ") + what);
}

}  // namespace

GeneralInstance GenerateGeneral(const GeneralGenSpec& spec) {
  CheckSize(spec.requests >= 0, "requests must be >= 0");
  CheckSize(spec.resources >= 1 || spec.requests == 0, "resources must be >= 1");
  CheckSize(spec.strategies >= 1, "strategies must be >= 1");
  CheckSize(spec.degree >= 1, "degree must be >= 1");
  Rng rng(spec.seed);
  GeneralInstance g;
  for (int e = 0; e < spec.resources; ++e) {
    g.resources.push_back({ResourceId(e), std::make_shared<PolynomialLoadCost>(
                                              PolyCoeffs(rng, spec.degree))});
  }
  for (int i = 0; i < spec.requests; ++i) {
    std::vector<double> amount(spec.resources);
    for (double& a : amount) a = rng.Uniform(1.0, 10.0);
    Request r;
    r.id = RequestId(i);
    const int count = rng.Int(1, spec.strategies);
    for (int s = 0; s < count; ++s) {
      const int size = rng.Int(1, std::min(3, spec.resources));
      std::vector<ResourceUse> uses;
      for (int e : rng.Distinct(spec.resources, size)) {
        uses.push_back({ResourceId(e), amount[e]});
      }
      r.strategies.emplace_back(std::move(uses));
    }
    g.requests.push_back(std::move(r));
  }
  g.Validate();
  return g;
}

CostPtr GenerateCoveringCost(const std::string& family, int n, int degree,
                             std::uint64_t seed) {
  Rng rng(seed);
  auto weights = [&] {
    std::vector<double> w(n);
    for (double& x : w) x = rng.Uniform(1.0, 10.0);
    return w;
  };
  if (family == "polynomial") {
    auto coeffs = PolyCoeffs(rng, degree);
    return std::make_shared<PolynomialLoadCost>(coeffs, weights());
  }
  if (family == "norm_sum") {
    std::vector<NormTerm> terms;
    const int count = rng.Int(2, 3);
    for (int t = 0; t < count; ++t) {
      NormTerm term;
      term.w = rng.Uniform(1.0, 10.0);
      term.order = rng.Int(1, 3);
      if (t > 0 && n > 1) term.subset = rng.Distinct(n, rng.Int(1, n));
      terms.push_back(term);
    }
    return std::make_shared<NormSumCost>(terms);
  }
  if (family == "piecewise_power") {
    return std::make_shared<PiecewisePowerCost>(2, 5.0, 15.0, weights());
  }
  if (family == "submodular") {
    const int shared = rng.Int(2, 4);
    std::vector<std::vector<int>> sets(n);
    std::vector<double> item_weights;
    for (int s = 0; s < shared; ++s) item_weights.push_back(rng.Uniform(1.0, 10.0));
    for (int e = 0; e < n; ++e) {
      for (int s = 0; s < shared; ++s) {
        if (rng.Uniform(0.0, 1.0) < 0.5) sets[e].push_back(s);
      }
      sets[e].push_back(static_cast<int>(item_weights.size()));
      item_weights.push_back(rng.Uniform(1.0, 10.0));
    }
    return std::make_shared<CoverageCost>(sets, item_weights);
  }
  throw InputError("unknown covering family: " + family);
}

CoveringInstance GenerateCovering(const CoveringGenSpec& spec) {
  CheckSize(spec.n >= 1, "n must be >= 1");
  CheckSize(spec.rows >= 0, "rows must be >= 0");
  CheckSize(spec.d >= 1 && spec.d <= spec.n, "need 1 <= d <= n");
  CoveringInstance inst;
  inst.n = spec.n;
  inst.d = spec.d;
  inst.cost = GenerateCoveringCost(spec.family, spec.n, spec.degree, spec.seed);
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  for (int r = 0; r < spec.rows; ++r) {
    CoveringRow row;
    row.id = r;
    double sum = 0.0;
    for (int e : rng.Distinct(spec.n, rng.Int(1, spec.d))) {
      row.b.push_back({e, rng.Uniform(0.25, 2.0)});
      sum += row.b.back().second;
    }
    // Keep the row satisfiable inside the unit box.
    if (sum < 1.2) {
      for (auto& [e, b] : row.b) b *= 1.2 / sum;
    }
    inst.rows.push_back(std::move(row));
  }
  inst.Validate();
  return inst;
}

RoutingInstance GenerateRouting(const RoutingGenSpec& spec) {
  CheckSize(spec.nodes >= 2 || (spec.nodes == 0 && spec.requests == 0),
            "nodes must be >= 2");
  CheckSize(spec.extra_edges >= 0 && spec.requests >= 0 && spec.max_k >= 1,
            "negative counts");
  Rng rng(spec.seed);
  RoutingInstance inst;
  inst.nodes = spec.nodes;
  std::vector<std::pair<int, int>> pairs;
  auto add = [&](int u, int v) {
    if (u > v) std::swap(u, v);
    if (u == v || std::find(pairs.begin(), pairs.end(), std::pair{u, v}) != pairs.end()) {
      return false;
    }
    pairs.push_back({u, v});
    inst.edges.push_back(
        {u, v, std::make_shared<PolynomialLoadCost>(PolyCoeffs(rng, spec.degree))});
    return true;
  };
  for (int v = 1; v < spec.nodes; ++v) add(rng.Int(0, v - 1), v);
  const int max_edges = spec.nodes * (spec.nodes - 1) / 2;
  for (int k = 0; k < spec.extra_edges && static_cast<int>(pairs.size()) < max_edges;) {
    if (add(rng.Int(0, spec.nodes - 1), rng.Int(0, spec.nodes - 1))) ++k;
  }
  for (int i = 0; i < spec.requests; ++i) {
    RoutingRequest r;
    r.s = rng.Int(0, spec.nodes - 1);
    do {
      r.t = rng.Int(0, spec.nodes - 1);
    } while (r.t == r.s);
    r.load.resize(inst.edges.size());
    for (double& p : r.load) p = rng.Uniform(1.0, 10.0);
    const int cap = std::min(spec.max_k, MaxDisjointPaths(inst, r.s, r.t));
    r.k = rng.Int(1, std::max(1, cap));
    inst.requests.push_back(std::move(r));
  }
  inst.Validate();
  return inst;
}

VecSchedInstance GenerateVecSched(const VecSchedGenSpec& spec) {
  CheckSize(spec.machines >= 1 && spec.dims >= 1 && spec.jobs >= 0,
            "need machines >= 1, dims >= 1, jobs >= 0");
  Rng rng(spec.seed);
  VecSchedInstance inst;
  inst.machines = spec.machines;
  inst.dims = spec.dims;
  inst.mode = spec.norm == "inf" ? NormMode::kInfinity : NormMode::kAlpha;
  if (spec.norm != "inf" && spec.norm != "alpha") {
    throw InputError("norm must be alpha or inf");
  }
  inst.alpha = spec.alpha;
  for (int j = 0; j < spec.jobs; ++j) {
    VecJob job;
    job.load.assign(spec.machines, std::vector<double>(spec.dims));
    for (auto& v : job.load) {
      for (double& x : v) x = rng.Uniform(1.0, 10.0);
    }
    inst.jobs.push_back(std::move(job));
  }
  inst.Validate();
  return inst;
}

EnergyInstance GenerateEnergy(const EnergyGenSpec& spec) {
  CheckSize(spec.machines >= 1 && spec.jobs >= 0 && spec.horizon >= 1,
            "need machines >= 1, jobs >= 0, horizon >= 1");
  CheckSize(spec.work_max >= 1.0, "work_max must be >= 1");
  Rng rng(spec.seed);
  EnergyInstance inst;
  inst.eps = spec.eps;
  inst.delta = spec.delta;
  for (int i = 0; i < spec.machines; ++i) {
    if (spec.nonconvex) {
      inst.power.push_back(
          std::make_shared<PiecewisePowerCost>(spec.degree, spec.eps, 3.0 * spec.eps));
    } else {
      std::vector<double> c(spec.degree + 1, 0.0);
      c[spec.degree] = rng.Uniform(0.5, 2.0);
      inst.power.push_back(std::make_shared<PolynomialLoadCost>(c));
    }
  }
  for (int j = 0; j < spec.jobs; ++j) {
    EnergyJob job;
    job.release = rng.Int(0, spec.horizon - 1);
    job.deadline = rng.Int(job.release + 1, spec.horizon);
    job.work.resize(spec.machines);
    for (double& w : job.work) w = rng.Uniform(1.0, spec.work_max);
    if (spec.penalties) job.penalty = rng.Uniform(1.0, spec.penalty_max);
    inst.jobs.push_back(std::move(job));
  }
  inst = WithResolvedLevels(std::move(inst));
  inst.Validate();
  return inst;
}

FacilityInstance GenerateFacility(const FacilityGenSpec& spec) {
  CheckSize(spec.facilities >= 1 && spec.clients >= 0,
            "need facilities >= 1 and clients >= 0");
  Rng rng(spec.seed);
  FacilityInstance inst;
  const int n = spec.facilities + spec.clients;
  inst.clients = spec.clients;
  inst.dist.assign(n, std::vector<double>(n, 0.0));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      inst.dist[a][b] = inst.dist[b][a] = rng.Uniform(1.0, 10.0);
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        inst.dist[a][b] = std::min(inst.dist[a][b], inst.dist[a][k] + inst.dist[k][b]);
      }
    }
  }
  for (int i = 0; i < spec.facilities; ++i) {
    std::vector<double> c(std::max(spec.degree, 1) + 1, 0.0);
    c[1] = rng.Uniform(0.0, 1.0);
    c[spec.degree] += rng.Uniform(0.0, 1.0);
    if (c[spec.degree] == 0.0) c[spec.degree] = 1.0;
    inst.facilities.push_back(
        {rng.Uniform(1.0, 10.0), std::make_shared<PolynomialLoadCost>(c)});
  }
  inst.params = ComputePolyParams(spec.degree, PolyVariant::kStandard);
  inst.Validate();
  return inst;
}

SmoothnessParams GeneralParams(const GeneralInstance& instance) {
  int k = 1;
  for (const Resource& r : instance.resources) {
    const auto* p = dynamic_cast<const PolynomialLoadCost*>(r.cost.get());
    if (!p) throw InputError("analytic params need polynomial resource costs");
    k = std::max(k, p->degree());
  }
  return ComputePolyParams(k, PolyVariant::kStandard);
}

}  // namespace smoothpd::tools
