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
#include "smoothpd/apps/routing.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "json.hpp"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"

namespace smoothpd {
namespace {

// Unit-capacity min-cost flow on the bidirected version of the graph.
class FlowNetwork {
 public:
  struct Arc {
    int to;
    int cap;
    double cost;
    int rev;
    int edge;  // -1 for residual reverse arcs
  };

  explicit FlowNetwork(int nodes) : adj_(nodes) {}

  void AddEdge(int e, int u, int v, double cost) {
    AddArc(u, v, cost, e);
    AddArc(v, u, cost, e);
  }

  // Pushes up to limit units from s to t along cheapest paths; returns the
  // amount sent.
  int Push(int s, int t, int limit) {
    const int n = static_cast<int>(adj_.size());
    std::vector<double> pot(n, 0.0);
    int sent = 0;
    const double inf = std::numeric_limits<double>::infinity();
    while (sent < limit) {
      std::vector<double> dist(n, inf);
      std::vector<std::pair<int, int>> prev(n, {-1, -1});
      using Item = std::pair<double, int>;
      std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
      dist[s] = 0.0;
      pq.push({0.0, s});
      while (!pq.empty()) {
        auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[u]) continue;
        for (std::size_t k = 0; k < adj_[u].size(); ++k) {
          const Arc& a = adj_[u][k];
          if (a.cap <= 0) continue;
          // Reduced costs are non-negative up to rounding.
          const double rc = std::max(0.0, a.cost + pot[u] - pot[a.to]);
          if (dist[u] + rc < dist[a.to]) {
            dist[a.to] = dist[u] + rc;
            prev[a.to] = {u, static_cast<int>(k)};
            pq.push({dist[a.to], a.to});
          }
        }
      }
      if (dist[t] == inf) break;
      for (int v = 0; v < n; ++v) {
        if (dist[v] < inf) pot[v] += dist[v];
      }
      for (int v = t; v != s; v = prev[v].first) {
        Arc& a = adj_[prev[v].first][prev[v].second];
        a.cap -= 1;
        adj_[a.to][a.rev].cap += 1;
      }
      ++sent;
    }
    return sent;
  }

  // Net directed use of every edge: +1 for u->v, -1 for v->u, 0 unused.
  std::vector<std::pair<int, int>> FlowArcs() const {
    std::vector<std::pair<int, int>> used;  // (edge, tail)
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      for (const Arc& a : adj_[u]) {
        if (a.edge >= 0 && a.cap == 0) used.push_back({a.edge, static_cast<int>(u)});
      }
    }
    return used;
  }

 private:
  void AddArc(int u, int v, double cost, int e) {
    adj_[u].push_back({v, 1, cost, static_cast<int>(adj_[v].size()), e});
    adj_[v].push_back({u, 0, -cost, static_cast<int>(adj_[u].size()) - 1, -1});
  }

  std::vector<std::vector<Arc>> adj_;
};

double EdgeMarginal(const RoutingEdge& e, double load, double p) {
  return e.cost->Shape(load + p) - e.cost->Shape(load);
}

}  // namespace

void RoutingInstance::Validate() const {
  if (nodes < 0) throw InputError("negative node count");
  for (const RoutingEdge& e : edges) {
    if (e.u < 0 || e.u >= nodes || e.v < 0 || e.v >= nodes) {
      throw InputError("edge endpoint out of range");
    }
    if (e.u == e.v) throw InputError("self loops are not allowed");
    if (!e.cost) throw InputError("edge without cost");
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    const RoutingRequest& r = requests[i];
    if (r.s < 0 || r.s >= nodes || r.t < 0 || r.t >= nodes || r.s == r.t) {
      throw InputError("request " + std::to_string(i) + " has bad endpoints");
    }
    if (r.k < 1) throw InputError("request k must be at least 1");
    if (r.load.size() != edges.size()) {
      throw InputError("request " + std::to_string(i) +
                       " needs one load per edge");
    }
    for (double p : r.load) {
      if (!(p >= 0.0)) throw InputError("edge loads must be non-negative");
    }
    if (MaxDisjointPaths(*this, r.s, r.t) < r.k) {
      throw InfeasibleError("request " + std::to_string(i) + " needs " +
                            std::to_string(r.k) + " edge-disjoint paths");
    }
  }
}

int MaxDisjointPaths(const RoutingInstance& instance, int s, int t) {
  FlowNetwork net(instance.nodes);
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    net.AddEdge(static_cast<int>(e), instance.edges[e].u, instance.edges[e].v,
                0.0);
  }
  return net.Push(s, t, static_cast<int>(instance.edges.size()));
}

RouteChoice RouteBestResponse(const RoutingInstance& instance,
                              const std::vector<double>& edge_load,
                              const RoutingRequest& request) {
  const std::size_t m = instance.edges.size();
  FlowNetwork net(instance.nodes);
  std::vector<double> cost(m);
  for (std::size_t e = 0; e < m; ++e) {
    cost[e] = EdgeMarginal(instance.edges[e], edge_load[e], request.load[e]);
    net.AddEdge(static_cast<int>(e), instance.edges[e].u, instance.edges[e].v,
                cost[e]);
  }
  if (net.Push(request.s, request.t, request.k) < request.k) {
    throw InfeasibleError("not enough edge-disjoint paths");
  }
  // Cancel edges used in both directions; with non-negative costs this
  // never makes the flow worse.
  std::vector<std::vector<int>> dir(m);
  for (const auto& [e, tail] : net.FlowArcs()) dir[e].push_back(tail);
  std::vector<std::vector<std::pair<int, int>>> out(instance.nodes);
  for (std::size_t e = 0; e < m; ++e) {
    if (dir[e].size() != 1) continue;
    const int tail = dir[e][0];
    const RoutingEdge& ed = instance.edges[e];
    out[tail].push_back({static_cast<int>(e), tail == ed.u ? ed.v : ed.u});
  }

  RouteChoice choice;
  std::vector<char> used_arc(m, 0);
  for (int p = 0; p < request.k; ++p) {
    std::vector<int> path;
    std::vector<int> nodes{request.s};
    int at = request.s;
    while (at != request.t) {
      int next_edge = -1;
      int next_node = -1;
      for (const auto& [e, head] : out[at]) {
        if (!used_arc[e]) {
          next_edge = e;
          next_node = head;
          break;
        }
      }
      if (next_edge < 0) throw Error("flow decomposition failed");
      used_arc[next_edge] = 1;
      auto seen = std::find(nodes.begin(), nodes.end(), next_node);
      if (seen != nodes.end()) {
        // Drop the cycle that just closed.
        const std::size_t keep = seen - nodes.begin();
        nodes.resize(keep + 1);
        path.resize(keep);
      } else {
        path.push_back(next_edge);
        nodes.push_back(next_node);
      }
      at = next_node;
    }
    choice.paths.push_back(path);
    for (int e : path) {
      choice.edges.push_back(e);
      choice.marginal += cost[e];
    }
  }
  std::sort(choice.edges.begin(), choice.edges.end());
  return choice;
}

double RoutingCost(const RoutingInstance& instance,
                   const std::vector<double>& edge_load) {
  double total = 0.0;
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    total += instance.edges[e].cost->Shape(edge_load[e]);
  }
  return total;
}

RoutingRun RunRouting(const RoutingInstance& instance) {
  instance.Validate();
  RoutingRun run;
  run.edge_load.assign(instance.edges.size(), 0.0);
  for (const RoutingRequest& r : instance.requests) {
    RouteChoice c = RouteBestResponse(instance, run.edge_load, r);
    for (int e : c.edges) run.edge_load[e] += r.load[e];
    run.choices.push_back(std::move(c));
  }
  run.cost = RoutingCost(instance, run.edge_load);
  return run;
}

std::vector<std::vector<int>> EnumerateSimplePaths(
    const RoutingInstance& instance, int s, int t) {
  std::vector<std::vector<std::pair<int, int>>> adj(instance.nodes);
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    const RoutingEdge& ed = instance.edges[e];
    adj[ed.u].push_back({static_cast<int>(e), ed.v});
    adj[ed.v].push_back({static_cast<int>(e), ed.u});
  }
  std::vector<std::vector<int>> paths;
  std::vector<char> on_path(instance.nodes, 0);
  std::vector<int> edges;
  std::function<void(int)> dfs = [&](int u) {
    if (u == t) {
      std::vector<int> p = edges;
      std::sort(p.begin(), p.end());
      paths.push_back(std::move(p));
      return;
    }
    on_path[u] = 1;
    for (const auto& [e, v] : adj[u]) {
      if (on_path[v]) continue;
      edges.push_back(e);
      dfs(v);
      edges.pop_back();
    }
    on_path[u] = 0;
  };
  dfs(s);
  return paths;
}

GeneralInstance RoutingToGeneral(const RoutingInstance& instance) {
  instance.Validate();
  GeneralInstance g;
  for (std::size_t e = 0; e < instance.edges.size(); ++e) {
    g.resources.push_back(
        {ResourceId(static_cast<int>(e)), instance.edges[e].cost});
  }
  for (std::size_t i = 0; i < instance.requests.size(); ++i) {
    const RoutingRequest& r = instance.requests[i];
    const auto paths = EnumerateSimplePaths(instance, r.s, r.t);
    Request req;
    req.id = RequestId(static_cast<int>(i));
    std::set<std::vector<int>> seen;
    std::vector<int> pick;
    std::function<void(std::size_t, std::vector<char>&)> choose =
        [&](std::size_t from, std::vector<char>& taken) {
          if (static_cast<int>(pick.size()) == r.k) {
            std::vector<int> edges;
            for (int p : pick) {
              edges.insert(edges.end(), paths[p].begin(), paths[p].end());
            }
            std::sort(edges.begin(), edges.end());
            if (!seen.insert(edges).second) return;
            std::vector<ResourceUse> uses;
            for (int e : edges) uses.push_back({ResourceId(e), r.load[e]});
            req.strategies.emplace_back(std::move(uses));
            return;
          }
          for (std::size_t p = from; p < paths.size(); ++p) {
            bool clash = false;
            for (int e : paths[p]) clash = clash || taken[e];
            if (clash) continue;
            for (int e : paths[p]) taken[e] = 1;
            pick.push_back(static_cast<int>(p));
            choose(p + 1, taken);
            pick.pop_back();
            for (int e : paths[p]) taken[e] = 0;
          }
        };
    std::vector<char> taken(instance.edges.size(), 0);
    choose(0, taken);
    g.requests.push_back(std::move(req));
  }
  g.Validate();
  return g;
}

namespace {

using nlohmann::json;

std::shared_ptr<const LoadCost> AsLoadCost(CostPtr c) {
  auto load = std::dynamic_pointer_cast<const LoadCost>(c);
  if (!load) throw InputError("edge costs must be load-based");
  return load;
}

}  // namespace

RoutingInstance ParseRoutingInstance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    RoutingInstance inst;
    inst.nodes = j.at("nodes").get<int>();
    for (const json& e : j.at("edges")) {
      inst.edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                            AsLoadCost(ParseCost(e.at("cost").dump()))});
    }
    for (const json& r : j.at("requests")) {
      RoutingRequest req;
      req.s = r.at("s").get<int>();
      req.t = r.at("t").get<int>();
      req.k = r.value("k", 1);
      if (!r.contains("load") || r.at("load").is_number()) {
        req.load.assign(inst.edges.size(), r.value("load", 1.0));
      } else {
        req.load = r.at("load").get<std::vector<double>>();
      }
      inst.requests.push_back(std::move(req));
    }
    inst.Validate();
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("bad routing instance: ") + e.what());
  }
}

std::string RoutingInstanceToJson(const RoutingInstance& inst) {
  json edges = json::array();
  for (const RoutingEdge& e : inst.edges) {
    edges.push_back(
        {{"u", e.u}, {"v", e.v}, {"cost", json::parse(CostToJson(*e.cost))}});
  }
  json requests = json::array();
  for (const RoutingRequest& r : inst.requests) {
    requests.push_back({{"s", r.s}, {"t", r.t}, {"k", r.k}, {"load", r.load}});
  }
  json j;
  j["nodes"] = inst.nodes;
  j["edges"] = edges;
  j["requests"] = requests;
  return j.dump();
}

}  // namespace smoothpd
