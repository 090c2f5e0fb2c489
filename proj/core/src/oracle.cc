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
#include "smoothpd/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "smoothpd/errors.h"
#include "smoothpd/greedy.h"
#include "smoothpd/tolerance.h"

namespace smoothpd {
namespace {

class GeneralSearch {
 public:
  explicit GeneralSearch(const GeneralInstance& inst)
      : inst_(inst),
        users_(inst.resources.size()),
        cost_(inst.resources.size()),
        current_(inst.requests.size(), 0) {
    for (std::size_t e = 0; e < cost_.size(); ++e) {
      cost_[e] = inst.resources[e].cost->Evaluate({});
      total_ += cost_[e];
    }
  }

  void Seed(const Assignment& a, double value) {
    best_ = a;
    best_value_ = value;
  }

  void Run() { Dfs(0); }

  OfflineOpt Result() const { return {best_value_, best_, nodes_}; }

 private:
  bool Better(double value) const {
    const double tol = Tolerance() * (1.0 + std::fabs(best_value_));
    if (value < best_value_ - tol) return true;
    return value <= best_value_ + tol && current_ < best_;
  }

  void Dfs(std::size_t i) {
    ++nodes_;
    if (i == inst_.requests.size()) {
      if (Better(total_)) {
        best_ = current_;
        best_value_ = total_;
      }
      return;
    }
    const Request& r = inst_.requests[i];
    for (std::size_t j = 0; j < r.strategies.size(); ++j) {
      current_[i] = static_cast<int>(j);
      const double saved_total = total_;
      std::vector<double> saved;
      saved.reserve(r.strategies[j].uses.size());
      for (const ResourceUse& u : r.strategies[j].uses) {
        const std::size_t e = u.resource.index();
        saved.push_back(cost_[e]);
        users_[e].push_back({r.id.value, u.amount});
        const double v = inst_.resources[e].cost->Evaluate(users_[e]);
        total_ += v - cost_[e];
        cost_[e] = v;
      }
      // Partial cost never decreases further down, so it bounds the leaf.
      const double tol = Tolerance() * (1.0 + std::fabs(best_value_));
      if (total_ <= best_value_ + tol) Dfs(i + 1);
      for (std::size_t k = r.strategies[j].uses.size(); k-- > 0;) {
        const std::size_t e = r.strategies[j].uses[k].resource.index();
        users_[e].pop_back();
        cost_[e] = saved[k];
      }
      total_ = saved_total;
    }
    current_[i] = 0;
  }

  const GeneralInstance& inst_;
  std::vector<std::vector<Member>> users_;
  std::vector<double> cost_;
  double total_ = 0.0;
  Assignment current_;
  Assignment best_;
  double best_value_ = std::numeric_limits<double>::infinity();
  long long nodes_ = 0;
};

}  // namespace

OfflineOpt OfflineOptGeneral(const GeneralInstance& instance) {
  instance.Validate();
  double product = 1.0;
  for (const Request& r : instance.requests) {
    product *= static_cast<double>(r.strategies.size());
    if (product > kMaxOracleProduct) {
      throw SizeError("strategy product exceeds the oracle limit of 1e7");
    }
  }
  GeneralSearch search(instance);
  // The greedy assignment is a feasible upper bound to start pruning from.
  GreedyState state(instance);
  for (const Request& r : instance.requests) state.Step(r);
  search.Seed(state.chosen(), TotalCost(instance, state.chosen()));
  search.Run();
  return search.Result();
}

double GridOpt::LowerBound() const {
  return std::max(0.0, value - lipschitz_slack);
}

namespace {

class GridSearch {
 public:
  GridSearch(const std::vector<double>& table, int n,
             const std::vector<CoveringRow>& rows, int res)
      : n_(n), res_(res), rows_(rows.size()), x_(n, 0.0) {
    levels_.resize(n + 1);
    levels_[0] = table;
    for (int j = 1; j <= n; ++j) {
      levels_[j].assign(std::size_t{1} << (n - j), 0.0);
    }
    // Dense coefficients per row plus suffix sums for feasibility pruning.
    b_.assign(rows.size(), std::vector<double>(n, 0.0));
    suffix_.assign(rows.size(), std::vector<double>(n + 1, 0.0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& [e, b] : rows[r].b) b_[r][e] = b;
      for (int j = n - 1; j >= 0; --j) {
        suffix_[r][j] = suffix_[r][j + 1] + b_[r][j];
      }
    }
    cover_.assign(rows.size(), 0.0);
  }

  void Run() {
    if (n_ == 0) {
      for (std::size_t r = 0; r < rows_; ++r) {
        if (cover_[r] < 1.0 - kEps) return;
      }
      best_ = levels_[0][0];
      best_x_ = x_;
      return;
    }
    Descend(0);
  }

  double best() const { return best_; }
  const std::vector<double>& best_x() const { return best_x_; }

 private:
  static constexpr double kEps = 1e-9;

  void Contract(int j, double p) {
    const std::vector<double>& src = levels_[j];
    std::vector<double>& dst = levels_[j + 1];
    for (std::size_t m = 0; m < dst.size(); ++m) {
      dst[m] = (1.0 - p) * src[2 * m] + p * src[2 * m + 1];
    }
  }

  void Descend(int j) {
    // Every row must still be reachable with the remaining coordinates at 1.
    for (std::size_t r = 0; r < rows_; ++r) {
      if (cover_[r] + suffix_[r][j] < 1.0 - kEps) return;
    }
    const std::vector<double>& t = levels_[j];
    if (t[0] >= best_) return;
    if (j == n_ - 1) {
      double need = 0.0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const double missing = 1.0 - cover_[r];
        if (missing <= kEps) continue;
        if (b_[r][j] <= 0.0) return;
        need = std::max(need, missing / b_[r][j]);
      }
      const int steps = std::max(
          0, static_cast<int>(std::ceil(need * res_ - 1e-9)));
      if (steps > res_) return;
      const double p = static_cast<double>(steps) / res_;
      const double v = (1.0 - p) * t[0] + p * t[1];
      if (v < best_) {
        best_ = v;
        x_[j] = p;
        best_x_ = x_;
      }
      return;
    }
    for (int s = 0; s <= res_; ++s) {
      const double p = static_cast<double>(s) / res_;
      // With later coordinates at 0 the value only grows with p.
      if ((1.0 - p) * t[0] + p * t[1] >= best_) break;
      x_[j] = p;
      for (std::size_t r = 0; r < rows_; ++r) cover_[r] += b_[r][j] * p;
      Contract(j, p);
      Descend(j + 1);
      for (std::size_t r = 0; r < rows_; ++r) cover_[r] -= b_[r][j] * p;
    }
    x_[j] = 0.0;
  }

  int n_;
  int res_;
  std::size_t rows_;
  std::vector<std::vector<double>> levels_;
  std::vector<std::vector<double>> b_;
  std::vector<std::vector<double>> suffix_;
  std::vector<double> cover_;
  std::vector<double> x_;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<double> best_x_;
};

}  // namespace

GridOpt FractionalOptGrid(const SetCostFunction& f, int n,
                          const std::vector<CoveringRow>& rows,
                          int resolution, int max_n) {
  if (n > max_n) {
    throw SizeError("grid oracle limited to " + std::to_string(max_n) +
                    " resources");
  }
  if (resolution < 1) throw InputError("grid resolution must be positive");
  for (const CoveringRow& row : rows) ValidateRow(row, n, std::max<int>(n, 1));

  const std::vector<double> t = Tabulate(f, UnitGround(n));
  GridOpt out;
  out.resolution = resolution;

  GridSearch search(t, n, rows, resolution);
  search.Run();
  if (!std::isfinite(search.best())) {
    throw InfeasibleError("covering rows cannot be satisfied inside [0,1]^n");
  }
  out.value = search.best();
  out.x = search.best_x();

  const std::uint32_t count = 1u << n;
  out.integral_value = std::numeric_limits<double>::infinity();
  for (std::uint32_t s = 0; s < count; ++s) {
    bool ok = true;
    for (const CoveringRow& row : rows) {
      double cover = 0.0;
      for (const auto& [e, b] : row.b) {
        if (s >> e & 1u) cover += b;
      }
      if (cover < 1.0 - 1e-9) {
        ok = false;
        break;
      }
    }
    if (ok && t[s] < out.integral_value) {
      out.integral_value = t[s];
      out.integral_set.clear();
      for (int e = 0; e < n; ++e) {
        if (s >> e & 1u) out.integral_set.push_back(e);
      }
    }
  }

  double lip = 0.0;
  for (int e = 0; e < n; ++e) {
    const std::uint32_t bit = 1u << e;
    double worst = 0.0;
    for (std::uint32_t s = 0; s < count; ++s) {
      if (!(s & bit)) worst = std::max(worst, t[s | bit] - t[s]);
    }
    lip += worst;
  }
  out.lipschitz_slack = lip / resolution;
  return out;
}

}  // namespace smoothpd
