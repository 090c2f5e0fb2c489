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
#include "smoothpd/multilinear.h"

#include <cmath>
#include <random>
#include <string>

#include "smoothpd/errors.h"

namespace smoothpd {
namespace {

constexpr double kMaxDpLoad = 1e6;

// Contracts t (2^m entries, bit j <-> coords[j]) against x and returns the
// expectation. Destroys t.
double Contract(std::vector<double>& t, const std::vector<double>& coords) {
  for (int j = static_cast<int>(coords.size()) - 1; j >= 0; --j) {
    const std::size_t half = std::size_t{1} << j;
    const double p = coords[j];
    const double q = 1.0 - p;
    for (std::size_t m = 0; m < half; ++m) t[m] = q * t[m] + p * t[m + half];
  }
  return t[0];
}

void CheckPoint(const FractionalPoint& x, int n) {
  if (x.size() != n) {
    throw InputError("point has " + std::to_string(x.size()) +
                     " coordinates, expected " + std::to_string(n));
  }
}

}  // namespace

FractionalPoint::FractionalPoint(std::vector<double> x) : x_(std::move(x)) {
  for (double v : x_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InputError("fractional coordinate outside [0,1]");
    }
  }
}

void FractionalPoint::Set(int e, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw InputError("fractional coordinate outside [0,1]");
  }
  x_.at(e) = v;
}

bool Multilinear::LoadDpApplies(const SetCostFunction& f, int n) {
  const auto* load = dynamic_cast<const LoadCost*>(&f);
  if (load == nullptr) return false;
  double total = 0.0;
  for (int e = 0; e < n; ++e) {
    const double a = load->ElementWeight(e);
    if (a != std::floor(a) || a < 0.0) return false;
    total += a;
  }
  return total <= kMaxDpLoad;
}

Multilinear::Multilinear(std::shared_ptr<const SetCostFunction> f, int n,
                         MultilinearPath path)
    : f_(std::move(f)), n_(n) {
  if (!f_) throw InputError("null cost function");
  if (n < 0) throw InputError("negative ground size");
  bool use_dp = false;
  switch (path) {
    case MultilinearPath::kAuto:
      use_dp = n > kMaxExactElements && LoadDpApplies(*f_, n);
      break;
    case MultilinearPath::kLoadDp:
      if (!LoadDpApplies(*f_, n)) {
        throw InputError("load DP needs a load cost with integer weights");
      }
      use_dp = true;
      break;
    case MultilinearPath::kTable:
      break;
  }
  if (use_dp) {
    load_ = dynamic_cast<const LoadCost*>(f_.get());
    int_weight_.resize(n);
    for (int e = 0; e < n; ++e) {
      int_weight_[e] = static_cast<int>(load_->ElementWeight(e));
    }
    return;
  }
  if (n > kMaxExactElements) {
    throw SizeError("exact multilinear extension limited to " +
                    std::to_string(kMaxExactElements) + " elements, got " +
                    std::to_string(n));
  }
  table_ = Tabulate(*f_, UnitGround(n));
}

std::vector<double> Multilinear::LoadDistribution(const FractionalPoint& x,
                                                  int skip) const {
  std::vector<double> dist(1, 1.0);
  for (int e = 0; e < n_; ++e) {
    if (e == skip) continue;
    const int w = int_weight_[e];
    const double p = x[e];
    if (p == 0.0) continue;
    if (w == 0) continue;
    const std::size_t old = dist.size();
    dist.resize(old + w, 0.0);
    for (std::size_t l = old + w; l-- > 0;) {
      const double stay = l < old ? dist[l] * (1.0 - p) : 0.0;
      const double move = l >= static_cast<std::size_t>(w) && l - w < old
                              ? dist[l - w] * p
                              : 0.0;
      dist[l] = stay + move;
    }
  }
  return dist;
}

double Multilinear::Value(const FractionalPoint& x) const {
  CheckPoint(x, n_);
  if (load_ != nullptr) {
    const auto dist = LoadDistribution(x, -1);
    double v = 0.0;
    for (std::size_t l = 0; l < dist.size(); ++l) {
      v += dist[l] * load_->Shape(static_cast<double>(l));
    }
    return v;
  }
  std::vector<double> t = table_;
  return Contract(t, x.values());
}

double Multilinear::Partial(const FractionalPoint& x, int e) const {
  CheckPoint(x, n_);
  if (e < 0 || e >= n_) throw InputError("coordinate out of range");
  if (load_ != nullptr) {
    const auto dist = LoadDistribution(x, e);
    const double w = int_weight_[e];
    double v = 0.0;
    for (std::size_t l = 0; l < dist.size(); ++l) {
      const double y = static_cast<double>(l);
      v += dist[l] * (load_->Shape(y + w) - load_->Shape(y));
    }
    return v;
  }
  const std::size_t half = std::size_t{1} << (n_ - 1);
  const std::size_t bit = std::size_t{1} << e;
  const std::size_t low = bit - 1;
  std::vector<double> d(n_ == 0 ? 1 : half);
  for (std::size_t m = 0; m < d.size(); ++m) {
    const std::size_t full = (m & low) | ((m & ~low) << 1);
    d[m] = table_[full | bit] - table_[full];
  }
  std::vector<double> coords;
  coords.reserve(n_ - 1);
  for (int j = 0; j < n_; ++j) {
    if (j != e) coords.push_back(x[j]);
  }
  return Contract(d, coords);
}

std::vector<double> Multilinear::Gradient(const FractionalPoint& x) const {
  std::vector<double> g(n_);
  for (int e = 0; e < n_; ++e) g[e] = Partial(x, e);
  return g;
}

double EvalF(std::shared_ptr<const SetCostFunction> f,
             const FractionalPoint& x) {
  return Multilinear(std::move(f), x.size()).Value(x);
}

double GradF(std::shared_ptr<const SetCostFunction> f,
             const FractionalPoint& x, int e) {
  return Multilinear(std::move(f), x.size()).Partial(x, e);
}

namespace {

template <typename Draw>
Estimate Sample(const SampleSpec& spec, Draw draw) {
  if (spec.count < 2) throw InputError("sampling needs at least 2 samples");
  double mean = 0.0;
  double m2 = 0.0;
  for (std::int64_t s = 1; s <= spec.count; ++s) {
    const double v = draw();
    const double delta = v - mean;
    mean += delta / static_cast<double>(s);
    m2 += delta * (v - mean);
  }
  Estimate est;
  est.value = mean;
  est.samples = spec.count;
  const double var = m2 / static_cast<double>(spec.count - 1);
  est.std_error = std::sqrt(var / static_cast<double>(spec.count));
  return est;
}

}  // namespace

Estimate EvalFSampled(const SetCostFunction& f, const FractionalPoint& x,
                      const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Member> set;
  return Sample(spec, [&] {
    set.clear();
    for (int e = 0; e < x.size(); ++e) {
      if (unit(rng) < x[e]) set.push_back({e, 1.0});
    }
    return f.Evaluate(set);
  });
}

Estimate GradFSampled(const SetCostFunction& f, const FractionalPoint& x,
                      int e, const SampleSpec& spec) {
  if (e < 0 || e >= x.size()) throw InputError("coordinate out of range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Member> set;
  return Sample(spec, [&] {
    set.clear();
    for (int j = 0; j < x.size(); ++j) {
      if (j == e) continue;
      if (unit(rng) < x[j]) set.push_back({j, 1.0});
    }
    const double without = f.Evaluate(set);
    set.push_back({e, 1.0});
    return f.Evaluate(set) - without;
  });
}

}  // namespace smoothpd
