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
#ifndef SMOOTHPD_MULTILINEAR_H_
#define SMOOTHPD_MULTILINEAR_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "smoothpd/set_function.h"

namespace smoothpd {

// A point of [0,1]^n indexed by resource id.
class FractionalPoint {
 public:
  FractionalPoint() = default;
  // Throws InputError if a coordinate lies outside [0,1].
  explicit FractionalPoint(std::vector<double> x);

  static FractionalPoint Zeros(int n) {
    return FractionalPoint(std::vector<double>(n, 0.0));
  }

  int size() const { return static_cast<int>(x_.size()); }
  double operator[](int e) const { return x_[e]; }
  const std::vector<double>& values() const { return x_; }

  // Throws InputError outside [0,1].
  void Set(int e, double v);

 private:
  std::vector<double> x_;
};

inline constexpr int kMaxExactElements = 20;

struct SampleSpec {
  std::int64_t count = 10000;
  std::uint64_t seed = 1;
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

enum class MultilinearPath {
  kAuto,    // table up to 20 elements, load DP beyond when it applies
  kTable,   // full 2^n table
  kLoadDp,  // distribution of the aggregate load; integer loads only
};

// Exact multilinear extension over the unit ground {0..n-1}. The load DP
// applies to load costs whose element weights are non-negative integers
// with a total of at most 10^6.
class Multilinear {
 public:
  Multilinear(std::shared_ptr<const SetCostFunction> f, int n,
              MultilinearPath path = MultilinearPath::kAuto);

  // True when the load DP can evaluate f on n elements.
  static bool LoadDpApplies(const SetCostFunction& f, int n);

  int n() const { return n_; }
  bool uses_load_dp() const { return load_ != nullptr; }

  double Value(const FractionalPoint& x) const;
  // dF/dx_e = E[f(R + e) - f(R)] over R drawn from the other coordinates.
  double Partial(const FractionalPoint& x, int e) const;
  std::vector<double> Gradient(const FractionalPoint& x) const;

 private:
  std::vector<double> LoadDistribution(const FractionalPoint& x,
                                       int skip) const;

  std::shared_ptr<const SetCostFunction> f_;
  int n_;
  const LoadCost* load_ = nullptr;
  std::vector<int> int_weight_;  // per element, DP path only
  std::vector<double> table_;    // tabulated path only
};

// Exact F(x). Throws SizeError when neither exact path applies.
double EvalF(std::shared_ptr<const SetCostFunction> f,
             const FractionalPoint& x);
double GradF(std::shared_ptr<const SetCostFunction> f,
             const FractionalPoint& x, int e);

// Monte Carlo estimates with a private seeded generator.
Estimate EvalFSampled(const SetCostFunction& f, const FractionalPoint& x,
                      const SampleSpec& spec);
Estimate GradFSampled(const SetCostFunction& f, const FractionalPoint& x,
                      int e, const SampleSpec& spec);

}  // namespace smoothpd

#endif  // SMOOTHPD_MULTILINEAR_H_
