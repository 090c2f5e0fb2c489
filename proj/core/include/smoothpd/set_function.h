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
#ifndef SMOOTHPD_SET_FUNCTION_H_
#define SMOOTHPD_SET_FUNCTION_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace smoothpd {

// One element of the weighted multiset a cost function is evaluated on.
// In the general framework the element is a request id and the weight is
// the request's contribution (load) on the resource; in the covering
// framework the element is a resource id with weight 1.
struct Member {
  int element = 0;
  double weight = 1.0;

  friend bool operator==(const Member&, const Member&) = default;
};

// Family tag used by the smoothness and costlib modules for dispatch.
enum class CostKind {
  kPolynomial,
  kNormSum,
  kPiecewisePower,
  kSubmodularCoverage,
  kSubmodularTable,
  kCustomTable,
  kCustom,
};

std::string_view CostKindName(CostKind kind);

// A monotone non-decreasing, non-negative set function. Implementations
// are immutable and must be deterministic; they may be shared across
// threads.
class SetCostFunction {
 public:
  virtual ~SetCostFunction() = default;

  // Value on the multiset of members. Members are distinct elements; the
  // order carries no meaning.
  virtual double Evaluate(std::span<const Member> members) const = 0;

  virtual CostKind kind() const = 0;
};

using CostPtr = std::shared_ptr<const SetCostFunction>;

// Cost functions of the form f(A) = g(sum_{m in A} w_m * a_{element(m)}).
// Exposes the scalar shape g so the multilinear fast path and the
// application best-response solvers can use it directly.
class LoadCost : public SetCostFunction {
 public:
  // g evaluated at an aggregate load.
  virtual double Shape(double load) const = 0;

  // Per-element scale a_e. Elements without an explicit weight use 1.
  double ElementWeight(int element) const {
    return element >= 0 && static_cast<std::size_t>(element) <
                               element_weights_.size()
               ? element_weights_[element]
               : 1.0;
  }

  const std::vector<double>& element_weights() const {
    return element_weights_;
  }

  double Load(std::span<const Member> members) const;

  double Evaluate(std::span<const Member> members) const override {
    return Shape(Load(members));
  }

 protected:
  explicit LoadCost(std::vector<double> element_weights);

 private:
  std::vector<double> element_weights_;
};

// The ground set {0, ..., n-1} with unit weights.
std::vector<Member> UnitGround(int n);

// Members of ground selected by the bits of mask (bit i <-> ground[i]).
std::vector<Member> SelectMembers(std::span<const Member> ground,
                                  std::uint64_t mask);

// f evaluated on every subset of ground, indexed by bitmask. Subsets are
// visited in Gray-code order so each evaluation differs from the previous
// one by a single member. Requires ground.size() <= 24.
std::vector<double> Tabulate(const SetCostFunction& f,
                             std::span<const Member> ground);

inline constexpr int kMaxTabulatedGround = 24;

}  // namespace smoothpd

#endif  // SMOOTHPD_SET_FUNCTION_H_
