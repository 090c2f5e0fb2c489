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
#include "smoothpd/set_function.h"

#include <bit>
#include <string>

#include "smoothpd/errors.h"

namespace smoothpd {

std::string_view CostKindName(CostKind kind) {
  switch (kind) {
    case CostKind::kPolynomial: return "polynomial";
    case CostKind::kNormSum: return "norm_sum";
    case CostKind::kPiecewisePower: return "piecewise_power";
    case CostKind::kSubmodularCoverage: return "submodular_coverage";
    case CostKind::kSubmodularTable: return "submodular_table";
    case CostKind::kCustomTable: return "custom_table";
    case CostKind::kCustom: return "custom";
  }
  return "custom";
}

LoadCost::LoadCost(std::vector<double> element_weights)
    : element_weights_(std::move(element_weights)) {
  for (double a : element_weights_) {
    if (!(a >= 0.0)) throw InputError("element weights must be non-negative");
  }
}

double LoadCost::Load(std::span<const Member> members) const {
  double load = 0.0;
  for (const Member& m : members) load += m.weight * ElementWeight(m.element);
  return load;
}

std::vector<Member> UnitGround(int n) {
  std::vector<Member> ground;
  ground.reserve(n);
  for (int i = 0; i < n; ++i) ground.push_back({i, 1.0});
  return ground;
}

std::vector<Member> SelectMembers(std::span<const Member> ground,
                                  std::uint64_t mask) {
  std::vector<Member> out;
  out.reserve(std::popcount(mask));
  for (std::size_t i = 0; i < ground.size(); ++i) {
    if (mask >> i & 1u) out.push_back(ground[i]);
  }
  return out;
}

std::vector<double> Tabulate(const SetCostFunction& f,
                             std::span<const Member> ground) {
  const int n = static_cast<int>(ground.size());
  if (n > kMaxTabulatedGround) {
    throw SizeError("cannot tabulate a set function on " + std::to_string(n) +
                    " elements");
  }
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<double> table(count);
  std::vector<Member> current;
  current.reserve(n);
  std::uint64_t mask = 0;
  table[0] = f.Evaluate(current);
  for (std::uint64_t step = 1; step < count; ++step) {
    // Gray code: flip the lowest set bit of the step counter.
    const int bit = std::countr_zero(step);
    mask ^= std::uint64_t{1} << bit;
    if (mask >> bit & 1u) {
      current.push_back(ground[bit]);
    } else {
      for (std::size_t k = 0; k < current.size(); ++k) {
        if (current[k].element == ground[bit].element) {
          current.erase(current.begin() + k);
          break;
        }
      }
    }
    table[mask] = f.Evaluate(current);
  }
  return table;
}

}  // namespace smoothpd
