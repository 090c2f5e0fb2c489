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
#include "smoothpd/tolerance.h"

#include <atomic>
#include <cstdlib>
#include <string>

namespace smoothpd {
namespace {

double InitialTolerance() {
  const char* env = std::getenv("SMOOTHPD_TOL");
  if (env == nullptr || *env == '\0') return kDefaultTolerance;
  try {
    double v = std::stod(env);
    if (v >= 0.0) return v;
  } catch (...) {
    // fall through to the default on a malformed value
  }
  return kDefaultTolerance;
}

std::atomic<double>& Slot() {
  static std::atomic<double> slot{InitialTolerance()};
  return slot;
}

}  // namespace

double Tolerance() { return Slot().load(std::memory_order_relaxed); }

void SetTolerance(double tol) { Slot().store(tol, std::memory_order_relaxed); }

}  // namespace smoothpd
