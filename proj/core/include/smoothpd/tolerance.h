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

#ifndef SMOOTHPD_TOLERANCE_H_
#define SMOOTHPD_TOLERANCE_H_

namespace smoothpd {

inline constexpr double kDefaultTolerance = 1e-9;

// Absolute tolerance for feasibility and equality comparisons. Initialised
// from the SMOOTHPD_TOL environment variable on first use, else 1e-9.
double Tolerance();

// Overrides the global tolerance. Thread-safe.
void SetTolerance(double tol);

}  // namespace smoothpd

#endif  // SMOOTHPD_TOLERANCE_H_
