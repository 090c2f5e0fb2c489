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

#ifndef SMOOTHPD_ERRORS_H_
#define SMOOTHPD_ERRORS_H_

#include <stdexcept>
#include <string>

namespace smoothpd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input (bad ids, invalid coefficients, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// An exhaustive routine was asked to enumerate more than it allows.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Root finding or integration failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

// No feasible solution exists (disjoint paths, speed grid volume, ...).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

}  // namespace smoothpd

#endif  // SMOOTHPD_ERRORS_H_
