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
#ifndef SMOOTHPD_TOOLS_EXPERIMENT_H_
#define SMOOTHPD_TOOLS_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "runners.h"

namespace smoothpd::tools {

// A config is either JSON
//   {"threads":1,"timing":false,"experiments":[{"algorithm":"greedy",...}]}
// or key=value lines where each "[experiment]" header opens a new entry
// and keys before the first header are global. List values are comma
// separated. Every experiment names an algorithm (greedy, cover, routing,
// vecsched, energy, prize, facility), its seeds ("seeds" or
// "seed_start" + "seed_count"), oracle/check_dual switches and the
// generator fields of that algorithm.
struct ExperimentReport {
  std::vector<ResultRow> rows;
  int failures = 0;
  std::string json;  // per-experiment summary
};

// Throws InputError on malformed configs.
ExperimentReport RunExperiments(const std::string& config_text);

// Converts a key=value config to the JSON form (JSON input passes
// through).
std::string NormalizeConfig(const std::string& config_text);

// Instance JSON for kind general, covering (rows embedded), routing,
// vecsched, energy, prize or facility. fields_json holds generator fields
// as in an experiment entry.
std::string GenerateInstanceJson(const std::string& kind,
                                 const std::string& fields_json,
                                 std::uint64_t seed);

std::string CsvHeader();
std::string CsvLine(const ResultRow& row);
std::string ToCsv(const std::vector<ResultRow>& rows);

}  // namespace smoothpd::tools

#endif  // SMOOTHPD_TOOLS_EXPERIMENT_H_
