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
#ifndef SMOOTHPD_JSON_IO_H_
#define SMOOTHPD_JSON_IO_H_

#include <string>
#include <vector>

#include "smoothpd/core.h"
#include "smoothpd/covering.h"
#include "smoothpd/set_function.h"

namespace smoothpd {

// Cost descriptors:
//   {"kind":"polynomial","coeffs":[...],"weights":[...]}
//   {"kind":"norm_sum","terms":[{"w":1,"subset":[0,2],"order":2}]}
//   {"kind":"piecewise_power","k":2,"m1":1,"m2":3,"weights":[...]}
//   {"kind":"submodular_coverage","sets":[[0,1],[1]],"item_weights":[...]}
//   {"kind":"submodular_table"|"custom_table","n":3,"values":[...]}
// All parse errors surface as InputError.
CostPtr ParseCost(const std::string& json);
std::string CostToJson(const SetCostFunction& f);

// {"resources":[{"id":0,"cost":{...}}],
//  "requests":[{"id":0,"strategies":[{"uses":{"0":1.0}}]}]}
GeneralInstance ParseGeneralInstance(const std::string& json);
std::string GeneralInstanceToJson(const GeneralInstance& instance);

// {"resources":n,"d":d,"cost":{...}}; rows may be embedded as "rows".
CoveringInstance ParseCoveringInstance(const std::string& json);
std::string CoveringInstanceToJson(const CoveringInstance& instance,
                                   bool include_rows);

// One row per line: {"id":0,"b":{"0":0.5,"3":1.0}}. Blank lines are
// skipped.
CoveringRow ParseCoveringRow(const std::string& line);
std::vector<CoveringRow> ParseCoveringRows(const std::string& jsonl);
std::string CoveringRowToJson(const CoveringRow& row);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);

}  // namespace smoothpd

#endif  // SMOOTHPD_JSON_IO_H_
