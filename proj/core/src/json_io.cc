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
#include "smoothpd/json_io.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"

namespace smoothpd {

using nlohmann::json;

namespace {

json Parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T Get(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(std::string("missing field \"") + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

template <typename T>
T GetOr(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return Get<T>(j, key);
}

int ParseIndex(const std::string& key) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(key, &pos);
  } catch (...) {
    throw InputError("expected an integer key, got \"" + key + "\"");
  }
  if (pos != key.size()) {
    throw InputError("expected an integer key, got \"" + key + "\"");
  }
  return v;
}

CostPtr CostFromJson(const json& j) {
  const std::string kind = Get<std::string>(j, "kind");
  if (kind == "polynomial") {
    return std::make_shared<PolynomialLoadCost>(
        Get<std::vector<double>>(j, "coeffs"),
        GetOr<std::vector<double>>(j, "weights", {}));
  }
  if (kind == "norm_sum") {
    std::vector<NormTerm> terms;
    for (const json& t : Get<json>(j, "terms")) {
      NormTerm term;
      term.w = GetOr<double>(t, "w", 1.0);
      term.subset = GetOr<std::vector<int>>(t, "subset", {});
      term.order = GetOr<double>(t, "order", 2.0);
      terms.push_back(std::move(term));
    }
    return std::make_shared<NormSumCost>(std::move(terms));
  }
  if (kind == "piecewise_power") {
    return std::make_shared<PiecewisePowerCost>(
        Get<int>(j, "k"), Get<double>(j, "m1"), Get<double>(j, "m2"),
        GetOr<std::vector<double>>(j, "weights", {}));
  }
  if (kind == "submodular_coverage") {
    return std::make_shared<CoverageCost>(
        Get<std::vector<std::vector<int>>>(j, "sets"),
        Get<std::vector<double>>(j, "item_weights"));
  }
  if (kind == "submodular_table" || kind == "custom_table") {
    return std::make_shared<TableCost>(
        Get<int>(j, "n"), Get<std::vector<double>>(j, "values"),
        kind == "custom_table" ? CostKind::kCustomTable
                               : CostKind::kSubmodularTable);
  }
  throw InputError("unknown cost kind \"" + kind + "\"");
}

json CostJson(const SetCostFunction& f) {
  json j;
  j["kind"] = std::string(CostKindName(f.kind()));
  switch (f.kind()) {
    case CostKind::kPolynomial: {
      const auto& p = dynamic_cast<const PolynomialLoadCost&>(f);
      j["coeffs"] = p.coeffs();
      if (!p.element_weights().empty()) j["weights"] = p.element_weights();
      break;
    }
    case CostKind::kNormSum: {
      json terms = json::array();
      for (const NormTerm& t : dynamic_cast<const NormSumCost&>(f).terms()) {
        terms.push_back({{"w", t.w}, {"subset", t.subset}, {"order", t.order}});
      }
      j["terms"] = terms;
      break;
    }
    case CostKind::kPiecewisePower: {
      const auto& p = dynamic_cast<const PiecewisePowerCost&>(f);
      j["k"] = p.k();
      j["m1"] = p.m1();
      j["m2"] = p.m2();
      if (!p.element_weights().empty()) j["weights"] = p.element_weights();
      break;
    }
    case CostKind::kSubmodularCoverage: {
      const auto& c = dynamic_cast<const CoverageCost&>(f);
      j["sets"] = c.sets();
      j["item_weights"] = c.item_weights();
      break;
    }
    case CostKind::kSubmodularTable:
    case CostKind::kCustomTable: {
      const auto& t = dynamic_cast<const TableCost&>(f);
      j["n"] = t.n();
      j["values"] = t.values();
      break;
    }
    case CostKind::kCustom:
      throw InputError("custom cost functions have no JSON form");
  }
  return j;
}

CoveringRow RowFromJson(const json& j) {
  CoveringRow row;
  row.id = Get<int>(j, "id");
  const json b = Get<json>(j, "b");
  if (!b.is_object()) throw InputError("row field \"b\" must be an object");
  for (const auto& [key, value] : b.items()) {
    if (!value.is_number()) throw InputError("row coefficients must be numbers");
    row.b.emplace_back(ParseIndex(key), value.get<double>());
  }
  std::sort(row.b.begin(), row.b.end());
  return row;
}

json RowJson(const CoveringRow& row) {
  json b = json::object();
  for (const auto& [e, v] : row.b) b[std::to_string(e)] = v;
  return {{"id", row.id}, {"b", b}};
}

}  // namespace

CostPtr ParseCost(const std::string& text) { return CostFromJson(Parse(text)); }

std::string CostToJson(const SetCostFunction& f) { return CostJson(f).dump(); }

GeneralInstance ParseGeneralInstance(const std::string& text) {
  const json j = Parse(text);
  GeneralInstance inst;
  for (const json& r : Get<json>(j, "resources")) {
    inst.resources.push_back(
        {ResourceId(Get<int>(r, "id")), CostFromJson(Get<json>(r, "cost"))});
  }
  for (const json& q : Get<json>(j, "requests")) {
    Request req;
    req.id = RequestId(Get<int>(q, "id"));
    for (const json& s : Get<json>(q, "strategies")) {
      std::vector<ResourceUse> uses;
      const json u = Get<json>(s, "uses");
      if (!u.is_object()) throw InputError("\"uses\" must be an object");
      for (const auto& [key, value] : u.items()) {
        if (!value.is_number()) throw InputError("contributions must be numbers");
        uses.push_back({ResourceId(ParseIndex(key)), value.get<double>()});
      }
      req.strategies.emplace_back(std::move(uses));
    }
    inst.requests.push_back(std::move(req));
  }
  std::sort(inst.resources.begin(), inst.resources.end(),
            [](const Resource& a, const Resource& b) { return a.id < b.id; });
  std::sort(inst.requests.begin(), inst.requests.end(),
            [](const Request& a, const Request& b) { return a.id < b.id; });
  inst.Validate();
  return inst;
}

std::string GeneralInstanceToJson(const GeneralInstance& inst) {
  json resources = json::array();
  for (const Resource& r : inst.resources) {
    resources.push_back({{"id", r.id.value}, {"cost", CostJson(*r.cost)}});
  }
  json requests = json::array();
  for (const Request& q : inst.requests) {
    json strategies = json::array();
    for (const Strategy& s : q.strategies) {
      json uses = json::object();
      for (const ResourceUse& u : s.uses) {
        uses[std::to_string(u.resource.value)] = u.amount;
      }
      strategies.push_back({{"uses", uses}});
    }
    requests.push_back({{"id", q.id.value}, {"strategies", strategies}});
  }
  json j;
  j["resources"] = resources;
  j["requests"] = requests;
  return j.dump();
}

CoveringInstance ParseCoveringInstance(const std::string& text) {
  const json j = Parse(text);
  CoveringInstance inst;
  inst.n = Get<int>(j, "resources");
  inst.d = Get<int>(j, "d");
  inst.cost = CostFromJson(Get<json>(j, "cost"));
  if (j.contains("rows")) {
    for (const json& r : j.at("rows")) inst.rows.push_back(RowFromJson(r));
  }
  inst.Validate();
  return inst;
}

std::string CoveringInstanceToJson(const CoveringInstance& inst,
                                   bool include_rows) {
  json j;
  j["resources"] = inst.n;
  j["d"] = inst.d;
  j["cost"] = CostJson(*inst.cost);
  if (include_rows) {
    json rows = json::array();
    for (const CoveringRow& r : inst.rows) rows.push_back(RowJson(r));
    j["rows"] = rows;
  }
  return j.dump();
}

CoveringRow ParseCoveringRow(const std::string& line) {
  return RowFromJson(Parse(line));
}

std::vector<CoveringRow> ParseCoveringRows(const std::string& jsonl) {
  std::vector<CoveringRow> rows;
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(ParseCoveringRow(line));
  }
  return rows;
}

std::string CoveringRowToJson(const CoveringRow& row) {
  return RowJson(row).dump();
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

}  // namespace smoothpd
