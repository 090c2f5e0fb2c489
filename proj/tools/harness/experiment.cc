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
#include "experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "generators.h"
#include "json.hpp"
#include "smoothpd/errors.h"
#include "smoothpd/json_io.h"

namespace smoothpd::tools {
namespace {

using nlohmann::json;

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

json ScalarValue(const std::string& raw) {
  const std::string v = Trim(raw);
  if (v == "true") return true;
  if (v == "false") return false;
  char* end = nullptr;
  const long long i = std::strtoll(v.c_str(), &end, 10);
  if (!v.empty() && *end == '\0') return i;
  const double d = std::strtod(v.c_str(), &end);
  if (!v.empty() && *end == '\0') return d;
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    return v.substr(1, v.size() - 2);
  }
  return v;
}

json KeyValueToJson(const std::string& text) {
  json root = json::object();
  root["experiments"] = json::array();
  json* target = &root;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = Trim(line);
    if (line.empty()) continue;
    if (line == "[experiment]") {
      root["experiments"].push_back(json::object());
      target = &root["experiments"].back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError("config line " + std::to_string(lineno) + " is not key=value");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    if (value.find(',') != std::string::npos) {
      json list = json::array();
      std::istringstream items(value);
      std::string item;
      while (std::getline(items, item, ',')) list.push_back(ScalarValue(item));
      (*target)[key] = list;
    } else {
      (*target)[key] = ScalarValue(value);
    }
  }
  return root;
}

json ParseConfig(const std::string& text) {
  const std::string t = Trim(text);
  try {
    if (!t.empty() && t.front() == '{') return json::parse(t);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed config: ") + e.what());
  }
  return KeyValueToJson(text);
}

std::vector<std::uint64_t> Seeds(const json& exp) {
  std::vector<std::uint64_t> seeds;
  if (exp.contains("seeds")) {
    const json& s = exp.at("seeds");
    if (s.is_array()) {
      for (const json& v : s) seeds.push_back(v.get<std::uint64_t>());
    } else {
      seeds.push_back(s.get<std::uint64_t>());
    }
  } else {
    const auto start = exp.value("seed_start", std::uint64_t{1});
    const auto count = exp.value("seed_count", std::uint64_t{1});
    for (std::uint64_t k = 0; k < count; ++k) seeds.push_back(start + k);
  }
  std::sort(seeds.begin(), seeds.end());
  return seeds;
}

GeneralGenSpec GeneralSpec(const json& exp, std::uint64_t seed) {
  GeneralGenSpec s;
  s.requests = exp.value("requests", s.requests);
  s.resources = exp.value("resources", s.resources);
  s.strategies = exp.value("strategies", s.strategies);
  s.degree = exp.value("degree", s.degree);
  s.seed = seed;
  return s;
}

CoveringGenSpec CoveringSpec(const json& exp, std::uint64_t seed) {
  CoveringGenSpec s;
  s.family = exp.value("family", s.family);
  s.n = exp.value("n", s.n);
  s.rows = exp.value("rows", s.rows);
  s.d = exp.value("d", s.d);
  s.degree = exp.value("degree", s.degree);
  s.seed = seed;
  return s;
}

RoutingGenSpec RoutingSpec(const json& exp, std::uint64_t seed) {
  RoutingGenSpec s;
  s.nodes = exp.value("nodes", s.nodes);
  s.extra_edges = exp.value("extra_edges", s.extra_edges);
  s.requests = exp.value("requests", s.requests);
  s.max_k = exp.value("max_k", s.max_k);
  s.degree = exp.value("degree", s.degree);
  s.seed = seed;
  return s;
}

VecSchedGenSpec VecSchedSpec(const json& exp, std::uint64_t seed) {
  VecSchedGenSpec s;
  s.machines = exp.value("machines", s.machines);
  s.dims = exp.value("dims", s.dims);
  s.jobs = exp.value("jobs", s.jobs);
  s.norm = exp.value("norm", s.norm);
  s.alpha = exp.value("alpha", s.alpha);
  s.seed = seed;
  return s;
}

EnergyGenSpec EnergySpec(const json& exp, std::uint64_t seed, bool prize) {
  EnergyGenSpec s;
  s.machines = exp.value("machines", s.machines);
  s.jobs = exp.value("jobs", s.jobs);
  s.horizon = exp.value("horizon", s.horizon);
  s.degree = exp.value("degree", s.degree);
  s.eps = exp.value("eps", s.eps);
  s.delta = exp.value("delta", s.delta);
  s.work_max = exp.value("work_max", s.work_max);
  s.nonconvex = exp.value("nonconvex", false);
  s.penalties = prize;
  s.penalty_max = exp.value("penalty_max", s.penalty_max);
  s.seed = seed;
  return s;
}

FacilityGenSpec FacilitySpec(const json& exp, std::uint64_t seed) {
  FacilityGenSpec s;
  s.facilities = exp.value("facilities", s.facilities);
  s.clients = exp.value("clients", s.clients);
  s.degree = exp.value("degree", s.degree);
  s.seed = seed;
  return s;
}

ResultRow RunOne(const json& exp, std::uint64_t seed) {
  const std::string algo = exp.at("algorithm").get<std::string>();
  CaseOptions opt;
  opt.oracle = exp.value("oracle", true);
  opt.check_dual = exp.value("check_dual", true);
  opt.dual_n_max = exp.value("dual_n_max", 12);
  opt.covering.dtau = exp.value("dtau", opt.covering.dtau);
  opt.covering.lemma_tol = exp.value("lemma_tol", opt.covering.lemma_tol);
  opt.auto_refine = exp.value("auto_refine", false);
  if (algo == "greedy") {
    const GeneralGenSpec s = GeneralSpec(exp, seed);
    const GeneralInstance g = GenerateGeneral(s);
    ResultRow row = RunGreedyCase(g, GeneralParams(g), opt);
    row.param = "k=" + std::to_string(s.degree);
    return row;
  }
  if (algo == "cover") {
    const CoveringInstance inst = GenerateCovering(CoveringSpec(exp, seed));
    return RunCoveringCase(inst, ParamsFor(*inst.cost, inst.n, inst.d), opt);
  }
  if (algo == "routing") return RunRoutingCase(GenerateRouting(RoutingSpec(exp, seed)), opt);
  if (algo == "vecsched") {
    return RunVecSchedCase(GenerateVecSched(VecSchedSpec(exp, seed)), opt);
  }
  if (algo == "energy") return RunEnergyCase(GenerateEnergy(EnergySpec(exp, seed, false)), opt);
  if (algo == "prize") return RunPrizeCase(GenerateEnergy(EnergySpec(exp, seed, true)), opt);
  if (algo == "facility") {
    return RunFacilityCase(GenerateFacility(FacilitySpec(exp, seed)), opt);
  }
  throw InputError("unknown algorithm: " + algo);
}

std::string Cell(double v) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string Cell(const std::string& s) {
  if (s.empty()) return "-";
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

std::string GenerateInstanceJson(const std::string& kind,
                                 const std::string& fields_json,
                                 std::uint64_t seed) {
  json fields;
  try {
    fields = fields_json.empty() ? json::object() : json::parse(fields_json);
  } catch (const json::exception& e) {
    throw InputError(std::string("bad generator fields: ") + e.what());
  }
  if (kind == "general") return GeneralInstanceToJson(GenerateGeneral(GeneralSpec(fields, seed)));
  if (kind == "covering") {
    return CoveringInstanceToJson(GenerateCovering(CoveringSpec(fields, seed)), true);
  }
  if (kind == "routing") return RoutingInstanceToJson(GenerateRouting(RoutingSpec(fields, seed)));
  if (kind == "vecsched") {
    return VecSchedInstanceToJson(GenerateVecSched(VecSchedSpec(fields, seed)));
  }
  if (kind == "energy" || kind == "prize") {
    return EnergyInstanceToJson(GenerateEnergy(EnergySpec(fields, seed, kind == "prize")));
  }
  if (kind == "facility") {
    return FacilityInstanceToJson(GenerateFacility(FacilitySpec(fields, seed)));
  }
  throw InputError("unknown instance kind: " + kind);
}

std::string NormalizeConfig(const std::string& config_text) {
  return ParseConfig(config_text).dump(2);
}

std::string CsvHeader() {
  return "algorithm,family,seed,n,param,primal,dual,opt,ratio,bound,"
         "bound_derived,dual_feasible,lemma2_ok,runtime_ms,status";
}

std::string CsvLine(const ResultRow& r) {
  std::ostringstream os;
  os << Cell(r.algorithm) << ',' << Cell(r.family) << ',' << r.seed << ','
     << r.n << ',' << Cell(r.param) << ',' << Cell(r.primal) << ','
     << Cell(r.dual) << ',' << Cell(r.opt) << ',' << Cell(r.ratio) << ','
     << Cell(r.bound) << ',' << Cell(r.bound_derived) << ','
     << Cell(r.dual_feasible) << ',' << Cell(r.lemma2_ok) << ','
     << Cell(r.runtime_ms) << ','
     << Cell(r.ok ? std::string("ok") : "FAIL: " + r.failure);
  return os.str();
}

std::string ToCsv(const std::vector<ResultRow>& rows) {
  std::string out = CsvHeader() + "\n";
  for (const ResultRow& r : rows) out += CsvLine(r) + "\n";
  return out;
}

ExperimentReport RunExperiments(const std::string& config_text) {
  const json config = ParseConfig(config_text);
  const json experiments = config.value("experiments", json::array());
  if (!experiments.is_array()) throw InputError("experiments must be a list");
  const bool timing = config.value("timing", false);
  const int threads = std::max(1, config.value("threads", 1));

  struct Task {
    std::size_t exp;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t e = 0; e < experiments.size(); ++e) {
    if (!experiments[e].contains("algorithm")) {
      throw InputError("experiment " + std::to_string(e) + " has no algorithm");
    }
    for (std::uint64_t s : Seeds(experiments[e])) tasks.push_back({e, s});
  }

  ExperimentReport report;
  report.rows.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next++) < tasks.size();) {
      const json& exp = experiments[tasks[t].exp];
      const auto start = std::chrono::steady_clock::now();
      ResultRow row;
      try {
        row = RunOne(exp, tasks[t].seed);
      } catch (const InputError&) {
        throw;
      } catch (const std::exception& e) {
        row.algorithm = exp.at("algorithm").get<std::string>();
        row.Fail(e.what());
      }
      row.seed = tasks[t].seed;
      if (timing) {
        row.runtime_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - start)
                             .count();
      }
      report.rows[t] = std::move(row);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    // Errors from workers are rethrown on the calling thread.
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] {
        try {
          worker();
        } catch (...) {
          errors[k] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  json summary = json::array();
  std::size_t t = 0;
  for (std::size_t e = 0; e < experiments.size(); ++e) {
    int runs = 0, failed = 0;
    double max_ratio = 0.0;
    for (; t < tasks.size() && tasks[t].exp == e; ++t) {
      const ResultRow& r = report.rows[t];
      ++runs;
      if (!r.ok) ++failed;
      if (!std::isnan(r.ratio)) max_ratio = std::max(max_ratio, r.ratio);
    }
    report.failures += failed;
    summary.push_back({{"name", experiments[e].value("name", "experiment " + std::to_string(e))},
                       {"algorithm", experiments[e].at("algorithm")},
                       {"runs", runs},
                       {"failures", failed},
                       {"max_ratio", max_ratio}});
  }
  report.json = json{{"experiments", summary},
                     {"rows", report.rows.size()},
                     {"failures", report.failures},
                     {"all_ok", report.failures == 0}}
                    .dump(2);
  return report;
}

}  // namespace smoothpd::tools
