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
// Command line front end: runs the online algorithms, the verifiers, the
// oracles, the generators and the experiment harness. Results go to
// stdout as JSON. Exit codes: 0 ok, 1 an asserted invariant failed, 2 bad
// input.
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiment.h"
#include "generators.h"
#include "json.hpp"
#include "runners.h"
#include "smoothpd/apps/oracles.h"
#include "smoothpd/costlib.h"
#include "smoothpd/errors.h"
#include "smoothpd/greedy.h"
#include "smoothpd/json_io.h"
#include "smoothpd/multilinear.h"
#include "smoothpd/oracle.h"
#include "smoothpd/smoothness.h"

namespace {

using nlohmann::json;
using namespace smoothpd;

json Number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json RowJson(const tools::ResultRow& r) {
  return {{"algorithm", r.algorithm},   {"family", r.family},
          {"n", r.n},                   {"param", r.param},
          {"primal", Number(r.primal)}, {"dual", Number(r.dual)},
          {"opt", Number(r.opt)},       {"ratio", Number(r.ratio)},
          {"bound", Number(r.bound)},   {"bound_derived", r.bound_derived},
          {"dual_feasible", r.dual_feasible.empty() ? "-" : r.dual_feasible},
          {"lemma2_ok", r.lemma2_ok.empty() ? "-" : r.lemma2_ok},
          {"ok", r.ok},                 {"failure", r.failure}};
}

json ParamsJson(const SmoothnessParams& p) {
  return {{"lambda", p.lambda},
          {"mu", p.mu},
          {"ratio", Number(p.Ratio())},
          {"provenance", ProvenanceName(p.provenance)},
          {"source", p.source}};
}

SmoothnessParams Asserted(double lambda, double mu) {
  SmoothnessParams p;
  p.lambda = lambda;
  p.mu = mu;
  p.provenance = Provenance::kAsserted;
  p.source = "command line";
  p.Validate();
  return p;
}

std::vector<double> ParseList(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw InputError("not a number: " + item);
    }
  }
  return out;
}

// Ground size implied by a cost descriptor when --n is absent.
int GroundSizeOf(const SetCostFunction& f) {
  if (const auto* t = dynamic_cast<const TableCost*>(&f)) return t->n();
  if (const auto* c = dynamic_cast<const CoverageCost*>(&f)) {
    return static_cast<int>(c->sets().size());
  }
  if (const auto* l = dynamic_cast<const LoadCost*>(&f)) {
    if (!l->element_weights().empty()) {
      return static_cast<int>(l->element_weights().size());
    }
  }
  if (const auto* ns = dynamic_cast<const NormSumCost*>(&f)) {
    int n = 0;
    for (const NormTerm& t : ns->terms()) {
      for (int e : t.subset) n = std::max(n, e + 1);
    }
    if (n > 0) return n;
  }
  throw InputError("cannot infer the ground size from the cost; pass --n");
}

int Emit(const json& j, bool ok) {
  std::cout << j.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothpd: online primal-dual algorithms for non-convex costs"};
  app.require_subcommand(1);

  // greedy run
  auto* greedy = app.add_subcommand("greedy", "Greedy for general instances");
  auto* greedy_run = greedy->add_subcommand("run", "Run the online greedy");
  greedy->require_subcommand(1);
  std::string instance_path;
  std::optional<double> lambda, mu;
  bool with_oracle = false, check_dual = false;
  int n_max = kDefaultDualNMax;
  greedy_run->add_option("--instance", instance_path, "Instance JSON")->required();
  greedy_run->add_option("--lambda", lambda, "Asserted lambda");
  greedy_run->add_option("--mu", mu, "Asserted mu");
  greedy_run->add_flag("--oracle", with_oracle, "Also compute the offline optimum");
  greedy_run->add_flag("--check-dual", check_dual, "Check dual feasibility");
  greedy_run->add_option("--n-max", n_max, "Dual check size limit");

  // cover run
  auto* cover = app.add_subcommand("cover", "Online fractional covering");
  auto* cover_run = cover->add_subcommand("run", "Run the covering algorithm");
  cover->require_subcommand(1);
  std::string rows_path;
  double dtau = 1e-4;
  bool auto_refine = false;
  cover_run->add_option("--instance", instance_path, "Covering instance JSON")->required();
  cover_run->add_option("--rows", rows_path, "Rows as JSON lines (else embedded rows)");
  cover_run->add_option("--dtau", dtau, "Step on the normalized clock");
  cover_run->add_flag("--auto-refine", auto_refine,
                      "Halve dtau while the lemma or rate diagnostics drift");
  cover_run->add_option("--lambda", lambda, "Asserted local lambda");
  cover_run->add_option("--mu", mu, "Asserted local mu");
  cover_run->add_flag("--oracle", with_oracle, "Also compute the grid optimum");
  cover_run->add_flag("--check-dual", check_dual, "Check the dual certificate");
  cover_run->add_option("--n-max", n_max, "Dual check size limit");

  // app run
  auto* apps = app.add_subcommand("app", "Applications");
  auto* app_run = apps->add_subcommand("run", "Run an application");
  apps->require_subcommand(1);
  std::string kind;
  app_run->add_option("--kind", kind, "routing|vecsched|energy|prize|facility")
      ->required()
      ->check(CLI::IsMember({"routing", "vecsched", "energy", "prize", "facility"}));
  app_run->add_option("--instance", instance_path, "Instance JSON")->required();
  app_run->add_flag("--oracle", with_oracle, "Also run the exhaustive oracle");

  // smoothness verify
  auto* smooth = app.add_subcommand("smoothness", "Smoothness verifiers");
  auto* verify = smooth->add_subcommand("verify", "Exhaustive smoothness check");
  smooth->require_subcommand(1);
  std::string cost_path;
  int n = 0;
  bool local = false;
  int verify_n_max = kDefaultSmoothnessNMax;
  verify->add_option("--instance,--cost", cost_path, "Cost JSON")->required();
  verify->add_option("--n", n, "Ground set size (default: taken from the cost)");
  verify->add_option("--lambda", lambda, "lambda")->required();
  verify->add_option("--mu", mu, "mu")->required();
  verify->add_flag("--local", local, "Per-set local form instead of chains");
  verify->add_option("--n-max", verify_n_max, "Size limit");

  // costlib params
  auto* costlib = app.add_subcommand("costlib", "Cost function library");
  auto* params_cmd = costlib->add_subcommand("params", "Smoothness parameters");
  costlib->require_subcommand(1);
  int d = 1;
  int poly_k = 0;
  std::string variant = "standard";
  params_cmd->add_option("--cost", cost_path, "Cost JSON");
  params_cmd->add_option("--n", n, "Ground set size");
  params_cmd->add_option("--d", d, "Row sparsity");
  params_cmd->add_option("--poly", poly_k, "Polynomial degree (analytic params only)");
  params_cmd->add_option("--variant", variant, "standard|log")
      ->check(CLI::IsMember({"standard", "log"}));

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Offline optimum");
  oracle->add_option("--instance", instance_path, "General or covering instance")
      ->required();
  oracle->add_option("--rows", rows_path, "Rows as JSON lines for covering");
  int resolution = 40;
  oracle->add_option("--resolution", resolution, "Grid resolution for covering");

  // generate
  auto* generate = app.add_subcommand("generate", "Seeded instance generator");
  std::uint64_t seed = 1;
  std::vector<std::string> sets;
  std::string out_path;
  generate->add_option("--kind", kind,
                       "general|covering|routing|vecsched|energy|prize|facility")
      ->required();
  generate->add_option("--seed", seed, "Seed");
  generate->add_option("--set", sets, "Generator field key=value (repeatable)");
  generate->add_option("--out", out_path, "Output file (stdout if absent)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment config");
  std::string config_path, csv_path, report_path;
  experiment->add_option("--config", config_path, "Config (JSON or key=value)")
      ->required();
  experiment->add_option("--csv", csv_path, "CSV output (stdout if absent)");
  experiment->add_option("--report", report_path, "JSON summary output");

  // mlext eval
  auto* mlext = app.add_subcommand("mlext", "Multilinear extension");
  auto* eval = mlext->add_subcommand("eval", "Evaluate F and its gradient");
  mlext->require_subcommand(1);
  std::string x_text;
  std::int64_t samples = 0;
  eval->add_option("--cost", cost_path, "Cost JSON")->required();
  eval->add_option("--x", x_text, "Comma separated point in [0,1]^n")->required();
  eval->add_option("--samples", samples, "Monte Carlo samples (0 = exact)");
  eval->add_option("--seed", seed, "Sampling seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (greedy_run->parsed()) {
      const GeneralInstance inst = ParseGeneralInstance(ReadFile(instance_path));
      const SmoothnessParams params =
          lambda ? Asserted(*lambda, mu.value_or(0.0)) : tools::GeneralParams(inst);
      tools::CaseOptions opt;
      opt.oracle = with_oracle;
      opt.check_dual = check_dual;
      opt.dual_n_max = n_max;
      const tools::ResultRow row = tools::RunGreedyCase(inst, params, opt);
      const GreedyResult res = RunOnline(inst, params);
      json out = RowJson(row);
      out["params"] = ParamsJson(params);
      out["assignment"] = res.assignment;
      out["marginals"] = res.state.request_marginal();
      return Emit(out, row.ok);
    }
    if (cover_run->parsed()) {
      CoveringInstance inst = ParseCoveringInstance(ReadFile(instance_path));
      if (!rows_path.empty()) inst.rows = ParseCoveringRows(ReadFile(rows_path));
      inst.Validate();
      const CoveringParams params =
          lambda ? CoveringFromLocal(Asserted(*lambda, mu.value_or(0.0)), inst.d)
                 : ParamsFor(*inst.cost, inst.n, inst.d);
      tools::CaseOptions opt;
      opt.oracle = with_oracle;
      opt.check_dual = check_dual;
      opt.dual_n_max = n_max;
      opt.covering.dtau = dtau;
      opt.auto_refine = auto_refine;
      const tools::ResultRow row = tools::RunCoveringCase(inst, params, opt);
      const CoveringRun run = SolveCovering(inst, params, opt.covering, auto_refine);
      json out = RowJson(row);
      out["params"] = ParamsJson(params.local);
      out["mu_alg"] = params.mu_alg;
      out["x"] = run.state.x;
      out["epochs"] = run.state.epochs.size();
      out["steps"] = run.state.diag.steps;
      out["lemma_gap"] = run.lemma.gap;
      out["max_rate"] = run.state.diag.max_rate;
      out["final_dtau"] = run.final_dtau;
      return Emit(out, row.ok);
    }
    if (app_run->parsed()) {
      const std::string text = ReadFile(instance_path);
      tools::CaseOptions opt;
      opt.oracle = with_oracle;
      tools::ResultRow row;
      json extra;
      if (kind == "routing") {
        const RoutingInstance inst = ParseRoutingInstance(text);
        row = tools::RunRoutingCase(inst, opt);
        const RoutingRun run = RunRouting(inst);
        for (const RouteChoice& c : run.choices) extra["paths"].push_back(c.paths);
      } else if (kind == "vecsched") {
        const VecSchedInstance inst = ParseVecSchedInstance(text);
        row = tools::RunVecSchedCase(inst, opt);
        extra["assignment"] = RunVecSched(inst).assignment;
      } else if (kind == "energy" || kind == "prize") {
        const EnergyInstance inst = ParseEnergyInstance(text);
        row = kind == "energy" ? tools::RunEnergyCase(inst, opt)
                               : tools::RunPrizeCase(inst, opt);
        const EnergyRun run =
            kind == "energy" ? RunEnergy(inst) : RunPrize(inst, EnergyParams(inst)).run;
        extra["machine"] = run.machine;
        for (const EnergyProfile& p : run.profiles) extra["units"].push_back(p.units);
      } else {
        const FacilityInstance inst = ParseFacilityInstance(text);
        row = tools::RunFacilityCase(inst, opt);
        const FacilityRun run = RunFacility(inst);
        for (const FacilityRecord& r : run.records) {
          extra["assignment"].push_back(r.facility);
          extra["alpha"].push_back(r.alpha);
        }
      }
      json out = RowJson(row);
      out.update(extra);
      return Emit(out, row.ok);
    }
    if (verify->parsed()) {
      const CostPtr f = ParseCost(ReadFile(cost_path));
      const SmoothnessParams p = Asserted(*lambda, *mu);
      const int ground_n = n > 0 ? n : GroundSizeOf(*f);
      const auto ground = UnitGround(ground_n);
      json out = {{"lambda", p.lambda}, {"mu", p.mu}, {"n", ground_n},
                  {"form", local ? "local" : "chain"}};
      if (local) {
        const auto c = VerifyLocalSmoothness(*f, ground, p, verify_n_max);
        if (!c) {
          std::cout << "HOLDS\n";
          return 0;
        }
        out["counterexample"] = {{"S", c->s}, {"R", c->r}, {"lhs", c->lhs}, {"rhs", c->rhs}};
      } else {
        const auto c = VerifySmoothness(*f, ground, p, verify_n_max);
        if (!c) {
          std::cout << "HOLDS\n";
          return 0;
        }
        out["counterexample"] = {{"A", c->a}, {"chain", c->chain}, {"B", c->b},
                                 {"lhs", c->lhs}, {"rhs", c->rhs}};
      }
      return Emit(out, false);
    }
    if (params_cmd->parsed()) {
      json out;
      if (poly_k > 0) {
        const PolyVariant v =
            variant == "log" ? PolyVariant::kLogScaled : PolyVariant::kStandard;
        const SmoothnessParams p = ComputePolyParams(poly_k, v, true);
        out = ParamsJson(p);
        const double mu_v = p.mu;
        out["b"] = poly_k >= 2 ? json(ComputeBOfK(poly_k - 1, std::min(1.0, mu_v / (poly_k - 1))).b)
                               : json(nullptr);
      } else {
        if (cost_path.empty()) throw InputError("need --cost or --poly");
        const CostPtr f = ParseCost(ReadFile(cost_path));
        const CoveringParams p = ParamsFor(*f, n > 0 ? n : GroundSizeOf(*f), d);
        out = ParamsJson(p.local);
        out["mu_alg"] = p.mu_alg;
        out["log_factor"] = p.log_factor;
        out["certificate_bound"] = Number(p.CertificateBound());
        out["ratio_bound"] = Number(p.RatioBound());
      }
      return Emit(out, true);
    }
    if (oracle->parsed()) {
      const json j = json::parse(ReadFile(instance_path));
      json out;
      if (j.contains("resources") && j.at("resources").is_number()) {
        CoveringInstance inst = ParseCoveringInstance(j.dump());
        if (!rows_path.empty()) inst.rows = ParseCoveringRows(ReadFile(rows_path));
        const GridOpt g = FractionalOptGrid(*inst.cost, inst.n, inst.rows, resolution);
        out = {{"opt", g.value},
               {"argmin", g.x},
               {"lower_bound", g.LowerBound()},
               {"integral_opt", g.integral_value},
               {"integral_argmin", g.integral_set},
               {"resolution", g.resolution}};
      } else {
        const OfflineOpt o = OfflineOptGeneral(ParseGeneralInstance(j.dump()));
        out = {{"opt", o.value}, {"argmin", o.assignment}, {"nodes", o.nodes}};
      }
      return Emit(out, true);
    }
    if (generate->parsed()) {
      json fields = json::object();
      for (const std::string& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw InputError("--set expects key=value");
        const json cfg = json::parse(tools::NormalizeConfig(s));
        fields.update(cfg);
      }
      fields.erase("experiments");
      const std::string text = tools::GenerateInstanceJson(kind, fields.dump(), seed);
      if (out_path.empty()) {
        std::cout << text << "\n";
      } else {
        WriteFile(out_path, text + "\n");
      }
      return 0;
    }
    if (experiment->parsed()) {
      const tools::ExperimentReport rep = tools::RunExperiments(ReadFile(config_path));
      const std::string csv = tools::ToCsv(rep.rows);
      if (csv_path.empty()) {
        std::cout << csv;
      } else {
        WriteFile(csv_path, csv);
      }
      if (!report_path.empty()) WriteFile(report_path, rep.json + "\n");
      if (rep.failures > 0) {
        std::cerr << rep.failures << " run(s) broke an asserted invariant\n";
        return 1;
      }
      return 0;
    }
    if (eval->parsed()) {
      const CostPtr f = ParseCost(ReadFile(cost_path));
      const FractionalPoint x(ParseList(x_text));
      json out;
      if (samples > 0) {
        const SampleSpec spec{samples, seed};
        const Estimate v = EvalFSampled(*f, x, spec);
        out["F"] = v.value;
        out["F_std_error"] = v.std_error;
        for (int e = 0; e < x.size(); ++e) {
          const Estimate g = GradFSampled(*f, x, e, spec);
          out["grad"].push_back(g.value);
          out["grad_std_error"].push_back(g.std_error);
        }
      } else {
        const Multilinear ml(f, x.size());
        out["F"] = ml.Value(x);
        out["grad"] = ml.Gradient(x);
      }
      return Emit(out, true);
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
