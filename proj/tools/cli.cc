// Copyright 2026 The Envyfree Authors.
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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "envyfree/allocators.h"
#include "envyfree/analysis.h"
#include "envyfree/errors.h"
#include "envyfree/experiments.h"
#include "envyfree/json_io.h"

namespace envyfree::cli {
namespace {

using nlohmann::json;

// Accepts "uniform", "staircase", "truncated_normal:MU:SIGMA", an inline JSON
// object, or "@path" to a JSON file.
DistributionSpec ParseDistFlag(const std::string& text) {
  if (text == "uniform") return DistributionSpec::Uniform();
  if (text == "staircase") return DistributionSpec::Staircase();
  if (text.rfind("truncated_normal:", 0) == 0) {
    std::istringstream in(text.substr(17));
    double mu = 0.0;
    double sigma = 0.0;
    char sep = 0;
    if (!(in >> mu >> sep >> sigma) || sep != ':' || !in.eof()) {
      throw ParseError("expected truncated_normal:MU:SIGMA, got '" + text + "'");
    }
    return DistributionSpec::TruncatedNormal(mu, sigma);
  }
  if (!text.empty() && text.front() == '@') return DistributionFromJson(ReadJsonFile(text.substr(1)));
  if (!text.empty() && text.front() == '{') {
    try {
      return DistributionFromJson(json::parse(text));
    } catch (const json::exception& e) {
      throw ParseError(std::string("--dist: ") + e.what());
    }
  }
  throw ParseError("unknown distribution '" + text + "'");
}

void Emit(const json& doc, const std::string& out_path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw Error("cannot write '" + out_path + "'");
  file << text;
}

void EmitText(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw Error("cannot write '" + out_path + "'");
  file << text;
}

struct TauFlags {
  std::string mode = "quantile";
  double tau = 0.9;
  double kappa = 2.0;
  double c = 64.0;

  void Register(CLI::App* app) {
    app->add_option("--tau-mode", mode, "Threshold rule: constant, fixed or quantile")
        ->check(CLI::IsMember({"constant", "fixed", "quantile"}))
        ->capture_default_str();
    app->add_option("--tau", tau, "Threshold for --tau-mode fixed")->capture_default_str();
    app->add_option("--kappa", kappa, "Quantile mode: edge probability ~ kappa*log(m)/n")
        ->capture_default_str();
    app->add_option("--c", c, "Constant-mode c")->capture_default_str();
  }

  TauRequest Request() const {
    if (mode == "constant") return TauRequest::Constant(c);
    if (mode == "fixed") return TauRequest::Fixed(tau);
    return TauRequest::Quantile(kappa);
  }
};

std::optional<PolyBoundParams> MaybePolyBound(const DistributionSpec& dist) {
  try {
    return AnalyticPolyBound(dist);
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

int ResolveR(const Instance& inst, int r_flag) {
  if (r_flag > 0) return r_flag;
  if (inst.num_items() % inst.num_agents() != 0) {
    throw InvalidArgument("m is not a multiple of n; threshold allocators need m = r*n");
  }
  return inst.num_items() / inst.num_agents();
}

// Adds {"value","tau_prime","error"} for one tau rule.
json TauBlock(const std::function<double()>& resolve) {
  json block;
  try {
    const double tau = resolve();
    if (!(tau > 0.0)) {
      block["value"] = tau;
      block["tau_prime"] = TauPrime(tau);
      block["error"] = "threshold non-positive: n too small for this constant";
    } else {
      block["value"] = tau;
      block["tau_prime"] = TauPrime(tau);
      block["error"] = nullptr;
    }
  } catch (const Error& e) {
    block["value"] = nullptr;
    block["tau_prime"] = nullptr;
    block["error"] = e.what();
  }
  return block;
}

json BoundsReport(std::int64_t n, std::int64_t m, const DistributionSpec& dist,
                  double epsilon, double c, double kappa) {
  if (n < 1 || m < 1) throw InvalidArgument("bounds: n and m must be >= 1");
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["n"] = n;
  doc["m"] = m;
  doc["r"] = m / n;
  doc["ell"] = m % n;
  doc["dist"] = DistributionToJson(dist);
  doc["epsilon"] = epsilon;

  const auto params = MaybePolyBound(dist);
  if (params) {
    doc["poly_bound"] = {{"theta_lower", params->theta_lower},
                         {"theta_upper", params->theta_upper},
                         {"q", params->q}};
    doc["big_c"] = BigC(params->q, params->theta_upper, params->theta_lower);
  } else {
    doc["poly_bound"] = nullptr;
    doc["poly_bound_reason"] = "no analytic polynomial bound available for " + dist.Label();
    doc["big_c"] = nullptr;
  }

  json tau_constant = TauBlock([&]() {
    if (!params) throw InvalidArgument("needs polynomial-bound parameters");
    return ConstantTau(c, n, m, *params);
  });
  tau_constant["c"] = c;
  doc["tau_constant"] = tau_constant;
  doc["tau_c64"] = TauBlock([&]() {
    if (!params) throw InvalidArgument("needs polynomial-bound parameters");
    return ConstantTau(64.0, n, m, *params);
  });
  json tau_quantile = TauBlock([&]() { return PopulationQuantileTau(dist, n, m, kappa); });
  tau_quantile["kappa"] = kappa;
  doc["tau_quantile"] = tau_quantile;

  doc["coupon_threshold"] = n >= 2 ? json(CouponThreshold(n)) : json(nullptr);

  json nonexistence_range = nullptr;
  if (params && params->theta_lower <= 1.0 && epsilon > 0.0 && epsilon < 1.0) {
    const double q = std::max(params->q, 1.0);
    const double c2 = NonexistenceC(epsilon, params->theta_lower, q);
    nonexistence_range = {{"c", c2},
                {"theta", params->theta_lower},
                {"q", q},
                {"max_r", n >= 3 ? json(NonexistenceMaxR(n, c2)) : json(nullptr)}};
    if (n >= 3) nonexistence_range["r_admissible"] = m / n >= 1 && m / n <= NonexistenceMaxR(n, c2);
  }
  doc["nonexistence_range"] = nonexistence_range;

  json nonexistence = nullptr;
  std::string reason;
  if (m % n == 0) {
    reason = "ℓ = 0";
  } else if (m / n < 1) {
    reason = "r = 0";
  } else if (!params) {
    reason = "distribution has no polynomial lower bound";
  } else {
    NonExistenceBoundParams p;
    p.n = n;
    p.m = m;
    p.r = m / n;
    p.theta = params->theta_lower;
    p.q = std::max(params->q, 1.0);
    p.epsilon = epsilon;
    try {
      const PerAllocationBound per = PerAllocationEfBound(p);
      const GlobalBound global = GlobalNonexistenceBound(p);
      nonexistence = {{"rho", Rho(p.theta, p.q, p.r)},
                      {"rho_log", LogRho(p.theta, p.q, p.r)},
                      {"exponent", per.exponent},
                      {"per_allocation_bound_log", per.log_bound},
                      {"per_allocation_min_form_log", per.log_min_form},
                      {"per_allocation_epsilon_form_log", per.log_epsilon_form},
                      {"ell_in_theorem_range", per.ell_in_theorem_range},
                      {"global_bound_log", global.log_bound},
                      {"target_log", global.log_target},
                      {"satisfies_theorem", global.satisfies_theorem}};
    } catch (const Error& e) {
      reason = e.what();
    }
  }
  doc["nonexistence"] = nonexistence;
  if (nonexistence.is_null()) doc["nonexistence_reason"] = reason;
  return doc;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Envy-free allocation of indivisible items under random utilities"};
  app.name("envyfree");
  app.require_subcommand(1);

  std::string out_path;
  auto add_out = [&out_path](CLI::App* sub) {
    sub->add_option("--out", out_path, "Write output to this file instead of stdout");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  int gen_n = 0;
  int gen_m = 0;
  std::string gen_dist = "uniform";
  std::uint64_t gen_seed = 0;
  gen->add_option("--n", gen_n, "Number of agents")->required();
  gen->add_option("--m", gen_m, "Number of items")->required();
  gen->add_option("--dist", gen_dist, "uniform | staircase | truncated_normal:MU:SIGMA | JSON | @file")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  add_out(gen);

  // solve
  auto* solve = app.add_subcommand("solve", "Run an allocator on an instance");
  std::string solve_instance;
  std::string solve_alg;
  int solve_r = 0;
  TauFlags solve_tau;
  solve->add_option("instance", solve_instance, "Instance JSON file")->required();
  solve->add_option("--alg", solve_alg, "wmax | alg1 | alg2")
      ->required()
      ->check(CLI::IsMember({"wmax", "alg1", "alg2"}));
  solve->add_option("--r", solve_r, "Items per agent (default m/n)");
  solve_tau.Register(solve);
  add_out(solve);

  // check
  auto* check = app.add_subcommand("check", "Audit an allocation for envy");
  std::string check_instance;
  std::string check_alloc;
  check->add_option("instance", check_instance, "Instance JSON file")->required();
  check->add_option("allocation", check_alloc, "Allocation JSON file")->required();
  add_out(check);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "Exhaustively search for an envy-free allocation");
  std::string oracle_instance;
  std::uint64_t oracle_cap = kDefaultBruteForceCap;
  oracle->add_option("instance", oracle_instance, "Instance JSON file")->required();
  oracle->add_option("--cap", oracle_cap, "Maximum n^m to enumerate")->capture_default_str();
  add_out(oracle);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate thresholds, constants and bounds");
  std::int64_t bounds_n = 0;
  std::int64_t bounds_m = 0;
  std::string bounds_dist = "uniform";
  double bounds_eps = 0.5;
  double bounds_c = 64.0;
  double bounds_kappa = 2.0;
  bounds->add_option("--n", bounds_n, "Number of agents")->required();
  bounds->add_option("--m", bounds_m, "Number of items")->required();
  bounds->add_option("--dist", bounds_dist, "Distribution")->capture_default_str();
  bounds->add_option("--epsilon", bounds_eps, "Non-existence epsilon in (0,1)")->capture_default_str();
  bounds->add_option("--c", bounds_c, "Constant-mode c")->capture_default_str();
  bounds->add_option("--kappa", bounds_kappa, "Quantile-mode kappa")->capture_default_str();
  add_out(bounds);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a Monte Carlo sweep from a config file");
  std::string sweep_config;
  int sweep_workers = 0;
  std::optional<std::uint64_t> sweep_seed;
  std::string sweep_json;
  std::string sweep_records;
  sweep->add_option("--config", sweep_config, "SweepConfig JSON file")->required();
  sweep->add_option("--workers", sweep_workers, "Worker threads (0 = all cores)")->capture_default_str();
  sweep->add_option("--seed", sweep_seed, "Override the config's master_seed");
  sweep->add_option("--json", sweep_json, "Also write the JSON mirror here");
  sweep->add_option("--records", sweep_records, "Write per-trial records (JSON lines) here");
  add_out(sweep);

  // certify
  auto* certify = app.add_subcommand("certify", "Run alg2 and verify every removal certificate");
  std::string certify_instance;
  int certify_r = 0;
  TauFlags certify_tau;
  certify->add_option("instance", certify_instance, "Instance JSON file")->required();
  certify->add_option("--r", certify_r, "Items per agent (default m/n)");
  certify_tau.Register(certify);
  add_out(certify);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  try {
    if (*gen) {
      const Instance inst = GenerateInstance(gen_n, gen_m, ParseDistFlag(gen_dist), gen_seed);
      Emit(InstanceToJson(inst), out_path, out);
      return kExitOk;
    }

    if (*solve) {
      const Instance inst = InstanceFromJson(ReadJsonFile(solve_instance));
      if (solve_alg == "wmax") {
        Emit(AllocatorResultToJson(WelfareMaximizing(inst), {}, std::nullopt), out_path, out);
        return kExitOk;
      }
      const int r = ResolveR(inst, solve_r);
      const TauChoice tau =
          SelectTau(inst, r, MaybePolyBound(inst.dist()), solve_tau.Request());
      std::optional<Allocation> alloc;
      RemovalLog log;
      if (solve_alg == "alg1") {
        alloc = ThresholdMatching(inst, r, tau.resolved_tau);
      } else {
        RemovalOutcome result = ThresholdMatchingWithRemoval(inst, r, tau.resolved_tau);
        alloc = std::move(result.allocation);
        log = std::move(result.log);
      }
      Emit(AllocatorResultToJson(alloc, log, tau.resolved_tau), out_path, out);
      return alloc ? kExitOk : kExitNull;
    }

    if (*check) {
      const Instance inst = InstanceFromJson(ReadJsonFile(check_instance));
      const Allocation alloc = AllocationFromJson(ReadJsonFile(check_alloc), inst.num_agents());
      if (alloc.num_items() != inst.num_items()) {
        throw DimensionMismatch("allocation covers " + std::to_string(alloc.num_items()) +
                                " items, instance has " + std::to_string(inst.num_items()));
      }
      const EnvyReport report = CheckEnvy(inst, alloc);
      json doc = {{"schema", kSchemaVersion},
                  {"envy_free", report.envy_free},
                  {"max_envy", report.max_envy},
                  {"bundle_sizes", alloc.BundleSizes()}};
      if (report.witness) {
        doc["witness"] = {{"envious", report.witness->envious},
                          {"envied", report.witness->envied},
                          {"deficit", report.witness->deficit}};
        err << "agent " << report.witness->envious + 1 << " envies agent "
            << report.witness->envied + 1 << " (deficit " << report.witness->deficit << ")\n";
      } else {
        doc["witness"] = nullptr;
      }
      Emit(doc, out_path, out);
      return report.envy_free ? kExitOk : kExitNegative;
    }

    if (*oracle) {
      const Instance inst = InstanceFromJson(ReadJsonFile(oracle_instance));
      const BruteForceResult result = BruteForceEfExists(inst, oracle_cap);
      json doc = {{"schema", kSchemaVersion},
                  {"exists", result.exists},
                  {"count", result.count},
                  {"allocations", AllocationCount(inst.num_agents(), inst.num_items())},
                  {"witness", result.witness ? json(result.witness->owner) : json(nullptr)}};
      Emit(doc, out_path, out);
      return result.exists ? kExitOk : kExitNegative;
    }

    if (*bounds) {
      Emit(BoundsReport(bounds_n, bounds_m, ParseDistFlag(bounds_dist), bounds_eps, bounds_c,
                        bounds_kappa),
           out_path, out);
      return kExitOk;
    }

    if (*sweep) {
      SweepConfig cfg = SweepConfigFromJson(ReadJsonFile(sweep_config));
      if (sweep_seed) cfg.master_seed = *sweep_seed;
      const SweepResult result = RunSweep(cfg, sweep_workers);
      EmitText(SweepCsv(cfg, result), out_path, out);
      if (!sweep_json.empty()) {
        std::ofstream file(sweep_json);
        if (!file) throw Error("cannot write '" + sweep_json + "'");
        file << SweepResultToJson(cfg, result).dump(2) << "\n";
      }
      if (!sweep_records.empty()) {
        std::ofstream file(sweep_records);
        if (!file) throw Error("cannot write '" + sweep_records + "'");
        for (const TrialRecord& record : result.records) {
          file << TrialRecordToJson(record).dump() << "\n";
        }
      }
      return kExitOk;
    }

    if (*certify) {
      const Instance inst = InstanceFromJson(ReadJsonFile(certify_instance));
      const int r = ResolveR(inst, certify_r);
      const TauChoice tau =
          SelectTau(inst, r, MaybePolyBound(inst.dist()), certify_tau.Request());
      const RemovalOutcome result = ThresholdMatchingWithRemoval(inst, r, tau.resolved_tau);
      const CertificateReport report =
          VerifyRemovalCertificates(inst, tau.resolved_tau, r, result.log);
      json entries = json::array();
      for (const CertificateDetail& d : report.details) {
        entries.push_back({{"agent", d.entry.agent},
                           {"item", d.entry.item},
                           {"trigger", d.entry.trigger},
                           {"step", d.entry.step},
                           {"edge_in_threshold_graph", d.edge_in_threshold_graph},
                           {"witness", d.witness ? json(*d.witness) : json(nullptr)},
                           {"intersection_size", d.intersection_size},
                           {"certified", d.certified}});
      }
      json doc = {{"schema", kSchemaVersion},
                  {"status", result.allocation ? "allocation" : "null"},
                  {"tau", tau.resolved_tau},
                  {"tau_prime", report.tau_prime},
                  {"degenerate_tau_prime", report.degenerate_tau_prime},
                  {"all_certified", report.all_certified},
                  {"removals", entries}};
      if (report.degenerate_tau_prime) {
        err << "warning: degenerate tau-prime " << report.tau_prime
            << " <= 0; every item clears u > tau'\n";
      }
      Emit(doc, out_path, out);
      return report.all_certified ? kExitOk : kExitNegative;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace envyfree::cli
