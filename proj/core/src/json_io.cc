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

#include "envyfree/json_io.h"

#include <fstream>
#include <sstream>

#include "envyfree/errors.h"

namespace envyfree {
namespace {

using nlohmann::json;

void CheckSchema(const json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  if (auto it = j.find("schema"); it != j.end()) {
    if (!it->is_string() || it->get<std::string>() != kSchemaVersion) {
      throw ParseError("unsupported schema version");
    }
  }
}

const json& Field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T Get(const json& j, const char* key) {
  try {
    return Field(j, key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<int> IntArray(const json& j, const char* key) {
  const json& arr = Field(j, key);
  if (!arr.is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  std::vector<int> out;
  out.reserve(arr.size());
  for (const json& v : arr) {
    if (!v.is_number_integer()) {
      throw ParseError(std::string("field '") + key + "' must hold integers");
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// Rethrow validation failures from constructors as parse errors.
template <typename Fn>
auto Guard(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

json DistributionToJson(const DistributionSpec& dist) {
  switch (dist.kind()) {
    case DistributionSpec::Kind::kUniform:
      return {{"kind", "uniform"}};
    case DistributionSpec::Kind::kTruncatedNormal:
      return {{"kind", "truncated_normal"}, {"mu", dist.mu()}, {"sigma", dist.sigma()}};
    case DistributionSpec::Kind::kStaircase:
      return {{"kind", "staircase"}};
    case DistributionSpec::Kind::kTable: {
      json points = json::array();
      for (const auto& [v, c] : dist.points()) points.push_back({v, c});
      return {{"kind", "table"}, {"points", points}};
    }
  }
  return {};
}

DistributionSpec DistributionFromJson(const json& j) {
  return Guard([&]() {
    if (!j.is_object()) throw ParseError("distribution must be an object");
    const auto kind = Get<std::string>(j, "kind");
    if (kind == "uniform") return DistributionSpec::Uniform();
    if (kind == "staircase") return DistributionSpec::Staircase();
    if (kind == "truncated_normal") {
      return DistributionSpec::TruncatedNormal(Get<double>(j, "mu"), Get<double>(j, "sigma"));
    }
    if (kind == "table") {
      std::vector<DistributionSpec::TablePoint> points;
      for (const json& p : Field(j, "points")) {
        if (!p.is_array() || p.size() != 2) throw ParseError("table point must be [v, c]");
        points.emplace_back(p[0].get<double>(), p[1].get<double>());
      }
      return DistributionSpec::Table(std::move(points));
    }
    throw ParseError("unknown distribution kind '" + kind + "'");
  });
}

json InstanceToJson(const Instance& inst) {
  json rows = json::array();
  for (int i = 0; i < inst.num_agents(); ++i) {
    const auto row = inst.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"schema", kSchemaVersion},
          {"n", inst.num_agents()},
          {"m", inst.num_items()},
          {"seed", inst.seed()},
          {"dist", DistributionToJson(inst.dist())},
          {"utilities", rows}};
}

Instance InstanceFromJson(const json& j) {
  return Guard([&]() {
    CheckSchema(j);
    const int n = Get<int>(j, "n");
    const int m = Get<int>(j, "m");
    const json& rows = Field(j, "utilities");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(std::max(n, 0))) {
      throw ParseError("utilities must have n rows");
    }
    std::vector<double> utilities;
    for (const json& row : rows) {
      if (!row.is_array() || row.size() != static_cast<std::size_t>(std::max(m, 0))) {
        throw ParseError("each utility row must have m entries");
      }
      for (const json& u : row) {
        if (!u.is_number()) throw ParseError("utilities must be numbers");
        utilities.push_back(u.get<double>());
      }
    }
    return Instance(n, m, std::move(utilities), Get<std::uint64_t>(j, "seed"),
                    DistributionFromJson(Field(j, "dist")));
  });
}

json AllocationToJson(const Allocation& alloc) {
  return {{"schema", kSchemaVersion}, {"owner", alloc.owner}};
}

Allocation AllocationFromJson(const json& j, int num_agents) {
  return Guard([&]() {
    CheckSchema(j);
    return MakeAllocation(num_agents, IntArray(j, "owner"));
  });
}

json AllocatorResultToJson(const std::optional<Allocation>& alloc, const RemovalLog& log,
                           std::optional<double> tau) {
  json removals = json::array();
  for (const RemovalEntry& e : log) removals.push_back({e.agent, e.item, e.trigger, e.step});
  json out = {{"schema", kSchemaVersion},
              {"status", alloc ? "allocation" : "null"},
              {"owner", alloc ? json(alloc->owner) : json(nullptr)},
              {"removals", removals},
              {"tau", tau ? json(*tau) : json(nullptr)}};
  return out;
}

json TauRequestToJson(const TauRequest& tau) {
  switch (tau.mode) {
    case TauRequest::Mode::kConstant:
      return {{"kind", "constant"}, {"c", tau.value}};
    case TauRequest::Mode::kFixed:
      return {{"kind", "fixed"}, {"tau", tau.value}};
    case TauRequest::Mode::kQuantile:
      return {{"kind", "quantile"}, {"kappa", tau.value}};
  }
  return {};
}

TauRequest TauRequestFromJson(const json& j) {
  return Guard([&]() {
    if (!j.is_object()) throw ParseError("tau_mode must be an object");
    const auto kind = Get<std::string>(j, "kind");
    if (kind == "constant") {
      return TauRequest::Constant(j.contains("c") ? Get<double>(j, "c") : 64.0);
    }
    if (kind == "fixed") return TauRequest::Fixed(Get<double>(j, "tau"));
    if (kind == "quantile") {
      return TauRequest::Quantile(j.contains("kappa") ? Get<double>(j, "kappa") : 2.0);
    }
    throw ParseError("unknown tau_mode kind '" + kind + "'");
  });
}

json SweepConfigToJson(const SweepConfig& cfg) {
  json grid = json::array();
  for (const auto& [n, m] : cfg.grid) grid.push_back({n, m});
  json algorithms = json::array();
  for (Algorithm a : cfg.algorithms) algorithms.push_back(AlgorithmName(a));
  return {{"schema", kSchemaVersion},
          {"grid", grid},
          {"dist", DistributionToJson(cfg.dist)},
          {"trials", cfg.trials},
          {"algorithms", algorithms},
          {"tau_mode", TauRequestToJson(cfg.tau)},
          {"master_seed", cfg.master_seed},
          {"brute_cap", cfg.brute_cap}};
}

SweepConfig SweepConfigFromJson(const json& j) {
  return Guard([&]() {
    CheckSchema(j);
    SweepConfig cfg;
    for (const json& point : Field(j, "grid")) {
      if (!point.is_array() || point.size() != 2) throw ParseError("grid point must be [n, m]");
      cfg.grid.emplace_back(point[0].get<int>(), point[1].get<int>());
    }
    cfg.dist = DistributionFromJson(Field(j, "dist"));
    cfg.trials = Get<int>(j, "trials");
    for (const json& a : Field(j, "algorithms")) {
      cfg.algorithms.push_back(ParseAlgorithm(a.get<std::string>()));
    }
    if (j.contains("tau_mode")) cfg.tau = TauRequestFromJson(j.at("tau_mode"));
    cfg.master_seed = Get<std::uint64_t>(j, "master_seed");
    if (j.contains("brute_cap")) cfg.brute_cap = Get<std::uint64_t>(j, "brute_cap");
    cfg.Validate();
    return cfg;
  });
}

json SweepResultToJson(const SweepConfig& cfg, const SweepResult& result) {
  json rows = json::array();
  const std::string dist = cfg.dist.Label();
  const std::string tau = cfg.tau.Label();
  for (const PointSummary& s : result.points) {
    rows.push_back({{"n", s.n},
                    {"m", s.m},
                    {"r", s.r},
                    {"dist", dist},
                    {"algorithm", AlgorithmName(s.algorithm)},
                    {"tau_mode", tau},
                    {"trials", s.trials},
                    {"success_rate", s.success_rate},
                    {"ef_rate", s.ef_rate},
                    {"ci_low", s.ef_ci.low},
                    {"ci_high", s.ef_ci.high},
                    {"mean_removals", s.mean_removals},
                    {"master_seed", cfg.master_seed}});
  }
  return {{"schema", kSchemaVersion}, {"rows", rows}};
}

json TrialRecordToJson(const TrialRecord& record) {
  json out = {{"schema", kSchemaVersion},
              {"n", record.n},
              {"m", record.m},
              {"r", record.r},
              {"algorithm", AlgorithmName(record.algorithm)},
              {"trial_index", record.trial_index},
              {"seed", record.seed},
              {"outcome", OutcomeName(record.outcome)},
              {"removals", record.removals},
              {"runtime_ns", record.runtime_ns},
              {"tau", record.tau ? json(*record.tau) : json(nullptr)},
              {"owner", record.allocation ? json(record.allocation->owner) : json(nullptr)},
              {"certified", record.certified ? json(*record.certified) : json(nullptr)}};
  return out;
}

TrialRecord TrialRecordFromJson(const json& j) {
  return Guard([&]() {
    CheckSchema(j);
    TrialRecord record;
    record.n = Get<int>(j, "n");
    record.m = Get<int>(j, "m");
    record.r = Get<int>(j, "r");
    record.algorithm = ParseAlgorithm(Get<std::string>(j, "algorithm"));
    record.trial_index = Get<int>(j, "trial_index");
    record.seed = Get<std::uint64_t>(j, "seed");
    record.outcome = ParseOutcome(Get<std::string>(j, "outcome"));
    record.removals = Get<int>(j, "removals");
    record.runtime_ns = Get<std::int64_t>(j, "runtime_ns");
    if (const json& tau = Field(j, "tau"); !tau.is_null()) record.tau = tau.get<double>();
    if (const json& owner = Field(j, "owner"); !owner.is_null()) {
      record.allocation = MakeAllocation(record.n, IntArray(j, "owner"));
    }
    if (const json& cert = Field(j, "certified"); !cert.is_null()) {
      record.certified = cert.get<bool>();
    }
    return record;
  });
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

}  // namespace envyfree
