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

#ifndef ENVYFREE_JSON_IO_H_
#define ENVYFREE_JSON_IO_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "envyfree/allocators.h"
#include "envyfree/distributions.h"
#include "envyfree/experiments.h"
#include "envyfree/instance.h"

namespace envyfree {

// Every document written here carries "schema": "v1"; readers accept a
// missing schema field but reject any other version. Readers throw
// ParseError on malformed input. Doubles are written in shortest round-trip
// form, so values survive a write/read cycle exactly.

inline constexpr std::string_view kSchemaVersion = "v1";

// {"kind":"uniform"} | {"kind":"truncated_normal","mu":..,"sigma":..} |
// {"kind":"staircase"} | {"kind":"table","points":[[v,c],...]}
nlohmann::json DistributionToJson(const DistributionSpec& dist);
DistributionSpec DistributionFromJson(const nlohmann::json& j);

// {"schema","n","m","seed","dist","utilities":[[...],...]}
nlohmann::json InstanceToJson(const Instance& inst);
Instance InstanceFromJson(const nlohmann::json& j);

// {"schema","owner":[...]}; the agent count comes from the instance it is
// read against.
nlohmann::json AllocationToJson(const Allocation& alloc);
Allocation AllocationFromJson(const nlohmann::json& j, int num_agents);

// {"schema","status":"allocation"|"null","owner":[...]|null,
//  "removals":[[i,j,i_prime,step],...],"tau":..|null}
nlohmann::json AllocatorResultToJson(const std::optional<Allocation>& alloc,
                                     const RemovalLog& log, std::optional<double> tau);

nlohmann::json TauRequestToJson(const TauRequest& tau);
TauRequest TauRequestFromJson(const nlohmann::json& j);

nlohmann::json SweepConfigToJson(const SweepConfig& cfg);
SweepConfig SweepConfigFromJson(const nlohmann::json& j);

// Same columns as the CSV, as {"schema","rows":[{...},...]}.
nlohmann::json SweepResultToJson(const SweepConfig& cfg, const SweepResult& result);

nlohmann::json TrialRecordToJson(const TrialRecord& record);
TrialRecord TrialRecordFromJson(const nlohmann::json& j);

// Reads and parses a whole file; ParseError on I/O or syntax failure.
nlohmann::json ReadJsonFile(const std::string& path);

}  // namespace envyfree

#endif  // ENVYFREE_JSON_IO_H_
