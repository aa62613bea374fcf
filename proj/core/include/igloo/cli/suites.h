// Copyright 2026 The igloo-kit Authors
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

#ifndef IGLOO_CLI_SUITES_H_
#define IGLOO_CLI_SUITES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/kernel/verdict.h"
#include "igloo/simnet/scenario.h"

namespace igloo {

struct CheckItem {
  std::string name;
  Status status = Status::kPass;
  nlohmann::json detail = nlohmann::json::object();
};

struct CheckReport {
  std::string command;
  std::vector<CheckItem> items;

  Status status() const;
  void add(std::string name, Status status, nlohmann::json detail = nlohmann::json::object());
  // {"schema", "command", "status", "items": [{"name", "status", "detail"}]}
  nlohmann::json to_json() const;
  // One "<STATUS> <name>" line per item.
  std::string to_text() const;
};

// 0 all PASS, 1 any FAIL, 3 any BUDGET_EXCEEDED.
int exit_code(Status s);

struct SuiteOptions {
  std::size_t depth = 5;
  // Depth for searches over a recomposed system; defaults to `depth`.
  std::optional<std::size_t> interface_depth;
  std::size_t budget = kDefaultNodeLimit;  // explored-node limit per search
  std::size_t cases = 100;                 // randomized instances
  std::uint64_t seed = 0;                  // first randomized instance
};

// Leader: both refinement steps with their relations and mediators, plus the
// two mutant mediators, which must fail. Replication: protocol invariants
// and the no-ack-wait mutant. Auth: recomposed system against the protocol,
// agreement on the protocol, and the unsigned-name mutant.
CheckReport refinement_suite(const Scenario& sc, const SuiteOptions& opt);

// Randomized event-system pairs: traces of the parallel composition against
// the composed trace sets. With a scenario, also the recomposed
// decomposition against the model it was split from.
CheckReport composition_suite(const SuiteOptions& opt, const Scenario* sc = nullptr);

// Randomized I/O-guarded systems: event-system traces against the traces of
// the translated process.
CheckReport translation_suite(const SuiteOptions& opt);

// process = "example8", "random", or "all".
CheckReport theorem4_suite(const std::string& process, const SuiteOptions& opt);

// The I/O specification of one component of a scenario; `component` is a
// node id (leader, replication) or a component position (auth).
std::string dump_component_iospec(const Scenario& sc, int component);

// Traces of one model of a scenario: "abstract", "protocol", "interface",
// or "recomposed".
TraceSet enumerate_scenario(const Scenario& sc, const std::string& model, std::size_t depth);

}  // namespace igloo

#endif  // IGLOO_CLI_SUITES_H_
