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

// igloo-kit: model checks, simulations, and dumps.
//
// Exit codes: 0 all PASS, 1 any FAIL or violation, 2 usage or
// configuration error, 3 budget exceeded.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "igloo/cli/suites.h"
#include "igloo/error.h"
#include "igloo/simnet/scenario.h"

namespace {

using nlohmann::json;
using namespace igloo;

constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Common {
  std::string out;
  std::size_t budget = kDefaultNodeLimit;
};

void write_report(const Common& common, const json& report) {
  if (common.out.empty()) return;
  std::ofstream os(common.out);
  if (!os) throw Error(ErrorCode::kConfig, "cannot write " + common.out);
  os << report.dump(2) << "\n";
}

int finish_report(const Common& common, const CheckReport& report) {
  std::cout << report.to_text();
  write_report(common, report.to_json());
  return exit_code(report.status());
}

int default_component(const Scenario& sc) {
  return sc.protocol == ProtocolKind::kLeader ? sc.ring.ids.front() : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"igloo-kit: refinement, composition, and I/O specification checks"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "Write the JSON report here");
    sub->add_option("--budget", common.budget, "Explored-node limit per search")
        ->check(CLI::PositiveNumber);
  };

  std::string scenario_name;
  std::size_t depth = 0;
  std::size_t cases = 0;
  std::uint64_t seed = 0;

  auto* refinement = app.add_subcommand("check-refinement", "Bounded refinement and invariant checks");
  refinement->add_option("--scenario", scenario_name, "Built-in name or JSON file")->required();
  refinement->add_option("--depth", depth, "Search depth (default: scenario depth)");
  std::optional<std::size_t> interface_depth;
  refinement->add_option("--interface-depth", interface_depth,
                         "Depth for the recomposed system (default: scenario setting)");
  add_common(refinement);

  auto* composition =
      app.add_subcommand("check-composition", "Composition traces against composed trace sets");
  composition->add_option("--scenario", scenario_name, "Also check this decomposition");
  composition->add_option("--depth", depth, "Trace depth (default 4)");
  composition->add_option("--cases", cases, "Random system pairs (default 100)");
  composition->add_option("--seed", seed, "First random seed");
  add_common(composition);

  auto* theorem3 =
      app.add_subcommand("check-theorem3", "I/O-guarded systems against their processes");
  theorem3->add_option("--depth", depth, "Trace depth (default 4)");
  theorem3->add_option("--cases", cases, "Random systems (default 100)");
  theorem3->add_option("--seed", seed, "First random seed");
  add_common(theorem3);

  std::string process = "example8";
  auto* theorem4 =
      app.add_subcommand("check-theorem4", "Processes against their I/O specifications");
  theorem4->add_option("--process", process, "example8, random, or all")
      ->check(CLI::IsMember({"example8", "random", "all"}));
  theorem4->add_option("--depth", depth, "Trace depth (default 3)");
  theorem4->add_option("--cases", cases, "Random processes (default 50)");
  theorem4->add_option("--seed", seed, "First random seed");
  add_common(theorem4);

  std::string model = "protocol";
  std::size_t limit = 20;
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the traces of a model");
  enumerate->add_option("--scenario", scenario_name, "Built-in name or JSON file")->required();
  enumerate->add_option("--model", model, "abstract, protocol, interface, or recomposed");
  enumerate->add_option("--depth", depth, "Trace depth (default 3)");
  enumerate->add_option("--limit", limit, "Traces to print");
  add_common(enumerate);

  std::optional<std::size_t> steps;
  bool audit = false;
  std::string log_path;
  auto* simulate = app.add_subcommand("simulate", "Run a monitored simulation");
  simulate->add_option("--scenario", scenario_name, "Built-in name or JSON file")->required();
  simulate->add_option("--seed", seed, "Scheduler seed");
  simulate->add_option("--steps", steps, "Step limit (default: scenario steps)");
  simulate->add_flag("--audit", audit, "Log denied actions and keep running");
  simulate->add_option("--log", log_path, "Write the trace log as JSON lines");
  add_common(simulate);

  auto* replay = app.add_subcommand("replay", "Replay a trace log in the recomposed model");
  replay->add_option("--scenario", scenario_name, "Built-in name or JSON file")->required();
  replay->add_option("--log", log_path, "Trace log (JSON lines)")->required();
  add_common(replay);

  std::optional<int> component;
  auto* dump = app.add_subcommand("dump-iospec", "Print a component's I/O specification");
  dump->add_option("--scenario", scenario_name, "Built-in name or JSON file")->required();
  dump->add_option("--component", component, "Node id, or component position for auth");
  add_common(dump);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    SuiteOptions opt;
    opt.budget = common.budget;
    opt.seed = seed;

    if (*refinement) {
      const Scenario sc = load_scenario(scenario_name);
      opt.depth = depth ? depth : sc.depth;
      opt.interface_depth = interface_depth ? interface_depth : sc.interface_depth;
      return finish_report(common, refinement_suite(sc, opt));
    }
    if (*composition) {
      opt.depth = depth ? depth : 4;
      opt.cases = cases ? cases : 100;
      std::optional<Scenario> sc;
      if (!scenario_name.empty()) sc = load_scenario(scenario_name);
      return finish_report(common, composition_suite(opt, sc ? &*sc : nullptr));
    }
    if (*theorem3) {
      opt.depth = depth ? depth : 4;
      opt.cases = cases ? cases : 100;
      return finish_report(common, translation_suite(opt));
    }
    if (*theorem4) {
      opt.depth = depth ? depth : 3;
      opt.cases = cases ? cases : 50;
      return finish_report(common, theorem4_suite(process, opt));
    }
    if (*enumerate) {
      const Scenario sc = load_scenario(scenario_name);
      const std::size_t d = depth ? depth : 3;
      const TraceSet traces = enumerate_scenario(sc, model, d);
      json sample = json::array();
      for (const auto& t : traces) {
        if (sample.size() >= limit) break;
        sample.push_back(trace_to_string(t));
      }
      std::cout << traces.size() << " traces of the " << model << " model of " << sc.name
                << " up to depth " << d << "\n";
      for (const auto& s : sample) std::cout << "  " << s.get<std::string>() << "\n";
      write_report(common, {{"schema", kSchemaVersion},
                            {"command", "enumerate"},
                            {"status", "PASS"},
                            {"scenario", sc.name},
                            {"model", model},
                            {"depth", d},
                            {"traces", traces.size()},
                            {"sample", sample}});
      return 0;
    }
    if (*simulate) {
      Scenario sc = load_scenario(scenario_name);
      if (audit) sc.sim.mode = MonitorMode::kAudit;
      const SimResult r = run_sim(sc, sc.faults, seed, steps.value_or(sc.sim.steps));
      const bool ok = r.stop != StopReason::kMonitorViolation && r.monitor_violations == 0 &&
                      r.globals_hold();
      const json summary = r.summary();
      std::cout << (ok ? "PASS" : "FAIL") << " simulate " << sc.name << " seed " << seed << "\n"
                << summary.dump(2) << "\n";
      if (!log_path.empty()) {
        std::ofstream os(log_path);
        if (!os) throw Error(ErrorCode::kConfig, "cannot write " + log_path);
        r.log.write_jsonl(os);
      }
      write_report(common, {{"schema", kSchemaVersion},
                            {"command", "simulate"},
                            {"status", ok ? "PASS" : "FAIL"},
                            {"scenario", sc.name},
                            {"seed", seed},
                            {"summary", summary}});
      return ok ? 0 : 1;
    }
    if (*replay) {
      const Scenario sc = load_scenario(scenario_name);
      std::ifstream in(log_path);
      if (!in) throw Error(ErrorCode::kConfig, "cannot read " + log_path);
      const TraceLog log = TraceLog::read_jsonl(in);
      CheckReport report{"replay", {}};
      const ReplayVerdict v = replay_scenario_log(sc, log);
      report.add("replay_in_recomposed_model", v.status, to_json_report(v));
      const TraceProperty prop = scenario_global_property(sc);
      const auto g = check_global(log, prop, scenario_gamma(sc));
      json gd{{"property", prop.name}};
      if (g.violated_at) gd["violated_at"] = *g.violated_at;
      report.add("global_property", g.holds ? Status::kPass : Status::kFail, gd);
      const auto fabricated = first_fabricated_delivery(log);
      report.add("no_fabricated_delivery", fabricated ? Status::kFail : Status::kPass,
                 fabricated ? json{{"record", *fabricated}} : json::object());
      return finish_report(common, report);
    }
    if (*dump) {
      const Scenario sc = load_scenario(scenario_name);
      const int c = component.value_or(default_component(sc));
      const std::string text = dump_component_iospec(sc, c);
      std::cout << text << "\n";
      write_report(common, {{"schema", kSchemaVersion},
                            {"command", "dump-iospec"},
                            {"status", "PASS"},
                            {"scenario", sc.name},
                            {"component", c},
                            {"iospec", text}});
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "igloo-kit: " << e.what() << "\n";
    return e.code() == ErrorCode::kBudgetExceeded ? kExitBudget : kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "igloo-kit: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
