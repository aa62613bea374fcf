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

#include "igloo/cli/suites.h"

#include <sstream>

#include "igloo/error.h"
#include "igloo/heap/theorem4.h"
#include "igloo/kernel/composition.h"
#include "igloo/kernel/generators.h"
#include "igloo/kernel/refinement.h"
#include "igloo/kernel/search.h"
#include "igloo/process/generators.h"
#include "igloo/process/io_guarded.h"
#include "igloo/protocols/auth.h"
#include "igloo/protocols/leader.h"
#include "igloo/protocols/replication.h"

namespace igloo {

namespace {

using nlohmann::json;

Status pass_if(bool ok) { return ok ? Status::kPass : Status::kFail; }

// A mutant check passes when the mutant is caught.
Status caught(Status mutant) {
  if (mutant == Status::kBudgetExceeded) return mutant;
  return mutant == Status::kFail ? Status::kPass : Status::kFail;
}

json search_detail(const SearchVerdict& v) {
  json j{{"states", v.states}};
  if (v.status == Status::kFail) {
    j["violated"] = v.violated;
    j["counterexample"] = trace_to_string(v.counterexample);
  }
  return j;
}

json property_detail(const PropertyVerdict& v) {
  json j{{"holds", v.holds}};
  if (v.counterexample) j["counterexample"] = trace_to_string(*v.counterexample);
  return j;
}

void leader_refinement(const Scenario& sc, const SuiteOptions& opt, CheckReport& r) {
  const LeaderStack st = build_leader_stack(sc.ring);
  const auto pa = check_refinement(st.protocol_model, st.abstract_model, st.r_pa, st.pi_pa,
                                   opt.depth, opt.budget);
  r.add("protocol_refines_abstract", pa.status, to_json_report(pa));
  const auto ip = check_refinement(st.interface_model, st.protocol_model, st.r_ip, st.pi_ip,
                                   opt.depth, opt.budget);
  r.add("interface_refines_protocol", ip.status, to_json_report(ip));
  const auto drop = check_refinement(st.protocol_model, st.abstract_model, st.r_pa,
                                     leader_pi_pa_drop_elect(), opt.depth, opt.budget);
  r.add("mutant_drop_elect_caught", caught(drop.status), to_json_report(drop));
  const auto accept = check_refinement(st.interface_model, st.protocol_model, st.r_ip,
                                       leader_pi_ip_always_accept(), opt.depth, opt.budget);
  r.add("mutant_always_accept_caught", caught(accept.status), to_json_report(accept));
}

void repl_refinement(const Scenario& sc, const SuiteOptions& opt, CheckReport& r) {
  const ReplStack st = build_repl_stack(sc.repl);
  const auto inv = search_invariants(st.protocol, opt.depth, st.state_invariants(),
                                     st.step_invariants(), opt.budget);
  r.add("protocol_invariants", inv.status, search_detail(inv));
  ReplConfig mutant = sc.repl;
  mutant.wait_for_acks = false;
  const ReplStack mst = build_repl_stack(mutant);
  const auto mv = search_invariants(mst.protocol, opt.depth, {}, {mst.consistency()}, opt.budget);
  r.add("mutant_no_ack_wait_caught", caught(mv.status), search_detail(mv));
}

void auth_refinement(const Scenario& sc, const SuiteOptions& opt, CheckReport& r) {
  const AuthStack st = build_auth_stack(sc.auth);
  const std::size_t interface_depth = opt.interface_depth.value_or(opt.depth);
  const auto ref = check_refinement(st.recompose(), st.protocol, st.relation, st.pi,
                                    interface_depth, opt.budget);
  json ref_detail = to_json_report(ref);
  ref_detail["depth"] = interface_depth;
  r.add("interface_refines_protocol", ref.status, ref_detail);
  const auto agree = satisfies_modulo_stutter(st.protocol, st.agreement, opt.depth);
  r.add("protocol_agreement", pass_if(agree.holds), property_detail(agree));
  AuthConfig mutant = sc.auth;
  mutant.sign_initiator_name = false;
  const AuthStack mst = build_auth_stack(mutant);
  const auto attack = satisfies_modulo_stutter(mst.protocol, mst.agreement, opt.depth);
  r.add("mutant_unsigned_name_caught", pass_if(!attack.holds), property_detail(attack));
}

}  // namespace

Status CheckReport::status() const {
  Status s = Status::kPass;
  for (const auto& i : items) s = worst(s, i.status);
  return s;
}

void CheckReport::add(std::string name, Status status, json detail) {
  items.push_back({std::move(name), status, std::move(detail)});
}

json CheckReport::to_json() const {
  json items_json = json::array();
  for (const auto& i : items) {
    items_json.push_back({{"name", i.name}, {"status", status_name(i.status)}, {"detail", i.detail}});
  }
  return {{"schema", kSchemaVersion},
          {"command", command},
          {"status", status_name(status())},
          {"items", items_json}};
}

std::string CheckReport::to_text() const {
  std::ostringstream os;
  for (const auto& i : items) os << status_name(i.status) << " " << i.name << "\n";
  os << status_name(status()) << " " << command << "\n";
  return os.str();
}

int exit_code(Status s) {
  switch (s) {
    case Status::kPass:
      return 0;
    case Status::kFail:
      return 1;
    case Status::kBudgetExceeded:
      return 3;
  }
  return 1;
}

CheckReport refinement_suite(const Scenario& sc, const SuiteOptions& opt) {
  CheckReport r{"check-refinement", {}};
  switch (sc.protocol) {
    case ProtocolKind::kLeader:
      leader_refinement(sc, opt, r);
      break;
    case ProtocolKind::kReplication:
      repl_refinement(sc, opt, r);
      break;
    case ProtocolKind::kAuth:
      auth_refinement(sc, opt, r);
      break;
  }
  return r;
}

CheckReport composition_suite(const SuiteOptions& opt, const Scenario* sc) {
  CheckReport r{"check-composition", {}};
  RandomSystemParams params;
  const auto alphabet = event_alphabet(params);
  std::size_t failures = 0;
  json first_failure;
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const std::uint64_t seed = opt.seed + k;
    const auto es1 = random_event_system(seed * 3 + 1, params);
    const auto es2 = random_event_system(seed * 3 + 2, params);
    const auto chi = random_sync_map(seed * 3 + 3, alphabet, alphabet);
    const auto composed = enumerate_traces(compose_parallel(es1, es2, chi), opt.depth);
    const auto from_sets = compose_trace_sets(enumerate_traces(es1, opt.depth),
                                              enumerate_traces(es2, opt.depth), chi);
    if (composed != from_sets) {
      if (failures++ == 0) {
        first_failure = {{"seed", seed},
                         {"system_traces", composed.size()},
                         {"composed_set_traces", from_sets.size()}};
      }
    }
  }
  json detail{{"cases", opt.cases}, {"depth", opt.depth}, {"failures", failures}};
  if (failures) detail["first_failure"] = first_failure;
  r.add("parallel_composition_traces", pass_if(failures == 0), detail);

  if (sc != nullptr) {
    switch (sc->protocol) {
      case ProtocolKind::kLeader: {
        const auto lhs = enumerate_traces(decompose_leader(sc->ring).recompose(), opt.depth);
        const auto rhs = enumerate_traces(build_leader_stack(sc->ring).interface_model, opt.depth);
        r.add("recomposition_matches_interface", pass_if(lhs == rhs),
              {{"traces", lhs.size()}, {"interface_traces", rhs.size()}});
        break;
      }
      case ProtocolKind::kReplication: {
        const ReplStack st = build_repl_stack(sc->repl);
        const auto lhs = enumerate_traces(st.recompose(), opt.depth);
        const auto rhs = enumerate_traces(st.protocol, opt.depth);
        r.add("recomposition_matches_protocol", pass_if(lhs == rhs),
              {{"traces", lhs.size()}, {"protocol_traces", rhs.size()}});
        break;
      }
      case ProtocolKind::kAuth: {
        const AuthStack st = build_auth_stack(sc->auth);
        const auto v = check_refinement(st.recompose(), st.protocol, st.relation, st.pi,
                                        opt.interface_depth.value_or(opt.depth), opt.budget);
        r.add("recomposition_refines_protocol", v.status, to_json_report(v));
        break;
      }
    }
  }
  return r;
}

CheckReport translation_suite(const SuiteOptions& opt) {
  CheckReport r{"check-theorem3", {}};
  std::size_t failures = 0;
  json first_failure;
  for (std::size_t k = 0; k < opt.cases; ++k) {
    const std::uint64_t seed = opt.seed + k;
    const auto ges = random_io_system(seed);
    const auto from_system = enumerate_traces(ges.to_event_system(false), opt.depth);
    const auto from_process = to_event_traces(
        enumerate_process_traces(proc_of_ges(ges, ges.initial()), ges.typing(), opt.depth));
    if (from_system != from_process && failures++ == 0) {
      first_failure = {{"seed", seed},
                       {"system_traces", from_system.size()},
                       {"process_traces", from_process.size()}};
    }
  }
  json detail{{"cases", opt.cases}, {"depth", opt.depth}, {"failures", failures}};
  if (failures) detail["first_failure"] = first_failure;
  r.add("system_and_process_traces", pass_if(failures == 0), detail);
  return r;
}

CheckReport theorem4_suite(const std::string& process, const SuiteOptions& opt) {
  if (process != "example8" && process != "random" && process != "all") {
    throw Error(ErrorCode::kConfig, "unknown process '" + process + "'");
  }
  CheckReport r{"check-theorem4", {}};
  auto model_checks_hold = [](const Theorem4Verdict& v) {
    for (const auto& [schedule, sat] : v.model_checks) {
      if (sat != Sat::kTrue) return false;
    }
    return true;
  };
  if (process != "random") {
    const auto v = theorem4_oracle(example8_process(), example8_typing(), {opt.depth, 5, opt.seed});
    r.add("example8", v.status, v.to_json());
    r.add("example8_cmod_satisfies_emb", pass_if(model_checks_hold(v)));
  }
  if (process != "example8") {
    std::size_t failures = 0;
    std::size_t emb_failures = 0;
    Status worst_status = Status::kPass;
    json first_failure;
    for (std::size_t k = 0; k < opt.cases; ++k) {
      const std::uint64_t seed = opt.seed + k;
      const Typing typing = random_typing(seed);
      const Process p = random_process(typing, seed, {3, 3});
      const auto v = theorem4_oracle(p, typing, {opt.depth, 3, seed});
      worst_status = worst(worst_status, v.status);
      if (v.status != Status::kPass && failures++ == 0) {
        first_failure = v.to_json();
        first_failure["seed"] = seed;
      }
      if (!model_checks_hold(v)) ++emb_failures;
    }
    r.add("random_processes", worst_status,
          {{"cases", opt.cases}, {"depth", opt.depth}, {"failures", failures},
           {"first_failure", first_failure}});
    r.add("random_cmod_satisfies_emb", pass_if(emb_failures == 0),
          {{"failures", emb_failures}});
  }
  return r;
}

std::string dump_component_iospec(const Scenario& sc, int component) {
  switch (sc.protocol) {
    case ProtocolKind::kLeader: {
      if (!sc.ring.next.count(component)) {
        throw Error(ErrorCode::kConfig, "no leader node " + std::to_string(component));
      }
      return render_iospec(
          leader_component(sc.ring, component, sc.ring.addr_of(sc.ring.next_of(component))));
    }
    case ProtocolKind::kReplication: {
      if (sc.repl.is_server(component)) return render_iospec(repl_server_component(sc.repl, component));
      for (int c : sc.repl.client_ids()) {
        if (c == component) return render_iospec(repl_client_component(sc.repl, c));
      }
      throw Error(ErrorCode::kConfig, "no replication node " + std::to_string(component));
    }
    case ProtocolKind::kAuth: {
      const AuthStack st = build_auth_stack(sc.auth);
      if (component < 0 || component >= static_cast<int>(st.components.size())) {
        throw Error(ErrorCode::kConfig, "no auth component " + std::to_string(component));
      }
      return render_iospec(st.components[component].ges);
    }
  }
  return "true";
}

TraceSet enumerate_scenario(const Scenario& sc, const std::string& model, std::size_t depth) {
  auto unknown = [&]() {
    return Error(ErrorCode::kConfig, "no model '" + model + "' for protocol " +
                                         protocol_name(sc.protocol));
  };
  switch (sc.protocol) {
    case ProtocolKind::kLeader: {
      if (model == "recomposed") return enumerate_traces(decompose_leader(sc.ring).recompose(), depth);
      const LeaderStack st = build_leader_stack(sc.ring);
      if (model == "abstract") return enumerate_traces(st.abstract_model, depth);
      if (model == "protocol") return enumerate_traces(st.protocol_model, depth);
      if (model == "interface") return enumerate_traces(st.interface_model, depth);
      throw unknown();
    }
    case ProtocolKind::kReplication: {
      const ReplStack st = build_repl_stack(sc.repl);
      if (model == "protocol") return enumerate_traces(st.protocol, depth);
      if (model == "recomposed") return enumerate_traces(st.recompose(), depth);
      throw unknown();
    }
    case ProtocolKind::kAuth: {
      const AuthStack st = build_auth_stack(sc.auth);
      if (model == "protocol") return enumerate_traces(st.protocol, depth);
      if (model == "recomposed") return enumerate_traces(st.recompose(), depth);
      throw unknown();
    }
  }
  throw unknown();
}

}  // namespace igloo
