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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "igloo/heap/canonical.h"
#include "igloo/heap/examples.h"
#include "igloo/heap/heap.h"
#include "igloo/heap/theorem4.h"
#include "igloo/kernel/composition.h"
#include "igloo/kernel/generators.h"
#include "igloo/kernel/refinement.h"
#include "igloo/kernel/search.h"
#include "igloo/monitor/monitor.h"
#include "igloo/process/generators.h"
#include "igloo/process/io_guarded.h"
#include "igloo/protocols/auth.h"
#include "igloo/protocols/leader.h"
#include "igloo/protocols/replication.h"
#include "igloo/simnet/programs.h"
#include "igloo/simnet/scenario.h"

namespace igloo {
namespace {

// Pinned bounds. Every comparison below is exact; these are the only knobs.
constexpr std::size_t kLeaderDepth = 5;
constexpr std::size_t kCompositionCases = 100;
constexpr std::size_t kCompositionDepth = 4;
constexpr std::size_t kTranslationCases = 100;
constexpr std::size_t kTranslationDepth = 4;
constexpr std::size_t kProcessCases = 50;
constexpr std::size_t kProcessDepth = 4;
constexpr std::size_t kLeaderSeeds = 100;
constexpr std::size_t kLeaderSteps = 2000;
constexpr double kLeaderLoss = 0.3;
constexpr std::size_t kReplDepth = 12;
constexpr std::size_t kReplSeeds = 50;
constexpr std::size_t kAuthDepth = 10;
constexpr std::size_t kAuthAttackDepth = 12;
constexpr std::size_t kClosureSets = 100;
constexpr std::size_t kWalkSteps = 1000;
constexpr std::uint64_t kWalkSeeds = 10;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { notes.push_back(s); }
};

// Brute-force T1 ||chi T2: zip every pair of equal-length traces.
TraceSet zip_compose(const TraceSet& t1, const TraceSet& t2, const SyncMap& chi) {
  TraceSet out;
  for (const auto& a : t1) {
    for (const auto& b : t2) {
      if (a.size() != b.size()) continue;
      Trace t;
      bool defined = true;
      for (std::size_t i = 0; i < a.size() && defined; ++i) {
        if (auto e = chi(a[i], b[i])) {
          t.push_back(*e);
        } else {
          defined = false;
        }
      }
      if (defined) out.insert(std::move(t));
    }
  }
  return out;
}

Outcome leader_refinement_chain() {
  Outcome o;
  const std::vector<std::vector<int>> rings{{1, 2}, {1, 2, 3}, {1, 2, 3, 4}};
  for (const auto& ids : rings) {
    const std::string tag = "|ID|=" + std::to_string(ids.size());
    const LeaderStack st = build_leader_stack(RingConfig::Sorted(ids));
    const auto pa = check_refinement(st.protocol_model, st.abstract_model, st.r_pa, st.pi_pa,
                                     kLeaderDepth);
    o.require(pa.status == Status::kPass, tag + " protocol refines abstract");
    const auto ip = check_refinement(st.interface_model, st.protocol_model, st.r_ip, st.pi_ip,
                                     kLeaderDepth);
    o.require(ip.status == Status::kPass, tag + " interface refines protocol");
    const auto drop = check_refinement(st.protocol_model, st.abstract_model, st.r_pa,
                                       leader_pi_pa_drop_elect(), kLeaderDepth);
    o.require(drop.status == Status::kFail && !drop.concrete_trace.empty(),
              tag + " drop-elect mediator fails with a counterexample");
    const auto accept = check_refinement(st.interface_model, st.protocol_model, st.r_ip,
                                         leader_pi_ip_always_accept(), kLeaderDepth);
    o.require(accept.status == Status::kFail && !accept.concrete_trace.empty(),
              tag + " always-accept mediator fails with a counterexample");
    o.note(tag + ": pairs " + std::to_string(pa.pairs_explored) + "/" +
           std::to_string(ip.pairs_explored) + ", mutant traces " +
           std::to_string(drop.concrete_trace.size()) + "/" +
           std::to_string(accept.concrete_trace.size()));
  }
  return o;
}

Outcome composition_oracle() {
  Outcome o;
  RandomSystemParams params;
  const auto alphabet = event_alphabet(params);
  std::size_t nonempty = 0;
  for (std::uint64_t seed = 0; seed < kCompositionCases; ++seed) {
    const auto es1 = random_event_system(seed * 3 + 1, params);
    const auto es2 = random_event_system(seed * 3 + 2, params);
    const auto chi = random_sync_map(seed * 3 + 3, alphabet, alphabet);
    const auto system = enumerate_traces(compose_parallel(es1, es2, chi), kCompositionDepth);
    const auto t1 = enumerate_traces(es1, kCompositionDepth);
    const auto t2 = enumerate_traces(es2, kCompositionDepth);
    const std::string tag = "seed " + std::to_string(seed);
    o.require(system == zip_compose(t1, t2, chi), tag + " against brute-force zip");
    o.require(system == compose_trace_sets(t1, t2, chi), tag + " against composed trace sets");
    if (std::any_of(system.begin(), system.end(), [](const Trace& t) {
          return std::any_of(t.begin(), t.end(), [](const Event& e) { return !is_skip(e); });
        })) {
      ++nonempty;
    }
  }
  o.note(std::to_string(nonempty) + "/" + std::to_string(kCompositionCases) +
         " pairs have a non-stutter composed trace");
  o.require(nonempty > kCompositionCases / 2, "most pairs compose non-trivially");
  return o;
}

Outcome translation_oracle() {
  Outcome o;
  std::size_t total_traces = 0;
  for (std::uint64_t seed = 0; seed < kTranslationCases; ++seed) {
    const auto ges = random_io_system(seed);
    const auto from_system = enumerate_traces(ges.to_event_system(false), kTranslationDepth);
    const auto from_process = to_event_traces(
        enumerate_process_traces(proc_of_ges(ges, ges.initial()), ges.typing(), kTranslationDepth));
    o.require(from_system == from_process, "seed " + std::to_string(seed));
    total_traces += from_system.size();
  }
  o.note("mean traces per system " + std::to_string(total_traces / kTranslationCases));
  return o;
}

bool every_model_check_true(const Theorem4Verdict& v) {
  return !v.model_checks.empty() &&
         std::all_of(v.model_checks.begin(), v.model_checks.end(),
                     [](const auto& mc) { return mc.second == Sat::kTrue; });
}

Outcome theorem4_oracle_suite() {
  Outcome o;
  const auto ex = theorem4_oracle(example8_process(), example8_typing(), {kProcessDepth, 5, 1});
  o.require(ex.status == Status::kPass, "example8 trace equality");
  o.require(every_model_check_true(ex), "example8 cmod satisfies emb");
  std::size_t total_traces = 0;
  std::size_t branching = 0;
  for (std::uint64_t seed = 0; seed < kProcessCases; ++seed) {
    const Typing typing = random_typing(seed);
    const Process p = random_process(typing, seed, {3, 3});
    const auto v = theorem4_oracle(p, typing, {kProcessDepth, 3, seed});
    const std::string tag = "seed " + std::to_string(seed);
    o.require(v.status == Status::kPass, tag + " trace equality");
    o.require(v.process_traces == v.canonical_traces, tag + " trace sets");
    o.require(every_model_check_true(v), tag + " cmod satisfies emb");
    total_traces += v.process_traces.size();
    if (v.process_traces.size() > kProcessDepth + 1) ++branching;
  }
  o.note("mean process traces " + std::to_string(total_traces / kProcessCases) + ", " +
         std::to_string(branching) + " processes branch");
  return o;
}

Outcome example_goldens() {
  Outcome o;
  const Value unit;
  auto recv = [&](int w) { return Action{"recv", unit, Value::Int(w)}; };
  auto send = [&](int v) { return Action{"send", Value::Int(v), unit}; };
  const Typing ty12 = recv_send_typing({Value::Int(12)});
  const Typing ty12_19 = recv_send_typing({Value::Int(12), Value::Int(19)});

  o.require(heap_traces(recv_send_h1(), ty12, 2) ==
                ActionTraceSet{{}, {recv(12)}, {recv(12), send(24)}},
            "h1 traces");
  o.require(heap_traces(recv_send_h2(), ty12, 2) ==
                ActionTraceSet{{}, {recv(12)}, {send(24)}, {recv(12), send(24)},
                               {send(24), recv(12)}},
            "h2 traces");
  o.require(heap_traces(recv_send_h3(), ty12, 2) ==
                ActionTraceSet{{}, {recv(12)}, {recv(12), send(24)}, {recv(12), send(35)}},
            "h3 traces");
  o.require(heapset_traces({recv_send_h1(), recv_send_h2(), recv_send_h3()}, ty12, 2) ==
                ActionTraceSet{{}, {recv(12)}, {recv(12), send(24)}},
            "shared traces of h1, h2, h3");
  o.require(heap_step(recv_send_h1(), recv(19), ty12_19) ==
                std::set<HeapState>{HeapState::Bottom()},
            "contradicting input reaches chaos");
  o.require(heapset_traces({recv_send_h1(), recv_send_h1_alt()}, ty12_19, 2) ==
                ActionTraceSet{{}, {recv(12)}, {recv(19)}, {recv(12), send(24)},
                               {recv(19), send(38)}},
            "shared traces with ty(recv) = {12, 19}");

  auto perm = [](const std::string& bio, const std::string& from, Value out, Value in,
                 const std::string& to) {
    return Chunk::Perm(bio, Place(from), std::move(out), std::move(in), Place(to));
  };
  const Heap six{
      perm("in", "", unit, Value::Int(1), "LL"),
      perm("fail", "", unit, unit, "RL"),
      perm("out", "LL", Value::Int(1), unit, "LLLL"),
      perm("in", "LL", unit, Value::Int(2), "LLRLL"),
      perm("drop", "LL", unit, unit, "LLRRL"),
      perm("out", "LLRLL", Value::Int(3), unit, "LLRLLL"),
  };
  const Heap model = cmod(example8_process(), example8_schedule());
  o.require(model == six, "six-permission canonical model, got " + model.to_string());
  return o;
}

Outcome leader_end_to_end() {
  Outcome o;
  Scenario sc = load_scenario("leader4");
  sc.sim.loss = kLeaderLoss;
  const int max_id = sc.ring.max_id();
  const TraceProperty global = scenario_global_property(sc);
  std::size_t runs_with_election = 0;
  for (std::uint64_t seed = 0; seed < kLeaderSeeds; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    const SimResult r = run_sim(sc, sc.faults, seed, kLeaderSteps);
    o.require(r.monitor_violations == 0 && r.stop != StopReason::kMonitorViolation,
              tag + " monitor violations");
    o.require(replay_scenario_log(sc, r.log).status == Status::kPass, tag + " replay");
    o.require(check_global(r.log, global, leader_gamma()).holds, tag + " preimage of uniqueness");
    o.require(!first_fabricated_delivery(r.log).has_value(), tag + " fabricated delivery");
    bool elected = false;
    for (const auto& [pos, e] : model_events(r.log, leader_gamma())) {
      if (e.name != "elect") continue;
      elected = true;
      o.require(e.params.at(0).as_int() == max_id, tag + " elected node is the maximum");
    }
    if (elected) ++runs_with_election;
  }
  o.note(std::to_string(runs_with_election) + "/" + std::to_string(kLeaderSeeds) +
         " runs elect a leader");
  return o;
}

// Folds a replication log through the protocol and checks live_env against
// every live set after each event, independently of the simulator's checks.
bool live_env_covered_along(const ReplStack& st, const TraceLog& log, std::string& why) {
  ReplState s = st.protocol.initial().front();
  for (const auto& [pos, e] : model_events(log, repl_gamma())) {
    auto next = repl_step(st, s, e);
    if (!next) {
      why = "stuck at record " + std::to_string(pos);
      return false;
    }
    s = std::move(*next);
    std::vector<std::set<int>> views;
    for (const auto& [id, server] : s.servers) views.push_back(server.live);
    for (const auto& [id, client] : s.clients) views.push_back(client.live);
    for (const auto& live : views) {
      for (int x : s.env.live_env) {
        if (!live.count(x)) {
          why = "live_env not covered after record " + std::to_string(pos);
          return false;
        }
      }
    }
  }
  return true;
}

Outcome replication() {
  Outcome o;
  const ReplStack small = build_repl_stack(ReplConfig{});
  const auto exhaustive = search_invariants(small.protocol, kReplDepth, small.state_invariants(),
                                            small.step_invariants());
  o.require(exhaustive.status == Status::kPass,
            "exhaustive search: " + exhaustive.violated);
  o.note("exhaustive search states " + std::to_string(exhaustive.states));

  ReplConfig mutant_cfg;
  mutant_cfg.wait_for_acks = false;
  const ReplStack mutant = build_repl_stack(mutant_cfg);
  const auto attack = search_invariants(mutant.protocol, kReplDepth, {}, {mutant.consistency()});
  o.require(attack.status == Status::kFail && attack.counterexample.size() <= kReplDepth,
            "no-ack-wait mutant counterexample");
  o.note("mutant counterexample length " + std::to_string(attack.counterexample.size()));

  const Scenario sc = load_scenario("repl-3s-1c");
  const ReplStack full = build_repl_stack(sc.repl);
  std::size_t total_replies = 0;
  for (std::uint64_t seed = 0; seed < kReplSeeds; ++seed) {
    const std::string tag = "seed " + std::to_string(seed);
    FaultPlan faults = sc.faults;
    // Node 0 is the initial primary; vary when it crashes.
    faults.crashes = {{0, 10 + 5 * seed}};
    const SimResult r = run_sim(sc, faults, seed, sc.sim.steps);
    o.require(r.monitor_violations == 0 && r.stop != StopReason::kMonitorViolation,
              tag + " monitor violations");
    o.require(r.globals_hold(), tag + " online invariants");
    o.require(r.counts.at("crashes") == 1, tag + " primary crashed");
    o.require(replay_scenario_log(sc, r.log).status == Status::kPass, tag + " replay");
    o.require(check_global(r.log, scenario_global_property(sc), repl_gamma()).holds,
              tag + " backup consistency");
    std::string why;
    o.require(live_env_covered_along(full, r.log, why), tag + " " + why);
    total_replies += r.counts.at("replies");
  }
  o.note("replies across crash runs " + std::to_string(total_replies));
  o.require(total_replies > 0, "some crash run makes progress");
  return o;
}

TermSet random_subset(const TermSet& universe, std::mt19937_64& rng, double p) {
  std::bernoulli_distribution coin(p);
  TermSet out;
  for (const auto& t : universe) {
    if (coin(rng)) out.insert(t);
  }
  return out;
}

bool subset_of(const TermSet& a, const TermSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Outcome authentication() {
  Outcome o;
  const AuthConfig cfg;
  const AuthStack st = build_auth_stack(cfg);
  const auto agree = satisfies_modulo_stutter(st.protocol, st.agreement, kAuthDepth);
  o.require(agree.holds, "injective agreement at depth " + std::to_string(kAuthDepth));
  const auto states = search_invariants(st.protocol, kAuthDepth, {st.agreement_on_states()},
                                        {st.ik_monotone()});
  o.require(states.status == Status::kPass, "agreement on reachable states");
  o.note("reachable states " + std::to_string(states.states));

  AuthConfig mutant_cfg;
  mutant_cfg.sign_initiator_name = false;
  const AuthStack mutant = build_auth_stack(mutant_cfg);
  const auto attack = satisfies_modulo_stutter(mutant.protocol, mutant.agreement, kAuthAttackDepth);
  o.require(!attack.holds && attack.counterexample &&
                attack.counterexample->size() <= kAuthAttackDepth,
            "unsigned-name mutant attacked");
  if (attack.counterexample) {
    o.note("attack length " + std::to_string(attack.counterexample->size()));
  }

  const TermSet universe = auth_universe(cfg);
  std::mt19937_64 rng(2024);
  for (std::size_t i = 0; i < kClosureSets; ++i) {
    const TermSet x = random_subset(universe, rng, 0.02);
    TermSet y = x;
    for (const auto& t : random_subset(universe, rng, 0.02)) y.insert(t);
    const TermSet cx = dy_closure({x}, universe).known;
    const TermSet cy = dy_closure({y}, universe).known;
    const std::string tag = "set " + std::to_string(i);
    o.require(subset_of(x, cx), tag + " extensive");
    o.require(subset_of(cx, cy), tag + " monotone");
    o.require(dy_closure({cx}, universe).known == cx, tag + " idempotent");
  }
  return o;
}

Outcome backend_equivalence() {
  Outcome o;
  const RingConfig ring = RingConfig::Sorted({1, 2, 3, 4});
  std::size_t decisions = 0;
  std::size_t permits = 0;
  for (int id : ring.ids) {
    const auto component = leader_component(ring, id, ring.addr_of(ring.next_of(id)));
    for (std::uint64_t seed = 1; seed <= kWalkSeeds; ++seed) {
      const auto cmp = compare_backends(component, kWalkSteps, seed, {Value::Int(99)});
      o.require(cmp.disagreements == 0, "node " + std::to_string(id) + " seed " +
                                            std::to_string(seed) + " disagreement");
      decisions += cmp.decisions;
      permits += cmp.permits;
    }
  }
  o.note(std::to_string(decisions) + " decisions, " + std::to_string(permits) + " permits");
  o.require(permits > 0 && permits < decisions, "walks exercise both PERMIT and DENY");
  return o;
}

}  // namespace
}  // namespace igloo

int main() {
  using igloo::Outcome;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"leader refinement chain and mutant mediators", igloo::leader_refinement_chain},
      {"parallel composition traces", igloo::composition_oracle},
      {"I/O-guarded system translation", igloo::translation_oracle},
      {"processes against canonical models", igloo::theorem4_oracle_suite},
      {"heap and canonical-model goldens", igloo::example_goldens},
      {"leader election simulations", igloo::leader_end_to_end},
      {"primary-backup replication", igloo::replication},
      {"authentication and attacker closure", igloo::authentication},
      {"monitor backend equivalence", igloo::backend_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), secs);
    constexpr std::size_t kShownNotes = 8;
    for (std::size_t k = 0; k < o.notes.size() && k < kShownNotes; ++k) {
      std::printf("    %s\n", o.notes[k].c_str());
    }
    if (o.notes.size() > kShownNotes) {
      std::printf("    ... %zu more\n", o.notes.size() - kShownNotes);
    }
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%s acceptance: %zu/%zu criteria\n", failed ? "FAIL" : "PASS",
              criteria.size() - failed, criteria.size());
  return failed ? 1 : 0;
}
