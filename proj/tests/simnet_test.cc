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

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "igloo/error.h"
#include "igloo/simnet/programs.h"
#include "igloo/simnet/scenario.h"

namespace igloo {
namespace {

Scenario leader4() { return load_scenario("leader4"); }

std::set<int> elected_ids(const TraceLog& log) {
  std::set<int> out;
  for (const auto& r : log.records) {
    if (r.kind == RecordKind::kGhost && r.action->bio == "elect") {
      out.insert(static_cast<int>(r.index.as_int()));
    }
  }
  return out;
}

TEST(Channel, LossRateOutsideUnitIntervalIsConfigError) {
  EXPECT_THROW(ChannelModel::LossySet(1.0), Error);
  EXPECT_THROW(ChannelModel::LossySet(-0.1), Error);
}

TEST(Channel, SetSemanticsKeepsMessagesAfterDelivery) {
  ChannelModel ch = ChannelModel::LossySet(0.0);
  ch.send(1, 7, Value::Int(5));
  ch.send(1, 7, Value::Int(5));
  std::mt19937_64 rng(1);
  const auto any = [](const Value&) { return true; };
  for (int i = 0; i < 3; ++i) {
    auto got = ch.receive(7, std::nullopt, any, rng);
    ASSERT_TRUE(got.has_value());
    EXPECT_EQ(got->payload, Value::Int(5));
  }
  EXPECT_EQ(ch.pending(7).size(), 1u);
}

TEST(Channel, FifoDeliversInSendOrderPerPair) {
  ChannelModel ch = ChannelModel::Fifo();
  for (int m = 0; m < 4; ++m) ch.send(2, 3, Value::Int(m));
  std::mt19937_64 rng(1);
  const auto any = [](const Value&) { return true; };
  for (int m = 0; m < 4; ++m) EXPECT_EQ(ch.receive(3, 2, any, rng)->payload, Value::Int(m));
  EXPECT_FALSE(ch.receive(3, 2, any, rng).has_value());
}

TEST(TraceLogJson, RoundTripsThroughJsonLines) {
  const Scenario sc = leader4();
  const SimResult r = run_sim(sc, {}, 3, 300);
  std::istringstream in(r.log.to_jsonl());
  EXPECT_EQ(TraceLog::read_jsonl(in), r.log);
}

TEST(Scenario, BuiltinsParseAndRoundTrip) {
  for (const auto& name : builtin_scenario_names()) {
    const Scenario sc = load_scenario(name + ".json");
    EXPECT_EQ(sc.name, name);
    const Scenario again = scenario_from_json(to_json(sc));
    EXPECT_EQ(to_json(again), to_json(sc)) << name;
  }
}

TEST(Scenario, RejectsUnknownNamesAndBadInput) {
  EXPECT_THROW(load_scenario("no-such-scenario"), Error);
  EXPECT_THROW(scenario_from_json({{"protocol", "gossip"}}), Error);
  EXPECT_THROW(scenario_from_json({{"schema", "igloo-kit/0"}}), Error);
  auto j = *builtin_scenario("repl-3s-1c");
  j["faults"]["crashes"].push_back({{"node", 1}, {"step", 60}});
  EXPECT_THROW(scenario_from_json(j), Error);  // more crashes than max_crashes
}

TEST(Simulate, SameSeedGivesByteIdenticalLogs) {
  const Scenario sc = leader4();
  const SimResult a = run_sim(sc, 11);
  const SimResult b = run_sim(sc, 11);
  EXPECT_EQ(a.log.to_jsonl(), b.log.to_jsonl());
  EXPECT_EQ(a.summary().dump(), b.summary().dump());
}

TEST(Simulate, DifferentSeedsDiverge) {
  const Scenario sc = leader4();
  EXPECT_NE(run_sim(sc, 1).log.to_jsonl(), run_sim(sc, 2).log.to_jsonl());
}

TEST(Simulate, LeaderRingOfFourSeedSeven) {
  const Scenario sc = leader4();
  ASSERT_DOUBLE_EQ(sc.sim.loss, 0.3);
  const SimResult r = run_sim(sc, sc.faults, 7, 2000);
  EXPECT_EQ(r.monitor_violations, 0u);
  EXPECT_NE(r.stop, StopReason::kMonitorViolation);
  EXPECT_TRUE(r.globals_hold());
  const auto elected = elected_ids(r.log);
  if (!elected.empty()) {
    EXPECT_EQ(elected, std::set<int>{4});
  }
  EXPECT_EQ(replay_scenario_log(sc, r.log).status, Status::kPass);
  EXPECT_TRUE(check_global(r.log, scenario_global_property(sc), scenario_gamma(sc)).holds);
}

TEST(Simulate, LeaderWithoutLossElectsTheMaximum) {
  Scenario sc = leader4();
  sc.sim.loss = 0.0;
  const SimResult r = run_sim(sc, sc.faults, 5, 2000);
  EXPECT_EQ(elected_ids(r.log), std::set<int>{4});
  EXPECT_EQ(r.summary()["elects"], 1);
}

TEST(Simulate, FifoLeaderRunReplays) {
  Scenario sc = leader4();
  sc.sim.channel = ChannelKind::kFifo;
  const SimResult r = run_sim(sc, 9);
  EXPECT_EQ(r.monitor_violations, 0u);
  EXPECT_EQ(replay_scenario_log(sc, r.log).status, Status::kPass);
}

TEST(Simulate, NodeProjectionMatchesMonitorObservedTrace) {
  const Scenario sc = leader4();
  SimSetup setup = make_sim_setup(sc);
  const SimResult r = run_setup(setup, {}, 13, 800);
  for (const auto& n : setup.nodes) {
    EXPECT_EQ(r.log.node_projection(n->id()), n->observed_trace()) << "node " << n->id();
  }
}

TEST(Simulate, DeliveriesReferencePriorSends) {
  for (const char* name : {"leader4", "repl-3s-1c", "auth-2a"}) {
    const Scenario sc = load_scenario(name);
    const SimResult r = run_sim(sc, 21);
    EXPECT_FALSE(first_fabricated_delivery(r.log).has_value()) << name;
  }
}

TEST(Simulate, FabricatedDeliveryIsDetected) {
  const Scenario sc = leader4();
  SimResult r = run_sim(sc, 4);
  for (auto& rec : r.log.records) {
    if (rec.kind == RecordKind::kChanDeliver) {
      rec.message->id = 1u << 30;
      break;
    }
  }
  EXPECT_TRUE(first_fabricated_delivery(r.log).has_value());
}

TEST(Replay, EmptyLogPasses) {
  EXPECT_EQ(replay_scenario_log(leader4(), TraceLog{}).status, Status::kPass);
}

TEST(Replay, CorruptedReceivePayloadFailsAtThatRecord) {
  const Scenario sc = leader4();
  SimResult r = run_sim(sc, 7);
  std::optional<std::size_t> target;
  for (std::size_t i = 0; i < r.log.records.size(); ++i) {
    auto& rec = r.log.records[i];
    if (rec.kind == RecordKind::kIo && rec.action->bio == "receive") {
      // 99 was never sent by anyone.
      rec.action->in = Value::Int(99);
      target = i;
      break;
    }
  }
  ASSERT_TRUE(target.has_value());
  const ReplayVerdict v = replay_scenario_log(sc, r.log);
  EXPECT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.stuck_at, target);
}

TEST(Simulate, UnbufferedProgramIsStoppedByItsMonitor) {
  Scenario sc = leader4();
  sc.sim.loss = 0.0;
  sc.sim.program = "unbuffered";
  const SimResult r = run_sim(sc, 7);
  EXPECT_EQ(r.stop, StopReason::kMonitorViolation);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->action.bio, "send");
  // Nothing the monitor refused reached the log as committed, so the
  // global property still holds on what ran.
  EXPECT_TRUE(check_global(r.log, scenario_global_property(sc), scenario_gamma(sc)).holds);
  EXPECT_EQ(replay_scenario_log(sc, r.log).status, Status::kPass);
}

TEST(Simulate, AuditModeCountsDivergenceAndKeepsRunning) {
  Scenario sc = leader4();
  sc.sim.loss = 0.0;
  sc.sim.program = "unbuffered";
  sc.sim.mode = MonitorMode::kAudit;
  const SimResult r = run_sim(sc, 7);
  EXPECT_NE(r.stop, StopReason::kMonitorViolation);
  EXPECT_GT(r.monitor_violations, 1u);
}

TEST(Simulate, HeapBackendAgreesWithEventSystemBackend) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    Scenario es = leader4();
    Scenario heap = es;
    heap.sim.backend = Backend::kHeap;
    const SimResult a = run_sim(es, seed);
    const SimResult b = run_sim(heap, seed);
    EXPECT_EQ(a.log.to_jsonl(), b.log.to_jsonl()) << "seed " << seed;
  }
}

TEST(Simulate, ReplicationSurvivesPrimaryCrash) {
  const Scenario sc = load_scenario("repl-3s-1c");
  ASSERT_EQ(sc.faults.crashes.size(), 1u);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SimResult r = run_sim(sc, seed);
    EXPECT_EQ(r.monitor_violations, 0u) << "seed " << seed;
    EXPECT_TRUE(r.globals_hold()) << "seed " << seed << " " << r.summary().dump();
    EXPECT_EQ(r.counts.at("crashes"), 1u);
    EXPECT_GE(r.counts.at("replies"), sc.repl.ops.size()) << "seed " << seed;
    EXPECT_TRUE(check_global(r.log, scenario_global_property(sc), scenario_gamma(sc)).holds);
  }
}

TEST(Simulate, ReplicationCompletesAllOpsWithoutFaults) {
  Scenario sc = load_scenario("repl-3s-1c");
  sc.faults = {};
  const SimResult r = run_sim(sc, 3);
  // Servers poll forever, so the run ends at the step limit.
  EXPECT_EQ(r.stop, StopReason::kStepLimit);
  EXPECT_EQ(r.counts.at("replies"), sc.repl.ops.size());
  EXPECT_TRUE(r.globals_hold());
}

TEST(Simulate, ReplicationLogReplaysInRecomposedModel) {
  ReplConfig cfg;
  cfg.servers = 2;
  cfg.clients = 1;
  cfg.ops = {1};
  Scenario sc = load_scenario("repl-3s-1c");
  sc.repl = cfg;
  sc.faults.crashes = {{0, 20}};
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const SimResult r = run_sim(sc, seed);
    // Directed replay and successor-set replay in the recomposed system.
    const ReplayVerdict directed = replay_scenario_log(sc, r.log);
    const ReplayVerdict searched =
        replay_against_model(r.log, build_repl_stack(cfg).recompose(), repl_gamma());
    EXPECT_EQ(directed.status, Status::kPass);
    EXPECT_EQ(searched.status, Status::kPass);
    EXPECT_EQ(directed.events_replayed, searched.events_replayed);
  }
}

TEST(Replay, ReplicationLogWithForgedAckFails) {
  const Scenario sc = load_scenario("repl-3s-1c");
  SimResult r = run_sim(sc, 1);
  std::optional<std::size_t> target;
  for (std::size_t i = 0; i < r.log.records.size(); ++i) {
    auto& rec = r.log.records[i];
    if (rec.kind == RecordKind::kIo && rec.action->bio == "receive" &&
        repl_message_kind(rec.action->in) == "ack") {
      rec.action->in = repl_ack({2, 2});
      target = i;
      break;
    }
  }
  ASSERT_TRUE(target.has_value());
  const ReplayVerdict v = replay_scenario_log(sc, r.log);
  EXPECT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.stuck_at, target);
}

TEST(Simulate, ReplicationLogsReplay) {
  const Scenario sc = load_scenario("repl-3s-1c");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_EQ(replay_scenario_log(sc, run_sim(sc, seed).log).status, Status::kPass);
  }
}

TEST(Simulate, HonestAuthRunsSatisfyAgreement) {
  const Scenario sc = load_scenario("auth-2a");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SimResult r = run_sim(sc, seed);
    EXPECT_EQ(r.monitor_violations, 0u);
    EXPECT_TRUE(r.globals_hold());
    EXPECT_EQ(r.counts.at("commits"), 2u) << "seed " << seed;
    EXPECT_TRUE(check_global(r.log, scenario_global_property(sc), scenario_gamma(sc)).holds);
    EXPECT_EQ(replay_scenario_log(sc, r.log).status, Status::kPass);
  }
}

TEST(Simulate, StepLimitIsAStopReasonNotAnError) {
  const SimResult r = run_sim(leader4(), {}, 7, 10);
  EXPECT_EQ(r.stop, StopReason::kStepLimit);
  EXPECT_EQ(r.steps, 10u);
}

}  // namespace
}  // namespace igloo
