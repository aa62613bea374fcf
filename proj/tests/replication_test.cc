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

#include "igloo/kernel/search.h"
#include "igloo/protocols/replication.h"

namespace igloo {
namespace {

TEST(OrderedWrtPrefix, Examples) {
  EXPECT_TRUE(ordered_wrt_prefix({{}, {1}, {1, 2}}));
  EXPECT_FALSE(ordered_wrt_prefix({{1}, {2}}));
  EXPECT_FALSE(ordered_wrt_prefix({{1, 2}, {1}}));
  EXPECT_TRUE(ordered_wrt_prefix({}));
  EXPECT_TRUE(ordered_wrt_prefix({{3, 1}, {3, 1}}));
}

TEST(ReplMessages, RoundTrip) {
  EXPECT_EQ(repl_message_kind(repl_sync({1, 2})), "sync");
  EXPECT_EQ(repl_message_log(repl_ack({2, 1})), (ReplLog{2, 1}));
  EXPECT_EQ(repl_message_kind(repl_request(3, 1)), "request");
}

TEST(ReplConfig, FromJson) {
  const auto cfg = repl_config_from_json(
      nlohmann::json{{"servers", 3}, {"clients", 1}, {"ops", {1, 2}}});
  EXPECT_EQ(cfg.server_ids(), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(cfg.client_ids(), (std::vector<int>{3}));
  EXPECT_EQ(cfg.max_log(), 4u);
  EXPECT_THROW(repl_config_from_json(nlohmann::json{{"ops", {1, 1}}}), Error);
}

// Runs the fault-free happy path by always taking the first matching event.
TEST(ReplProtocol, FaultFreeRoundTrip) {
  ReplConfig cfg;
  cfg.max_crashes = 0;
  const auto st = build_repl_stack(cfg);
  ReplState s = st.protocol.initial().front();
  const std::vector<std::string> plan{"send", "receive", "handle", "send",
                                      "receive", "send", "receive", "append",
                                      "send", "receive"};
  Trace taken;
  for (const auto& name : plan) {
    bool moved = false;
    for (const auto& step : st.protocol.successors(s)) {
      if (step.event.name != name) continue;
      s = step.target;
      taken.push_back(step.event);
      moved = true;
      break;
    }
    ASSERT_TRUE(moved) << name << " after " << trace_to_string(taken);
  }
  EXPECT_EQ(s.servers.at(0).log, (ReplLog{1}));
  EXPECT_EQ(s.servers.at(1).log, (ReplLog{1}));
  EXPECT_EQ(s.clients.at(2).replies, 1u);
  EXPECT_TRUE(s.env.channels.empty());
}

TEST(ReplProtocol, ExhaustiveConsistencyTwoServers) {
  const auto st = build_repl_stack(ReplConfig{});
  const auto v = search_invariants(st.protocol, 12, st.state_invariants(),
                                   st.step_invariants());
  EXPECT_EQ(v.status, Status::kPass)
      << v.violated << ": " << trace_to_string(v.counterexample);
  EXPECT_GT(v.states, 150u);
}

TEST(ReplProtocol, ReplyIsReachableWithinDepth) {
  const auto st = build_repl_stack(ReplConfig{});
  const StepInvariant<ReplState> no_reply{
      "no_reply", [](const ReplState&, const Event& e, const ReplState&) {
        return !(e.name == "send" && e.params[0].as_int() == 0 &&
                 repl_message_kind(e.params[2]) == "reply");
      }};
  const auto v = search_invariants(st.protocol, 12, {}, {no_reply});
  EXPECT_EQ(v.status, Status::kFail);
}

TEST(ReplProtocol, NoAckWaitMutantBreaksConsistency) {
  ReplConfig cfg;
  cfg.wait_for_acks = false;
  const auto st = build_repl_stack(cfg);
  const auto v = search_invariants(st.protocol, 12, {}, {st.consistency()});
  ASSERT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.violated, "backup_consistency");
  EXPECT_LE(v.counterexample.size(), 12u);
  EXPECT_EQ(v.counterexample.back().name, "send");
}

TEST(ReplProtocol, ThreeServersTwoCrashes) {
  ReplConfig cfg;
  cfg.servers = 3;
  cfg.max_crashes = 2;
  const auto st = build_repl_stack(cfg);
  const auto v = search_invariants(st.protocol, 9, st.state_invariants(),
                                   st.step_invariants());
  EXPECT_EQ(v.status, Status::kPass)
      << v.violated << ": " << trace_to_string(v.counterexample);
}

// Deep enough to reach a takeover in which a stale sync from the crashed
// primary arrives after the new primary's sync.
TEST(ReplProtocol, ThreeServersTakeoverDeep) {
  ReplConfig cfg;
  cfg.servers = 3;
  const auto st = build_repl_stack(cfg);
  const auto v = search_invariants(st.protocol, 22, st.state_invariants(),
                                   st.step_invariants());
  EXPECT_EQ(v.status, Status::kPass)
      << v.violated << ": " << trace_to_string(v.counterexample);
}

TEST(ReplProtocol, StaleSyncIgnoredAfterTakeover) {
  ReplConfig cfg;
  cfg.servers = 3;
  const auto comp = repl_server_component(cfg, 2);
  ReplServer s = comp.initial();
  s = comp.apply(s, {"receive", Value::Int(1), repl_sync({5})});
  EXPECT_EQ(s.epoch, 1);
  s = comp.apply(s, {"receive", Value::Int(0), repl_sync({7})});
  EXPECT_EQ(s.log, (ReplLog{5}));
  EXPECT_EQ(s.acks.size(), 1u);
}

TEST(ReplDecomposition, RecompositionMatchesProtocol) {
  ReplConfig cfg;
  const auto st = build_repl_stack(cfg);
  const auto rec = st.recompose();
  for (std::size_t depth = 0; depth <= 6; ++depth) {
    EXPECT_EQ(enumerate_traces(rec, depth), enumerate_traces(st.protocol, depth))
        << "depth " << depth;
  }
}

TEST(ReplDecomposition, ClientRequestGuardIgnoresInput) {
  const auto comp = repl_client_component(ReplConfig{}, 2);
  const auto outs = comp.enabled_outputs(comp.initial());
  std::vector<Value> sends;
  for (const auto& [bio, v] : outs) {
    if (bio == "send") sends.push_back(v);
  }
  ASSERT_EQ(sends.size(), 1u);
  EXPECT_EQ(sends[0], Value::Tuple({Value::Int(0), repl_request(2, 1)}));
}

}  // namespace
}  // namespace igloo
