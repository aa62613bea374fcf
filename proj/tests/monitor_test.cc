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

#include <sstream>

#include "igloo/monitor/monitor.h"
#include "igloo/process/generators.h"
#include "igloo/protocols/leader.h"

namespace igloo {
namespace {

const RingConfig& ring4() {
  static const RingConfig ring = RingConfig::Sorted({1, 2, 3, 4});
  return ring;
}

IOGuardedES<LeaderNode> node2() {
  return leader_component(ring4(), 2, ring4().addr_of(3));
}

Value send_out(int m, int a) { return Value::Tuple({Value::Int(m), Value::Int(a)}); }

class MonitorBackends : public ::testing::TestWithParam<Backend> {};

TEST_P(MonitorBackends, StartsEmpty) {
  Monitor<LeaderNode> m(node2(), GetParam());
  EXPECT_EQ(m.state(), LeaderNode{});
  EXPECT_TRUE(m.observed_trace(true).empty());
  EXPECT_FALSE(m.halted());
}

TEST_P(MonitorBackends, SendNeedsBufferedIdAndNextAddress) {
  Monitor<LeaderNode> m(node2(), GetParam());
  const int a = ring4().addr_of(3);
  EXPECT_FALSE(m.request_output("send", send_out(2, a)).permitted());
  ASSERT_TRUE(m.commit_ghost("setup", Value()).permitted());
  EXPECT_TRUE(m.request_output("send", send_out(2, a)).permitted());
  EXPECT_FALSE(m.request_output("send", send_out(3, a)).permitted());
  EXPECT_FALSE(m.request_output("send", send_out(2, ring4().addr_of(1))).permitted());
}

TEST_P(MonitorBackends, OutOfDomainOutputDenied) {
  Monitor<LeaderNode> m(node2(), GetParam());
  m.commit_ghost("setup", Value());
  EXPECT_FALSE(m.request_output("send", send_out(2, 77)).permitted());
  EXPECT_FALSE(m.request_output("nosuchop", Value()).permitted());
}

TEST_P(MonitorBackends, RequestsAreReadOnly) {
  Monitor<LeaderNode> m(node2(), GetParam());
  m.commit_ghost("setup", Value());
  const auto before = m.state_hash();
  const auto v1 = m.request_output("send", send_out(2, ring4().addr_of(3)));
  const auto v2 = m.request_output("send", send_out(2, ring4().addr_of(3)));
  EXPECT_EQ(v1, v2);
  EXPECT_EQ(m.state_hash(), before);
}

TEST_P(MonitorBackends, ReceiveAlwaysPermittedAndBuffers) {
  Monitor<LeaderNode> m(node2(), GetParam());
  ASSERT_TRUE(m.commit("receive", Value(), Value::Int(4)).permitted());
  EXPECT_EQ(m.state().ibuf, std::set<int>{4});
}

TEST_P(MonitorBackends, IllTypedInputDenied) {
  Monitor<LeaderNode> m(node2(), GetParam(), MonitorMode::kAudit);
  const auto before = m.state_hash();
  const auto v = m.commit("receive", Value(), Value::Int(9));
  EXPECT_EQ(v, Verdict::Deny(DenyReason::kIllTypedInput));
  EXPECT_EQ(m.state_hash(), before);
  EXPECT_EQ(m.violations(), 1u);
  EXPECT_FALSE(m.halted());
}

TEST_P(MonitorBackends, StrictModeHaltsOnDeny) {
  Monitor<LeaderNode> m(node2(), GetParam(), MonitorMode::kStrict);
  m.commit("receive", Value(), Value::Int(9));
  EXPECT_TRUE(m.halted());
}

TEST_P(MonitorBackends, ElectNeedsOwnIdInBuffer) {
  Monitor<LeaderNode> m(node2(), GetParam(), MonitorMode::kAudit);
  EXPECT_FALSE(m.commit_ghost("elect", Value()).permitted());
  m.commit("receive", Value(), Value::Int(2));
  EXPECT_TRUE(m.commit_ghost("elect", Value()).permitted());
  EXPECT_TRUE(m.state().leader);
}

TEST_P(MonitorBackends, AcceptNeedsLargerId) {
  Monitor<LeaderNode> m(node2(), GetParam(), MonitorMode::kAudit);
  m.commit("receive", Value(), Value::Int(1));
  m.commit("receive", Value(), Value::Int(3));
  EXPECT_FALSE(m.commit_ghost("accept", Value::Int(1)).permitted());
  EXPECT_TRUE(m.commit_ghost("accept", Value::Int(3)).permitted());
  EXPECT_EQ(m.state().obuf, std::set<int>{3});
}

TEST_P(MonitorBackends, GhostFilteredFromExternalTrace) {
  Monitor<LeaderNode> m(node2(), GetParam());
  m.commit_ghost("setup", Value());
  m.commit("send", send_out(2, ring4().addr_of(3)), Value());
  m.commit("receive", Value(), Value::Int(4));
  EXPECT_EQ(m.observed_trace(true).size(), 3u);
  const auto io = m.observed_trace(false);
  ASSERT_EQ(io.size(), 2u);
  EXPECT_EQ(io[0].bio, "send");
  EXPECT_EQ(io[1].bio, "receive");
}

TEST_P(MonitorBackends, ObservedTraceIsModelTrace) {
  const auto ges = node2();
  Monitor<LeaderNode> m(ges, GetParam());
  m.commit_ghost("setup", Value());
  m.commit("receive", Value(), Value::Int(3));
  m.commit_ghost("accept", Value::Int(3));
  m.commit("send", send_out(3, ring4().addr_of(3)), Value());
  const Trace t = to_event_trace(m.observed_trace(true));
  EXPECT_TRUE(enumerate_traces(ges.to_event_system(false), t.size()).count(t));
}

TEST_P(MonitorBackends, CommitGhostRejectsIoOperation) {
  Monitor<LeaderNode> m(node2(), GetParam());
  EXPECT_THROW(m.commit_ghost("send", send_out(2, 1003)), std::invalid_argument);
}

TEST_P(MonitorBackends, LogIsJsonLines) {
  Monitor<LeaderNode> m(node2(), GetParam(), MonitorMode::kAudit);
  m.request_output("send", send_out(2, 1003));
  m.commit("receive", Value(), Value::Int(2));
  std::ostringstream os;
  m.write_log(os);
  std::istringstream is(os.str());
  std::string line;
  std::vector<nlohmann::json> rows;
  while (std::getline(is, line)) rows.push_back(nlohmann::json::parse(line));
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["kind"], "request");
  EXPECT_TRUE(rows[0]["in"].is_null());
  EXPECT_EQ(rows[1]["kind"], "commit");
  EXPECT_EQ(rows[1]["verdict"], "PERMIT");
  EXPECT_EQ(rows[1]["seq"], 1);
}

TEST_P(MonitorBackends, EmptyModelPermitsNothing) {
  Typing ty;
  ty.declare("op", {Value()}, {Value()});
  Monitor<int> m(IOGuardedES<int>({}, ty, 0), GetParam(), MonitorMode::kAudit);
  EXPECT_TRUE(m.enabled_outputs().empty());
  EXPECT_FALSE(m.request_output("op", Value()).permitted());
}

INSTANTIATE_TEST_SUITE_P(Both, MonitorBackends,
                         ::testing::Values(Backend::kEventSystem, Backend::kHeap));

TEST(MonitorDenyReasons, BackendSpecific) {
  Monitor<LeaderNode> es(node2(), Backend::kEventSystem, MonitorMode::kAudit);
  Monitor<LeaderNode> heap(node2(), Backend::kHeap, MonitorMode::kAudit);
  EXPECT_EQ(es.commit_ghost("elect", Value()), Verdict::Deny(DenyReason::kNoEnabledGuard));
  EXPECT_EQ(heap.commit_ghost("elect", Value()),
            Verdict::Deny(DenyReason::kNoPermissionAtToken));
  EXPECT_EQ(Verdict::Deny(DenyReason::kNoEnabledGuard).to_string(),
            "DENY(no enabled guard)");
}

TEST(MonitorDenyReasons, HeapNeverBottomAfterPermit) {
  Monitor<LeaderNode> m(node2(), Backend::kHeap);
  m.commit("receive", Value(), Value::Int(4));
  m.commit("receive", Value(), Value::Int(3));
  m.commit_ghost("accept", Value::Int(4));
  ASSERT_TRUE(m.tracker().has_value());
  EXPECT_FALSE(m.tracker()->heap().is_bottom());
}

TEST(BackendEquivalence, InitialEnabledOutputsAgree) {
  Monitor<LeaderNode> es(node2(), Backend::kEventSystem);
  Monitor<LeaderNode> heap(node2(), Backend::kHeap);
  EXPECT_EQ(es.enabled_outputs(), heap.enabled_outputs());
  EXPECT_FALSE(es.enabled_outputs().empty());
}

TEST(BackendEquivalence, LeaderComponentRandomWalks) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto cmp = compare_backends(node2(), 300, seed, {Value::Int(99)});
    EXPECT_EQ(cmp.disagreements, 0u)
        << "seed " << seed << ": " << cmp.first_disagreement->dump();
    EXPECT_GT(cmp.permits, 100u);
  }
}

TEST(BackendEquivalence, RandomIoSystems) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto ges = random_io_system(seed, RandomIOSystemParams{});
    const auto cmp = compare_backends(ges, 60, seed, {Value::Int(99)});
    EXPECT_EQ(cmp.disagreements, 0u)
        << "seed " << seed << ": " << cmp.first_disagreement->dump();
  }
}

}  // namespace
}  // namespace igloo
