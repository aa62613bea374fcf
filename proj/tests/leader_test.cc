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

#include "igloo/error.h"
#include "igloo/kernel/refinement.h"
#include "igloo/protocols/leader.h"

namespace igloo {
namespace {

Event ev(std::string name, std::vector<int> params) {
  Event e{std::move(name), {}};
  for (int p : params) e.params.push_back(Value::Int(p));
  return e;
}

// Every state reachable within depth steps.
template <class S>
std::set<S> reachable(const EventSystem<S>& es, std::size_t depth) {
  std::set<S> seen(es.initial().begin(), es.initial().end());
  std::vector<S> frontier(seen.begin(), seen.end());
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<S> next;
    for (const auto& s : frontier) {
      for (const auto& st : es.successors(s)) {
        if (seen.insert(st.target).second) next.push_back(st.target);
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

TEST(RingConfig, SortedRingIsValid) {
  const RingConfig r = RingConfig::Sorted({3, 1, 2});
  EXPECT_EQ(r.ids, (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(r.next_of(1), 2);
  EXPECT_EQ(r.next_of(3), 1);
  EXPECT_EQ(r.addr_of(2), 1002);
}

TEST(RingConfig, RejectsTwoCycles) {
  RingConfig r = RingConfig::Sorted({1, 2, 3, 4});
  r.next = {{1, 2}, {2, 1}, {3, 4}, {4, 3}};
  try {
    r.validate();
    FAIL() << "expected INVALID_RING";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidRing);
  }
}

TEST(RingConfig, RejectsNonInjectiveAddr) {
  RingConfig r = RingConfig::Sorted({1, 2});
  r.addr[2] = r.addr[1];
  EXPECT_THROW(r.validate(), Error);
}

TEST(RingConfig, JsonRoundTrip) {
  RingConfig r = RingConfig::Sorted({1, 2, 3});
  r.next = {{1, 3}, {3, 2}, {2, 1}};
  const nlohmann::json j = r;
  const RingConfig back = ring_from_json(j);
  EXPECT_EQ(back.next, r.next);
  EXPECT_EQ(back.addr, r.addr);
}

class LeaderRefinement : public ::testing::TestWithParam<int> {};

TEST_P(LeaderRefinement, ProtocolRefinesAbstract) {
  std::vector<int> ids;
  for (int i = 1; i <= GetParam(); ++i) ids.push_back(i);
  const auto st = build_leader_stack(RingConfig::Sorted(ids));
  const auto v = check_refinement(st.protocol_model, st.abstract_model, st.r_pa,
                                  st.pi_pa, 5);
  EXPECT_EQ(v.status, Status::kPass) << to_json_report(v).dump();
}

TEST_P(LeaderRefinement, InterfaceRefinesProtocol) {
  std::vector<int> ids;
  for (int i = 1; i <= GetParam(); ++i) ids.push_back(i);
  const auto st = build_leader_stack(RingConfig::Sorted(ids));
  const auto v = check_refinement(st.interface_model, st.protocol_model, st.r_ip,
                                  st.pi_ip, 5);
  EXPECT_EQ(v.status, Status::kPass) << to_json_report(v).dump();
  EXPECT_GT(v.pairs_explored, 10u);
}

TEST_P(LeaderRefinement, DroppedElectMediatorFails) {
  std::vector<int> ids;
  for (int i = 1; i <= GetParam(); ++i) ids.push_back(i);
  const auto st = build_leader_stack(RingConfig::Sorted(ids));
  const auto v = check_refinement(st.protocol_model, st.abstract_model, st.r_pa,
                                  leader_pi_pa_drop_elect(), 5);
  ASSERT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.failed_condition, 2);
  ASSERT_TRUE(v.concrete_event.has_value());
  EXPECT_EQ(v.concrete_event->name, "elect");
}

TEST_P(LeaderRefinement, AlwaysAcceptMediatorFails) {
  std::vector<int> ids;
  for (int i = 1; i <= GetParam(); ++i) ids.push_back(i);
  const auto st = build_leader_stack(RingConfig::Sorted(ids));
  const auto v = check_refinement(st.interface_model, st.protocol_model, st.r_ip,
                                  leader_pi_ip_always_accept(), 5);
  ASSERT_EQ(v.status, Status::kFail);
  ASSERT_TRUE(v.concrete_event.has_value());
  EXPECT_EQ(v.concrete_event->name, "send");
  // The first own-id send must map to setup, not accept.
  EXPECT_EQ(v.concrete_event->params[0], v.concrete_event->params[1]);
}

INSTANTIATE_TEST_SUITE_P(RingSizes, LeaderRefinement, ::testing::Values(2, 3, 4));

TEST(LeaderModels, SingleNodeRingElects) {
  const auto st = build_leader_stack(RingConfig::Sorted({1}));
  const Trace t{ev("setup", {1}), ev("send", {1, 1, 1001}), ev("receive", {1, 1}),
                ev("elect", {1})};
  EXPECT_TRUE(enumerate_traces(st.interface_model, 4).count(t));
}

TEST(LeaderModels, SendRespectsNextAddress) {
  const auto st = build_leader_stack(RingConfig::Sorted({1, 2}));
  const auto traces = enumerate_traces(st.interface_model, 2);
  EXPECT_TRUE(traces.count({ev("setup", {1}), ev("send", {1, 1, 1002})}));
  EXPECT_FALSE(traces.count({ev("setup", {1}), ev("send", {1, 1, 1001})}));
}

TEST(LeaderModels, AbstractSatisfiesUniqueness) {
  const auto st = build_leader_stack(RingConfig::Sorted({1, 2, 3}));
  EXPECT_TRUE(satisfies(st.abstract_model, leader_uniqueness(), 4).holds);
}

TEST(LeaderModels, UnguardedAbstractViolatesUniqueness) {
  const auto es = leader_abstract_without_guard(RingConfig::Sorted({1, 2, 3}));
  const auto v = satisfies(es, leader_uniqueness(), 4);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample.has_value());
  EXPECT_EQ(v.counterexample->size(), 2u);
}

TEST(LeaderModels, InterfaceSatisfiesPreimageOfUniqueness) {
  const auto st = build_leader_stack(RingConfig::Sorted({1, 2, 3}));
  const auto prop = preimage_property(leader_pi_hat(st), leader_uniqueness());
  EXPECT_TRUE(satisfies(st.interface_model, prop, 7).holds);
}

TEST(LeaderModels, ProtocolChannelInvariantHolds) {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> ids;
    for (int i = 1; i <= n; ++i) ids.push_back(i);
    const RingConfig ring = RingConfig::Sorted(ids);
    const auto st = build_leader_stack(ring);
    for (const auto& s : reachable(st.protocol_model, 6)) {
      ASSERT_TRUE(leader_channel_invariant(ring, s)) << nlohmann::json(s).dump();
      std::map<int, bool> flags;
      for (const auto& [i, node] : s.nodes) flags[i] = node.leader;
      ASSERT_TRUE(leader_is_max(ring, flags));
    }
  }
}

TEST(LeaderModels, ChannelInvariantRejectsOvertaking) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  ProtocolLeaderState s;
  for (int i : ring.ids) s.nodes[i] = {};
  s.nodes[3].chan.insert(1);  // 1 passed node 2 although 2 > 1
  EXPECT_FALSE(leader_channel_invariant(ring, s));
}

TEST(LeaderModels, InterfaceBufferInvariantHolds) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto st = build_leader_stack(ring);
  for (const auto& s : reachable(st.interface_model, 6)) {
    ASSERT_TRUE(leader_buffer_invariant(ring, s));
  }
}

TEST(LeaderModels, NonSortedRingElectsMax) {
  RingConfig ring = RingConfig::Sorted({1, 2, 3});
  ring.next = {{1, 3}, {3, 2}, {2, 1}};
  ring.validate();
  const auto st = build_leader_stack(ring);
  for (const auto& s : reachable(st.protocol_model, 7)) {
    ASSERT_TRUE(leader_channel_invariant(ring, s));
  }
  const auto v = check_refinement(st.interface_model, st.protocol_model, st.r_ip,
                                  st.pi_ip, 5);
  EXPECT_EQ(v.status, Status::kPass);
}

TEST(LeaderDecomposition, GammaUsesNextAddress) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto d = decompose_leader(ring);
  EXPECT_EQ(d.gamma.at(1), std::make_pair(1, 1002));
  EXPECT_EQ(d.gamma.at(3), std::make_pair(3, 1001));
}

TEST(LeaderDecomposition, RecompositionMatchesInterfaceTraces) {
  const RingConfig ring = RingConfig::Sorted({1, 2});
  const auto st = build_leader_stack(ring);
  const auto d = decompose_leader(ring);
  const auto recomposed = d.recompose();
  for (std::size_t depth = 0; depth <= 4; ++depth) {
    EXPECT_EQ(enumerate_traces(recomposed, depth),
              enumerate_traces(st.interface_model, depth))
        << "depth " << depth;
  }
}

TEST(LeaderDecomposition, RecompositionMatchesOnThreeNodes) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto st = build_leader_stack(ring);
  const auto d = decompose_leader(ring);
  EXPECT_EQ(enumerate_traces(d.recompose(), 3),
            enumerate_traces(st.interface_model, 3));
}

TEST(LeaderDecomposition, ComponentSendGuardFixesAddress) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto comp = leader_component(ring, 2, ring.addr_of(3));
  LeaderNode s;
  s.obuf = {2};
  const Value ok = Value::Tuple({Value::Int(2), Value::Int(1003)});
  const Value wrong_addr = Value::Tuple({Value::Int(2), Value::Int(1001)});
  const Value not_buffered = Value::Tuple({Value::Int(3), Value::Int(1003)});
  EXPECT_TRUE(comp.enabled(s, "send", ok));
  EXPECT_FALSE(comp.enabled(s, "send", wrong_addr));
  EXPECT_FALSE(comp.enabled(s, "send", not_buffered));
}

TEST(LeaderDecomposition, EnvReceiveNeedsChannelContent) {
  const RingConfig ring = RingConfig::Sorted({1, 2});
  const auto d = decompose_leader(ring);
  const auto s0 = d.env.initial().front();
  for (const auto& st : d.env.successors(s0)) EXPECT_NE(st.event.name, "env_receive");
  LeaderEnvState s = s0;
  s.chan[ring.addr_of(2)].insert(1);
  bool found = false;
  for (const auto& st : d.env.successors(s)) {
    if (st.event == ev("env_receive", {2, 1})) found = true;
    if (st.event.name == "env_receive") {
      EXPECT_EQ(st.event, ev("env_receive", {2, 1}));
    }
  }
  EXPECT_TRUE(found);
}

TEST(LeaderDecomposition, ComponentGuardsIgnoreInputs) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto comp = leader_component(ring, 1, ring.addr_of(2));
  const auto states = reachable(comp.to_event_system(false), 3);
  EXPECT_NO_THROW(check_guard_independence(
      comp, std::vector<LeaderNode>(states.begin(), states.end())));
}

TEST(IOSpecRendering, LeaderComponentMatchesGolden) {
  const RingConfig ring = RingConfig::Sorted({1, 2, 3});
  const auto comp = leader_component(ring, 1, ring.addr_of(2));
  const std::string expected =
      "P(t, (i, a), s) =ν "
      "(∃t'. setup(t, t') ⋆ P(t', (i, a), s⟨obuf := obuf(s) ∪ {i}⟩)) ⋆ "
      "(∃m, t'. UDP_receive_int(t, m, t') ⋆ P(t', (i, a), s⟨ibuf := ibuf(s) ∪ {m}⟩)) ⋆ "
      "(∀⋆m. if m ∈ ibuf(s) ∧ i < m then ∃t'. accept(t, m, t') ⋆ "
      "P(t', (i, a), s⟨obuf := obuf(s) ∪ {m}⟩) else true) ⋆ "
      "(∀⋆m, a'. if m ∈ obuf(s) ∧ a' = a then ∃t'. UDP_send_int(t, (m, a'), t') ⋆ "
      "P(t', (i, a), s) else true) ⋆ "
      "(if i ∈ ibuf(s) then ∃t'. elect(t, t') ⋆ P(t', (i, a), s⟨leader := true⟩) else true)";
  EXPECT_EQ(render_iospec(comp), expected);
}

TEST(IOSpecRendering, EmptyComponentIsTrue) {
  const IOGuardedES<int> empty({}, Typing{}, 0);
  EXPECT_EQ(render_iospec(empty), "true");
}

}  // namespace
}  // namespace igloo
