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

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/event_system.h"
#include "igloo/kernel/generators.h"
#include "igloo/kernel/refinement.h"
#include "igloo/kernel/search.h"

namespace igloo {
namespace {

Event ev(const std::string& name, std::vector<Value> params = {}) {
  return Event{name, std::move(params)};
}

// Counts up to 2 with inc, back down with dec.
EventSystem<int> counter() {
  GuardedEventSystem<int> g;
  g.initial = {0};
  g.events.push_back({"inc", {{}},
                      [](const int& s, const auto&) { return s < 2; },
                      [](const int& s, const auto&) { return s + 1; }});
  g.events.push_back({"dec", {{}},
                      [](const int& s, const auto&) { return s > 0; },
                      [](const int& s, const auto&) { return s - 1; }});
  return g.to_event_system();
}

TEST(EventSystemTest, EnumeratesBoundedTraces) {
  const auto traces = enumerate_traces(counter(), 2);
  const Event inc = ev("inc"), dec = ev("dec"), skip = skip_event();
  const TraceSet expected = {
      {},          {inc},       {skip},      {inc, inc}, {inc, dec},
      {inc, skip}, {skip, inc}, {skip, skip}};
  EXPECT_EQ(traces, expected);
  EXPECT_TRUE(is_prefix_closed(traces));
}

TEST(EventSystemTest, SkipIsAlwaysEnabled) {
  const auto es = counter();
  for (int s = 0; s <= 2; ++s) EXPECT_TRUE(has_stutter_at(es, s));
}

TEST(EventSystemTest, SatisfiesReportsShortestCounterexample) {
  TraceProperty at_most_one_inc{"at most one inc", [](const Trace& t) {
                                  return std::count(t.begin(), t.end(),
                                                    Event{"inc", {}}) <= 1;
                                }};
  const auto v = satisfies(counter(), at_most_one_inc, 4);
  ASSERT_FALSE(v.holds);
  EXPECT_EQ(*v.counterexample, (Trace{ev("inc"), ev("inc")}));
  EXPECT_TRUE(satisfies(counter(), accept_all(), 4).holds);
}

// Abstract: a single finish event. Concrete: two internal ticks, then finish.
struct Finish {
  EventSystem<bool> abstract_system;
  EventSystem<int> concrete_system;
  SimulationRelation<bool, int> rel{"done iff 3",
                                    [](const bool& a, const int& c) {
                                      return a == (c == 3);
                                    }};
  Mediator pi{"tick->skip", [](const Event& e) {
                return e.name == "tick" ? skip_event() : e;
              }};

  Finish() {
    GuardedEventSystem<bool> a;
    a.initial = {false};
    a.events.push_back({"finish", {{}},
                        [](const bool& done, const auto&) { return !done; },
                        [](const bool&, const auto&) { return true; }});
    abstract_system = a.to_event_system();
    GuardedEventSystem<int> c;
    c.initial = {0};
    c.events.push_back({"tick", {{}},
                        [](const int& s, const auto&) { return s < 2; },
                        [](const int& s, const auto&) { return s + 1; }});
    c.events.push_back({"finish", {{}},
                        [](const int& s, const auto&) { return s == 2; },
                        [](const int&, const auto&) { return 3; }});
    concrete_system = c.to_event_system();
  }
};

TEST(RefinementTest, ForwardSimulationPasses) {
  Finish f;
  const auto v =
      check_refinement(f.concrete_system, f.abstract_system, f.rel, f.pi, 6);
  EXPECT_EQ(v.status, Status::kPass);
  EXPECT_EQ(v.failed_condition, 0);
  EXPECT_GT(v.pairs_explored, 3u);
}

TEST(RefinementTest, WrongMediatorFailsStepCondition) {
  Finish f;
  Mediator bad{"tick->finish", [](const Event& e) {
                 return e.name == "tick" ? ev("finish") : e;
               }};
  const auto v =
      check_refinement(f.concrete_system, f.abstract_system, f.rel, bad, 6);
  EXPECT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.failed_condition, 2);
  EXPECT_EQ(v.concrete_trace, (Trace{ev("tick")}));
  EXPECT_EQ(*v.abstract_event, ev("finish"));
  const auto report = to_json_report(v);
  EXPECT_EQ(report["failed_condition"], 2);
}

TEST(RefinementTest, UnrelatedInitialStateFailsInitialCondition) {
  Finish f;
  SimulationRelation<bool, int> never{"never",
                                      [](const bool&, const int&) { return false; }};
  const auto v =
      check_refinement(f.concrete_system, f.abstract_system, never, f.pi, 6);
  EXPECT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.failed_condition, 1);
}

TEST(RefinementTest, NodeLimitYieldsBudgetExceeded) {
  Finish f;
  const auto v =
      check_refinement(f.concrete_system, f.abstract_system, f.rel, f.pi, 6, 2);
  EXPECT_EQ(v.status, Status::kBudgetExceeded);
}

TEST(RefinementTest, PassingCheckImpliesMappedTraceInclusion) {
  RandomSystemParams dense;
  dense.max_states = 4;
  dense.edge_density = 0.6;
  RandomSystemParams sparse;
  sparse.max_states = 6;
  sparse.edge_density = 0.2;
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto abs = random_event_system(seed * 2 + 1, dense);
    const auto conc = random_event_system(seed * 2 + 2, sparse);
    SimulationRelation<int, int> any{"any", [](const int&, const int&) { return true; }};
    const auto v = check_refinement(conc, abs, any, identity_mediator(), 3);
    if (v.status != Status::kPass) continue;
    ++passed;
    const auto mapped = map_traces(identity_mediator(), enumerate_traces(conc, 3));
    const auto abstract_traces = enumerate_traces(abs, 3);
    EXPECT_TRUE(std::includes(abstract_traces.begin(), abstract_traces.end(),
                              mapped.begin(), mapped.end()))
        << "seed " << seed;
  }
  EXPECT_GT(passed, 0);
}

TEST(RefinementTest, SystemRefinesItselfUnderIdentity) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto es = random_event_system(seed);
    SimulationRelation<int, int> eq{"eq", [](const int& a, const int& c) { return a == c; }};
    EXPECT_EQ(check_refinement(es, es, eq, identity_mediator(), 4).status,
              Status::kPass);
  }
}

TEST(MediatorTest, PreimagePropertyMapsBeforeChecking) {
  Mediator rename{"b->a", [](const Event& e) {
                    return e.name == "b" ? ev("a", e.params) : e;
                  }};
  TraceProperty no_b{"no b", [](const Trace& t) {
                       return std::none_of(t.begin(), t.end(), [](const Event& e) {
                         return e.name == "b";
                       });
                     }};
  const auto pre = preimage_property(rename, no_b);
  EXPECT_TRUE(pre.accepts({ev("b"), ev("c")}));
  EXPECT_FALSE(no_b.accepts({ev("b")}));
  EXPECT_EQ(map_trace(rename, {ev("b", {Value::Int(1)})}),
            (Trace{ev("a", {Value::Int(1)})}));
}

// Direct construction of T1 ||chi T2 from pairs of equal-length traces.
TraceSet brute_force_compose(const TraceSet& t1, const TraceSet& t2,
                             const SyncMap& chi) {
  TraceSet out;
  for (const auto& a : t1) {
    for (const auto& b : t2) {
      if (a.size() != b.size()) continue;
      Trace t;
      bool defined = true;
      for (std::size_t i = 0; i < a.size() && defined; ++i) {
        auto e = chi(a[i], b[i]);
        if (e) {
          t.push_back(*e);
        } else {
          defined = false;
        }
      }
      if (defined) out.insert(t);
    }
  }
  return out;
}

TEST(CompositionTest, ComposedSystemTracesEqualComposedTraceSets) {
  RandomSystemParams params;
  const auto alphabet = event_alphabet(params);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto es1 = random_event_system(seed * 3 + 1, params);
    const auto es2 = random_event_system(seed * 3 + 2, params);
    const auto chi = random_sync_map(seed * 3 + 3, alphabet, alphabet);
    const std::size_t depth = 1 + seed % 4;
    const auto lhs = enumerate_traces(compose_parallel(es1, es2, chi), depth);
    const auto t1 = enumerate_traces(es1, depth);
    const auto t2 = enumerate_traces(es2, depth);
    EXPECT_EQ(lhs, brute_force_compose(t1, t2, chi)) << "seed " << seed;
    EXPECT_EQ(lhs, compose_trace_sets(t1, t2, chi)) << "seed " << seed;
  }
}

TEST(CompositionTest, InterleavingPassesSkipThrough) {
  const auto chi = interleaving();
  EXPECT_EQ(*chi(ev("a"), skip_event()), ev("a"));
  EXPECT_EQ(*chi(skip_event(), ev("b")), ev("b"));
  EXPECT_EQ(*chi(skip_event(), skip_event()), skip_event());
  EXPECT_FALSE(chi(ev("a"), ev("b")).has_value());
}

EventSystem<int> renamed(const EventSystem<int>& es, int index) {
  return EventSystem<int>(
      [es, index](const int& s) {
        auto steps = es.successors(s);
        for (auto& st : steps) {
          if (!is_skip(st.event)) st.event = tag_with_index(Value::Int(index), st.event);
        }
        return steps;
      },
      es.initial());
}

TEST(CompositionTest, FamilyInterleavingMatchesNestedBinaryInterleaving) {
  RandomSystemParams params;
  params.max_states = 4;
  params.edge_density = 0.3;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    std::vector<EventSystem<int>> parts;
    std::vector<FamilyMember<int>> family;
    for (int i = 0; i < 3; ++i) {
      parts.push_back(random_event_system(seed * 5 + i, params));
      family.push_back({Value::Int(i), parts.back()});
    }
    const auto nested = compose_parallel(
        renamed(parts[0], 0),
        compose_parallel(renamed(parts[1], 1), renamed(parts[2], 2), interleaving()),
        interleaving());
    EXPECT_EQ(enumerate_traces(interleave_family(family), 3),
              enumerate_traces(nested, 3))
        << "seed " << seed;
  }
}

TEST(SearchTest, FindsShortestViolation) {
  StateInvariant<int> below_two{"below two", [](const int& s) { return s < 2; }};
  const auto v = search_invariants(counter(), 5, {below_two}, {});
  EXPECT_EQ(v.status, Status::kFail);
  EXPECT_EQ(v.violated, "below two");
  EXPECT_EQ(v.counterexample, (Trace{ev("inc"), ev("inc")}));
}

TEST(SearchTest, StepInvariantSeesEveryTransition) {
  StepInvariant<int> moves_by_one{"moves by one",
                                  [](const int& s, const Event&, const int& t) {
                                    return t - s == 1 || s - t == 1 || s == t;
                                  }};
  const auto v = search_invariants(counter(), 5, {}, {moves_by_one});
  EXPECT_EQ(v.status, Status::kPass);
  EXPECT_EQ(v.states, 3u);
}

TEST(SearchTest, FirstStuckPosition) {
  const auto es = counter();
  EXPECT_FALSE(first_stuck_position(es, {ev("inc"), ev("dec")}).has_value());
  EXPECT_EQ(*first_stuck_position(es, {ev("inc"), ev("dec"), ev("dec")}), 2u);
}

}  // namespace
}  // namespace igloo
