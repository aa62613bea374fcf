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

#include <functional>
#include <set>
#include <vector>

#include "igloo/error.h"
#include "igloo/process/generators.h"
#include "igloo/process/io_guarded.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {
namespace {

const Value kUnit;

Process halt(const Value&) { return Process(); }

Typing two_ops() {
  Typing t;
  t.declare("recv", {kUnit}, {Value::Int(1), Value::Int(2)});
  t.declare("send", {Value::Int(0), Value::Int(1), Value::Int(2)}, {kUnit});
  return t;
}

std::set<Action> step_labels(const Process& p, const Typing& typing) {
  std::set<Action> out;
  for (const auto& st : process_successors(p, typing)) out.insert(st.action);
  return out;
}

TEST(TypingTest, PickIsMinimumAndOverridesApply) {
  Typing t = two_ops();
  t.set_inputs("send", Value::Int(2), {Value::Int(9), Value::Int(4)});
  EXPECT_EQ(t.pick("recv", kUnit), Value::Int(1));
  EXPECT_EQ(t.pick("send", Value::Int(2)), Value::Int(4));
  EXPECT_TRUE(t.well_typed(Action{"send", Value::Int(2), Value::Int(9)}));
  EXPECT_FALSE(t.well_typed(Action{"send", Value::Int(1), Value::Int(9)}));
  EXPECT_FALSE(t.well_typed(Action{"other", kUnit, kUnit}));
  EXPECT_THROW(t.declare("x", {kUnit}, {}), std::invalid_argument);
  EXPECT_EQ(t.all_actions().size(), 2u + 1u + 1u + 2u);
}

TEST(ProcessTest, PrefixOffersEveryWellTypedInput) {
  const Typing typing = two_ops();
  const Process p = Process::Prefix("recv", kUnit, halt);
  EXPECT_EQ(step_labels(p, typing),
            (std::set<Action>{{"recv", kUnit, Value::Int(1)},
                              {"recv", kUnit, Value::Int(2)}}));
  EXPECT_TRUE(step_labels(Process(), typing).empty());
}

TEST(ProcessTest, ContinuationIsMemoized) {
  int calls = 0;
  const Process p = Process::Prefix("recv", kUnit, [&calls](const Value&) {
    ++calls;
    return Process::Prefix("send", Value::Int(0), halt);
  });
  const auto a = p.continue_with(Value::Int(1));
  const auto b = p.continue_with(Value::Int(1));
  EXPECT_EQ(a.id(), b.id());
  EXPECT_EQ(calls, 1);
}

// Nested binary choice built without finite_choice.
Process nested_choice(const std::vector<int>& values) {
  Process acc;
  for (auto it = values.rbegin(); it != values.rend(); ++it) {
    acc = Process::Choice(Process::Prefix("send", Value::Int(*it), halt), acc);
  }
  return acc;
}

TEST(ProcessTest, FiniteChoiceMatchesNestedChoice) {
  Typing typing;
  std::vector<Value> outs;
  for (int i = 0; i < 6; ++i) outs.push_back(Value::Int(i));
  typing.declare("send", outs, {kUnit});
  for (std::size_t n = 0; n <= 6; ++n) {
    std::vector<int> values;
    std::vector<Value> keys;
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(static_cast<int>(i));
      keys.push_back(Value::Int(static_cast<std::int64_t>(n - 1 - i)));
    }
    const Process folded = finite_choice(keys, [](const Value& v) {
      return Process::Prefix("send", v, halt);
    });
    EXPECT_EQ(step_labels(folded, typing), step_labels(nested_choice(values), typing));
    EXPECT_EQ(enumerate_process_traces(folded, typing, 2),
              enumerate_process_traces(nested_choice(values), typing, 2));
  }
}

TEST(ProcessTest, DeadProcesses) {
  EXPECT_TRUE(is_dead(Process()));
  EXPECT_TRUE(is_dead(Process::Choice(Process(), Process::Choice(Process(), Process()))));
  EXPECT_FALSE(is_dead(Process::Choice(Process(), Process::Prefix("recv", kUnit, halt))));
}

TEST(ProcessTest, Example8TracesIncludeTheFullRun) {
  const Typing typing = example8_typing();
  const auto traces = enumerate_process_traces(example8_process(), typing, 3);
  const ActionTrace full = {{"in", kUnit, Value::Int(1)},
                            {"in", kUnit, Value::Int(2)},
                            {"out", Value::Int(3), kUnit}};
  EXPECT_TRUE(traces.count(full));
  EXPECT_TRUE(traces.count({{"fail", kUnit, kUnit}}));
  EXPECT_FALSE(traces.count({{"fail", kUnit, kUnit}, {"in", kUnit, Value::Int(1)}}));
}

// A one-place buffer: recv stores the input, send emits it.
IOGuardedES<int> buffer() {
  Typing typing = two_ops();
  std::vector<IOEvent<int>> events;
  events.push_back({"recv", false,
                    [](const int& s, const Value&, const Value&) { return s == 0; },
                    [](const int&, const Value&, const Value& in) {
                      return static_cast<int>(in.as_int());
                    },
                    {}});
  events.push_back({"send", false,
                    [](const int& s, const Value& out, const Value&) {
                      return s != 0 && out.as_int() == s;
                    },
                    [](const int&, const Value&, const Value&) { return 0; },
                    {}});
  return IOGuardedES<int>(std::move(events), typing, 0);
}

TEST(IOGuardedTest, BufferProcessAlternates) {
  const auto ges = buffer();
  const auto traces =
      enumerate_process_traces(proc_of_ges(ges, ges.initial()), ges.typing(), 2);
  EXPECT_TRUE(traces.count({{"recv", kUnit, Value::Int(2)}, {"send", Value::Int(2), kUnit}}));
  EXPECT_FALSE(traces.count({{"recv", kUnit, Value::Int(2)}, {"send", Value::Int(1), kUnit}}));
  EXPECT_EQ(traces.size(), 1u + 2u + 2u);
}

TEST(IOGuardedTest, InputDependentGuardIsRejected) {
  std::vector<IOEvent<int>> events;
  events.push_back({"recv", false,
                    [](const int&, const Value&, const Value& in) { return in.as_int() == 1; },
                    [](const int& s, const Value&, const Value&) { return s; },
                    {}});
  IOGuardedES<int> ges(std::move(events), two_ops(), 0);
  try {
    ges.enabled_outputs(0);
    FAIL() << "expected GUARD_DEPENDS_ON_INPUT";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGuardDependsOnInput);
  }
}

TEST(IOGuardedTest, OutputsOutsideDomainAreDisabled) {
  const auto ges = buffer();
  EXPECT_FALSE(ges.enabled(1, "send", Value::Int(7)));
  EXPECT_FALSE(ges.enabled(1, "unknown", kUnit));
}

// Direct depth-first enumeration of the guarded system's traces.
void direct_traces(const IOGuardedES<int>& ges, int s, ActionTrace& prefix,
                   std::size_t depth, ActionTraceSet& out) {
  out.insert(prefix);
  if (prefix.size() == depth) return;
  for (const auto& ev : ges.events()) {
    for (const auto& v : ges.typing().outputs(ev.bio)) {
      const auto& inputs = ges.typing().ty(ev.bio, v);
      if (!ev.guard(s, v, inputs.front())) continue;
      for (const auto& w : inputs) {
        prefix.push_back({ev.bio, v, w});
        direct_traces(ges, ev.update(s, v, w), prefix, depth, out);
        prefix.pop_back();
      }
    }
  }
}

TEST(IOGuardedTest, SystemAndProcessTracesCoincideOnRandomSystems) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const auto ges = random_io_system(seed);
    const std::size_t depth = 1 + seed % 4;
    ActionTraceSet expected;
    ActionTrace prefix;
    direct_traces(ges, ges.initial(), prefix, depth, expected);
    const auto from_process = enumerate_process_traces(
        proc_of_ges(ges, ges.initial()), ges.typing(), depth);
    const auto from_system =
        enumerate_traces(ges.to_event_system(false), depth);
    EXPECT_EQ(from_process, expected) << "seed " << seed;
    EXPECT_EQ(from_system, to_event_traces(expected)) << "seed " << seed;
  }
}

TEST(IOGuardedTest, RandomSystemsRespectBounds) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto ges = random_io_system(seed);
    EXPECT_LE(ges.typing().bios().size(), 3u);
    for (const auto& bio : ges.typing().bios()) {
      EXPECT_LE(ges.typing().outputs(bio).size(), 3u);
    }
  }
}

}  // namespace
}  // namespace igloo
