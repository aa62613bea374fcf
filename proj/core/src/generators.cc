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

#include "igloo/process/generators.h"

#include <map>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace igloo {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::size_t below(std::mt19937_64& rng, std::size_t n) { return rng() % n; }

std::vector<Value> ints(std::size_t n) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Value::Int(static_cast<std::int64_t>(i)));
  }
  return out;
}

Process random_node(const std::shared_ptr<const Typing>& typing,
                    std::uint64_t seed,
                    std::size_t level, const RandomProcessParams& params) {
  if (level >= params.levels) return Process::Inactive();
  std::mt19937_64 rng(seed);
  const auto bios = typing->bios();
  const std::size_t alternatives = 1 + below(rng, params.branching);
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < alternatives; ++i) seeds.push_back(rng());

  auto alternative = [typing, level, params, bios](std::uint64_t s) {
    std::mt19937_64 r(s);
    if (below(r, 5) == 0) return Process::Inactive();
    const std::string& bio = bios[below(r, bios.size())];
    const auto& outs = typing->outputs(bio);
    const Value out = outs[below(r, outs.size())];
    const std::uint64_t child = r();
    return Process::Prefix(
        bio, out, [typing, level, params, child](const Value& in) {
          return random_node(typing, mix(child, fnv1a(in.to_string())),
                             level + 1, params);
        });
  };
  if (alternatives == 1) return alternative(seeds[0]);
  return finite_choice(ints(alternatives), [&](const Value& key) {
    return alternative(seeds[static_cast<std::size_t>(key.as_int())]);
  });
}

}  // namespace

Typing random_typing(std::uint64_t seed, const RandomTypingParams& params) {
  std::mt19937_64 rng(mix(seed, 1));
  Typing typing;
  const std::size_t n_bios = 1 + below(rng, params.max_bios);
  for (std::size_t b = 0; b < n_bios; ++b) {
    const std::string bio(1, static_cast<char>('a' + b));
    const auto outputs = ints(1 + below(rng, params.max_outputs));
    const auto all_inputs = ints(params.max_inputs);
    typing.declare(bio, outputs, {all_inputs.front()});
    for (const auto& v : outputs) {
      std::vector<Value> inputs;
      while (inputs.empty()) {
        for (const auto& w : all_inputs) {
          if (below(rng, 2) == 0) inputs.push_back(w);
        }
      }
      typing.set_inputs(bio, v, inputs);
    }
  }
  return typing;
}

Process random_process(const Typing& typing, std::uint64_t seed,
                       const RandomProcessParams& params) {
  auto owned = std::make_shared<const Typing>(typing);
  return random_node(owned, mix(seed, 2), 0, params);
}

IOGuardedES<int> random_io_system(std::uint64_t seed,
                                  const RandomIOSystemParams& params) {
  std::mt19937_64 rng(mix(seed, 3));
  Typing typing = random_typing(rng(), params.typing);
  const int n_states = 1 + static_cast<int>(below(rng, params.max_states));
  using Key = std::pair<int, Value>;
  std::vector<IOEvent<int>> events;
  for (const auto& bio : typing.bios()) {
    auto guard = std::make_shared<std::map<Key, bool>>();
    auto update = std::make_shared<std::map<std::pair<Key, Value>, int>>();
    for (int s = 0; s < n_states; ++s) {
      for (const auto& v : typing.outputs(bio)) {
        (*guard)[{s, v}] = below(rng, 3) != 0;
        for (const auto& w : typing.ty(bio, v)) {
          (*update)[{{s, v}, w}] =
              static_cast<int>(below(rng, static_cast<std::size_t>(n_states)));
        }
      }
    }
    IOEvent<int> ev;
    ev.bio = bio;
    ev.ghost = below(rng, 4) == 0;
    ev.guard = [guard](const int& s, const Value& out, const Value&) {
      return guard->at({s, out});
    };
    ev.update = [update](const int& s, const Value& out, const Value& in) {
      return update->at({{s, out}, in});
    };
    events.push_back(std::move(ev));
  }
  return IOGuardedES<int>(std::move(events), std::move(typing), 0,
                          "states=" + std::to_string(n_states));
}

Process example8_process() {
  const Value unit;
  auto q = [unit](const Value& x) {
    auto second_in = Process::Prefix("in", unit, [x, unit](const Value& y) {
      return Process::Prefix("out", Value::Int(x.as_int() + y.as_int()),
                             [](const Value&) { return Process(); });
    });
    auto drop = Process::Prefix("drop", unit,
                                [](const Value&) { return Process(); });
    return Process::Choice(
        Process::Prefix("out", x, [](const Value&) { return Process(); }),
        Process::Choice(second_in, drop));
  };
  return Process::Choice(
      Process::Prefix("in", unit, q),
      Process::Prefix("fail", unit, [](const Value&) { return Process(); }));
}

Typing example8_typing() {
  const Value unit;
  std::vector<Value> outs;
  for (int i = 1; i <= 6; ++i) outs.push_back(Value::Int(i));
  Typing typing;
  typing.declare("in", {unit}, {Value::Int(1), Value::Int(2)});
  typing.declare("out", outs, {unit});
  typing.declare("fail", {unit}, {unit});
  typing.declare("drop", {unit}, {unit});
  return typing;
}

}  // namespace igloo
