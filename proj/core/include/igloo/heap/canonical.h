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

#ifndef IGLOO_HEAP_CANONICAL_H_
#define IGLOO_HEAP_CANONICAL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "igloo/heap/heap.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

// Fixes the input read after each trace prefix for each operation and output.
class InputSchedule {
 public:
  using Fn = std::function<Value(const ActionTrace&, const std::string& bio,
                                 const Value& out)>;

  InputSchedule(std::string name, Fn fn)
      : name_(std::move(name)), fn_(std::move(fn)) {}

  Value operator()(const ActionTrace& tau, const std::string& bio,
                   const Value& out) const {
    return fn_(tau, bio, out);
  }
  const std::string& name() const { return name_; }

  // Always pick(ty(bio, out)).
  static InputSchedule Pick(const Typing& typing);
  // A well-typed schedule choosing inputs by hashing (seed, tau, bio, out).
  static InputSchedule Random(const Typing& typing, std::uint64_t seed);

 private:
  std::string name_;
  Fn fn_;
};

// Reads inputs off tau: at a proper prefix of tau, the input of the next
// action if it matches (bio, out); elsewhere pick(ty(bio, out)).
InputSchedule rho_wit(const ActionTrace& tau, const Typing& typing);

// The permission at position pos of p, or the empty heap.
Heap pm(const Process& p, const InputSchedule& rho, const ActionTrace& tau,
        const Place& ppos, const Place& cpos, const Place& pos);

struct GmodLimits {
  // Positions longer than this must carry no live prefix; BOUND_EXCEEDED
  // otherwise.
  std::size_t max_position = 64;
  // When set, prefixes below this many enclosing prefixes are omitted.
  std::optional<std::size_t> max_actions;
};

inline std::size_t default_position_bound(std::size_t depth) {
  return 4 * depth + 4;
}

// Multiset sum of pm over all positions, by structural recursion.
Heap gmod(const Process& p, const InputSchedule& rho, const ActionTrace& tau,
          const Place& ppos, const Place& cpos, const GmodLimits& limits = {});

Heap cmod(const Process& p, const InputSchedule& rho,
          const GmodLimits& limits = {});
// cmod plus token(<>).
Heap cmod_tok(const Process& p, const InputSchedule& rho,
              const GmodLimits& limits = {});

}  // namespace igloo

#endif  // IGLOO_HEAP_CANONICAL_H_
