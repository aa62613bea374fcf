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

#ifndef IGLOO_HEAP_ASSERTION_H_
#define IGLOO_HEAP_ASSERTION_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "igloo/heap/heap.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

// I/O specification assertions with finite quantifier domains. Bodies of
// quantifiers and deferred nodes are evaluated lazily, so co-recursive
// specifications unfold only as far as satisfaction checking needs.
class Assertion {
 public:
  enum class Kind { kBool, kAtom, kStar, kExistsValue, kExistsPlace, kDefer };
  using ValueBody = std::function<Assertion(const Value&)>;
  using PlaceBody = std::function<Assertion(const Place&)>;
  using Thunk = std::function<Assertion()>;

  static Assertion Bool(bool b);
  static Assertion True() { return Bool(true); }
  static Assertion False() { return Bool(false); }
  static Assertion Atom(Chunk c);
  static Assertion Star(Assertion lhs, Assertion rhs);
  // Iterated separating conjunction; empty yields true.
  static Assertion StarAll(std::vector<Assertion> parts);
  static Assertion ExistsValue(std::vector<Value> domain, ValueBody body);
  // Without candidates, the place ranges over the places of the heap being
  // checked plus one fresh place.
  static Assertion ExistsPlace(std::optional<std::vector<Place>> candidates,
                               PlaceBody body);
  // Memoized on first force.
  static Assertion Defer(Thunk thunk);

  Kind kind() const;
  bool bool_value() const;
  const Chunk& chunk() const;
  const Assertion& lhs() const;
  const Assertion& rhs() const;
  const std::vector<Value>& value_domain() const;
  Assertion open(const Value& v) const;
  const std::optional<std::vector<Place>>& place_candidates() const;
  Assertion open(const Place& t) const;
  Assertion force() const;

 private:
  struct Node;
  explicit Assertion(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class Sat { kFalse, kTrue, kUnknown };
const char* sat_name(Sat s);

inline constexpr std::size_t kDefaultSatBudget = 2'000'000;

// Decides h |= phi by backtracking consumption: each atom consumes one copy
// of its chunk, a star threads the remainder, and quantifiers try their
// domain. Returns kUnknown once the step budget runs out without a model.
Sat assert_sat(const Heap& h, const Assertion& phi, const Typing& typing,
               std::size_t budget = kDefaultSatBudget);

// The I/O specification of a process rooted at place t.
Assertion emb(const Process& p, const Place& t, const Typing& typing);
// Adds a token at an existentially chosen place. Both keep a reference to
// the typing, which must outlive the assertion.
Assertion emb_tok(const Process& p, const Typing& typing);

}  // namespace igloo

#endif  // IGLOO_HEAP_ASSERTION_H_
