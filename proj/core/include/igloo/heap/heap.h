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

#ifndef IGLOO_HEAP_HEAP_H_
#define IGLOO_HEAP_HEAP_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/process/typing.h"
#include "igloo/value.h"

namespace igloo {

// A position in a binary tree, written as a string over {L, R}.
class Place {
 public:
  Place() = default;
  // Throws std::invalid_argument on characters other than 'L' and 'R'.
  explicit Place(std::string path);

  Place child(char dir) const;
  Place left() const { return child('L'); }
  Place right() const { return child('R'); }

  const std::string& path() const { return path_; }
  std::size_t size() const { return path_.size(); }
  bool empty() const { return path_.empty(); }
  bool is_prefix_of(const Place& other) const;

  // "<>" for the root, the path otherwise.
  std::string to_string() const;

  auto operator<=>(const Place&) const = default;
  bool operator==(const Place&) const = default;

 private:
  std::string path_;
};

struct Permission {
  std::string bio;
  Place source;
  Value out;
  Value in;
  Place target;

  auto operator<=>(const Permission&) const = default;
  bool operator==(const Permission&) const = default;
};

class Chunk {
 public:
  static Chunk Token(Place at);
  static Chunk Perm(std::string bio, Place source, Value out, Value in,
                    Place target);

  bool is_token() const { return std::holds_alternative<Place>(v_); }
  bool is_permission() const { return !is_token(); }
  const Place& token_place() const { return std::get<Place>(v_); }
  const Permission& permission() const { return std::get<Permission>(v_); }

  // Tokens are always well-typed; a permission iff in is in Ty(bio, out).
  bool well_typed(const Typing& typing) const;

  std::string to_string() const;

  auto operator<=>(const Chunk&) const = default;
  bool operator==(const Chunk&) const = default;

 private:
  std::variant<Place, Permission> v_;
};

// A finite multiset of chunks.
class Heap {
 public:
  Heap() = default;
  Heap(std::initializer_list<Chunk> chunks);

  void add(const Chunk& c, std::size_t n = 1);
  // Removes one copy; returns false if absent.
  bool remove(const Chunk& c);
  std::size_t count(const Chunk& c) const;
  bool contains(const Chunk& c) const { return count(c) > 0; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  const std::map<Chunk, std::size_t>& counts() const { return counts_; }
  std::size_t token_count() const;
  std::size_t permission_count() const;
  std::set<Place> places() const;
  // The shortlex-first place not occurring in the heap.
  Place fresh_place() const;

  // Multiset sum.
  Heap operator+(const Heap& other) const;
  bool includes(const Heap& other) const;

  std::string to_string() const;

  auto operator<=>(const Heap&) const = default;
  bool operator==(const Heap&) const = default;

 private:
  std::map<Chunk, std::size_t> counts_;
  std::size_t size_ = 0;
};

// A heap or the chaos state.
class HeapState {
 public:
  HeapState() : heap_(Heap{}) {}
  HeapState(Heap h) : heap_(std::move(h)) {}  // NOLINT(google-explicit-constructor)
  static HeapState Bottom() {
    HeapState s;
    s.heap_.reset();
    return s;
  }
  bool is_bottom() const { return !heap_.has_value(); }
  const Heap& heap() const { return *heap_; }
  std::string to_string() const;

  auto operator<=>(const HeapState&) const = default;
  bool operator==(const HeapState&) const = default;

 private:
  std::optional<Heap> heap_;
};

// Bio, Contradict and Chaos transitions for one action.
std::set<HeapState> heap_step(const HeapState& hs, const Action& a,
                              const Typing& typing);

// All states reachable by executing the trace.
std::set<HeapState> heap_execute(const HeapState& hs, const ActionTrace& t,
                                 const Typing& typing);

// Actions that may be enabled at hs: for each token, every well-typed input
// of each permission sourced at it; from the chaos state, all actions of the
// typing.
std::vector<Action> heap_candidate_actions(const HeapState& hs,
                                           const Typing& typing);

ActionTraceSet heap_traces(const HeapState& hs, const Typing& typing,
                           std::size_t depth);

// Intersection of heap_traces over the set; throws EMPTY_SET on empty input.
ActionTraceSet heapset_traces(const std::vector<HeapState>& hs_set,
                              const Typing& typing, std::size_t depth);

void to_json(nlohmann::json& j, const Place& p);
void to_json(nlohmann::json& j, const Chunk& c);
void from_json(const nlohmann::json& j, Chunk& c);
void to_json(nlohmann::json& j, const Heap& h);
void to_json(nlohmann::json& j, const HeapState& hs);

}  // namespace igloo

#endif  // IGLOO_HEAP_HEAP_H_
