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

#ifndef IGLOO_PROCESS_PROCESS_H_
#define IGLOO_PROCESS_PROCESS_H_

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "igloo/process/typing.h"
#include "igloo/value.h"

namespace igloo {

// A process term: Inactive, an I/O prefix binding its input in a lazily
// evaluated continuation, or a binary choice. Continuation results are
// memoized per input.
class Process {
 public:
  enum class Kind { kInactive, kPrefix, kChoice };
  using Continuation = std::function<Process(const Value&)>;

  Process();  // Inactive
  static Process Inactive() { return Process(); }
  static Process Prefix(std::string bio, Value out, Continuation k);
  static Process Choice(Process left, Process right);

  Kind kind() const;
  bool is_inactive() const { return kind() == Kind::kInactive; }
  // Prefix accessors.
  const std::string& bio() const;
  const Value& output() const;
  Process continue_with(const Value& in) const;
  // Choice accessors.
  const Process& left() const;
  const Process& right() const;

  // Node identity; equal ids denote the same term.
  const void* id() const { return node_.get(); }

 private:
  struct Node;
  explicit Process(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct ProcessStep {
  Action action;
  Process next;
};

std::vector<ProcessStep> process_successors(const Process& p,
                                            const Typing& typing);

// Right fold of Choice over values in order, with Inactive as the seed.
Process finite_choice(const std::vector<Value>& values,
                      const std::function<Process(const Value&)>& body);

ActionTraceSet enumerate_process_traces(const Process& p, const Typing& typing,
                                        std::size_t depth);

// True iff the process has no reachable prefix (Inactive, or a choice tree
// of Inactive leaves).
bool is_dead(const Process& p);

}  // namespace igloo

#endif  // IGLOO_PROCESS_PROCESS_H_
