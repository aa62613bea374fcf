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

#ifndef IGLOO_MONITOR_HEAP_TRACKER_H_
#define IGLOO_MONITOR_HEAP_TRACKER_H_

#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "igloo/heap/heap.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

// Follows a process through its canonical heap model one step at a time.
// Only the token and the permissions sourced at it are materialized; inputs
// of those permissions come from a schedule that is extended online with
// every committed input, so a permitted commit never contradicts its
// permission. Places are kept relative to the token place, which is
// therefore always the root.
class HeapTracker {
 public:
  enum class Outcome { kOk, kNoPermission, kIllTyped };

  HeapTracker(Process p, Typing typing);

  bool has_permission(const std::string& bio, const Value& out) const;
  // (bio, out) pairs with a permission at the token, sorted.
  std::vector<std::pair<std::string, Value>> permitted_outputs() const;

  // Pushes the token through the permission for a. Leaves the tracker
  // unchanged unless the outcome is kOk.
  Outcome commit(const Action& a);

  const HeapState& heap() const { return heap_; }
  const ActionTrace& trace() const { return trace_; }
  // Length of the absolute token place in the canonical model.
  std::size_t token_depth() const { return token_depth_; }
  const std::map<std::tuple<ActionTrace, std::string, Value>, Value>& schedule()
      const {
    return schedule_;
  }

 private:
  struct Slot {
    Process prefix;
    Place target;
  };

  void materialize();

  Process current_;
  Typing typing_;
  ActionTrace trace_;
  std::map<std::tuple<ActionTrace, std::string, Value>, Value> schedule_;
  std::vector<Slot> slots_;
  HeapState heap_;
  std::size_t token_depth_ = 0;
};

}  // namespace igloo

#endif  // IGLOO_MONITOR_HEAP_TRACKER_H_
