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

#include "igloo/monitor/heap_tracker.h"

#include <algorithm>
#include <stdexcept>

namespace igloo {

HeapTracker::HeapTracker(Process p, Typing typing)
    : current_(std::move(p)), typing_(std::move(typing)) {
  materialize();
}

void HeapTracker::materialize() {
  slots_.clear();
  Heap h{Chunk::Token(Place())};
  std::vector<std::pair<Process, Place>> stack{{current_, Place()}};
  while (!stack.empty()) {
    auto [p, pos] = std::move(stack.back());
    stack.pop_back();
    if (p.kind() == Process::Kind::kChoice) {
      stack.emplace_back(p.right(), pos.right());
      stack.emplace_back(p.left(), pos.left());
    } else if (p.kind() == Process::Kind::kPrefix) {
      if (!typing_.declares(p.bio())) continue;
      const Place target = pos.left();
      auto it = schedule_.find({trace_, p.bio(), p.output()});
      const Value w = it != schedule_.end() ? it->second
                                            : typing_.pick(p.bio(), p.output());
      h.add(Chunk::Perm(p.bio(), Place(), p.output(), w, target));
      slots_.push_back({p, target});
    }
  }
  heap_ = std::move(h);
}

bool HeapTracker::has_permission(const std::string& bio, const Value& out) const {
  return std::any_of(slots_.begin(), slots_.end(), [&](const Slot& s) {
    return s.prefix.bio() == bio && s.prefix.output() == out;
  });
}

std::vector<std::pair<std::string, Value>> HeapTracker::permitted_outputs() const {
  std::vector<std::pair<std::string, Value>> out;
  for (const auto& s : slots_) out.emplace_back(s.prefix.bio(), s.prefix.output());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HeapTracker::Outcome HeapTracker::commit(const Action& a) {
  if (!has_permission(a.bio, a.out)) return Outcome::kNoPermission;
  if (!typing_.well_typed(a)) return Outcome::kIllTyped;
  schedule_[{trace_, a.bio, a.out}] = a.in;
  materialize();
  const auto successors = heap_step(heap_, a, typing_);
  const HeapState* next = nullptr;
  for (const auto& hs : successors) {
    if (!hs.is_bottom()) {
      next = &hs;
      break;
    }
  }
  if (next == nullptr) {
    throw std::logic_error("scheduled input contradicted at " + a.to_string());
  }
  Place token;
  for (const auto& [c, n] : next->heap().counts()) {
    if (c.is_token()) token = c.token_place();
  }
  for (const auto& s : slots_) {
    if (s.target != token) continue;
    current_ = s.prefix.continue_with(a.in);
    token_depth_ += token.size();
    trace_.push_back(a);
    materialize();
    return Outcome::kOk;
  }
  throw std::logic_error("token moved to an unknown place");
}

}  // namespace igloo
