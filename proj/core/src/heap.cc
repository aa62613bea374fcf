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

#include "igloo/heap/heap.h"

#include <algorithm>
#include <iterator>
#include <stdexcept>

#include "igloo/error.h"

namespace igloo {

Place::Place(std::string path) : path_(std::move(path)) {
  for (char c : path_) {
    if (c != 'L' && c != 'R') {
      throw std::invalid_argument("place must be a string over L/R: " + path_);
    }
  }
}

Place Place::child(char dir) const {
  Place out = *this;
  out.path_.push_back(dir == 'R' ? 'R' : 'L');
  return out;
}

bool Place::is_prefix_of(const Place& other) const {
  return other.path_.compare(0, path_.size(), path_) == 0 &&
         path_.size() <= other.path_.size();
}

std::string Place::to_string() const { return path_.empty() ? "<>" : path_; }

Chunk Chunk::Token(Place at) {
  Chunk c;
  c.v_ = std::move(at);
  return c;
}

Chunk Chunk::Perm(std::string bio, Place source, Value out, Value in,
                  Place target) {
  Chunk c;
  c.v_ = Permission{std::move(bio), std::move(source), std::move(out),
                    std::move(in), std::move(target)};
  return c;
}

bool Chunk::well_typed(const Typing& typing) const {
  if (is_token()) return true;
  const auto& p = permission();
  return typing.well_typed(Action{p.bio, p.out, p.in});
}

std::string Chunk::to_string() const {
  if (is_token()) return "token(" + token_place().to_string() + ")";
  const auto& p = permission();
  return p.bio + "(" + p.source.to_string() + ", " + p.out.to_string() + ", " +
         p.in.to_string() + ", " + p.target.to_string() + ")";
}

Heap::Heap(std::initializer_list<Chunk> chunks) {
  for (const auto& c : chunks) add(c);
}

void Heap::add(const Chunk& c, std::size_t n) {
  if (n == 0) return;
  counts_[c] += n;
  size_ += n;
}

bool Heap::remove(const Chunk& c) {
  auto it = counts_.find(c);
  if (it == counts_.end()) return false;
  if (--it->second == 0) counts_.erase(it);
  --size_;
  return true;
}

std::size_t Heap::count(const Chunk& c) const {
  auto it = counts_.find(c);
  return it == counts_.end() ? 0 : it->second;
}

std::size_t Heap::token_count() const {
  std::size_t n = 0;
  for (const auto& [c, k] : counts_) {
    if (c.is_token()) n += k;
  }
  return n;
}

std::size_t Heap::permission_count() const { return size_ - token_count(); }

std::set<Place> Heap::places() const {
  std::set<Place> out;
  for (const auto& [c, k] : counts_) {
    if (c.is_token()) {
      out.insert(c.token_place());
    } else {
      out.insert(c.permission().source);
      out.insert(c.permission().target);
    }
  }
  return out;
}

Place Heap::fresh_place() const {
  const auto used = places();
  for (std::size_t len = 0;; ++len) {
    for (std::size_t bits = 0; bits < (std::size_t{1} << len); ++bits) {
      std::string path;
      for (std::size_t i = 0; i < len; ++i) {
        path.push_back((bits >> (len - 1 - i)) & 1 ? 'R' : 'L');
      }
      Place p(path);
      if (!used.count(p)) return p;
    }
  }
}

Heap Heap::operator+(const Heap& other) const {
  Heap out = *this;
  for (const auto& [c, k] : other.counts_) out.add(c, k);
  return out;
}

bool Heap::includes(const Heap& other) const {
  for (const auto& [c, k] : other.counts_) {
    if (count(c) < k) return false;
  }
  return true;
}

std::string Heap::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [c, k] : counts_) {
    for (std::size_t i = 0; i < k; ++i) {
      if (!first) out += ", ";
      first = false;
      out += c.to_string();
    }
  }
  return out + "}";
}

std::string HeapState::to_string() const {
  return is_bottom() ? "bottom" : heap().to_string();
}

std::set<HeapState> heap_step(const HeapState& hs, const Action& a,
                              const Typing& typing) {
  std::set<HeapState> out;
  const bool action_typed = typing.well_typed(a);
  if (hs.is_bottom()) {
    if (action_typed) out.insert(HeapState::Bottom());
    return out;
  }
  if (!action_typed) return out;
  const Heap& h = hs.heap();
  for (const auto& [tok, tcount] : h.counts()) {
    if (!tok.is_token()) continue;
    const Place& t = tok.token_place();
    for (const auto& [c, ccount] : h.counts()) {
      if (!c.is_permission()) continue;
      const auto& p = c.permission();
      if (p.source != t || p.bio != a.bio || p.out != a.out) continue;
      if (p.in == a.in) {
        Heap next = h;
        next.remove(tok);
        next.remove(c);
        next.add(Chunk::Token(p.target));
        out.insert(std::move(next));
      } else if (c.well_typed(typing)) {
        out.insert(HeapState::Bottom());
      }
    }
  }
  return out;
}

std::set<HeapState> heap_execute(const HeapState& hs, const ActionTrace& t,
                                 const Typing& typing) {
  std::set<HeapState> current{hs};
  for (const auto& a : t) {
    std::set<HeapState> next;
    for (const auto& s : current) {
      auto succ = heap_step(s, a, typing);
      next.insert(succ.begin(), succ.end());
    }
    current = std::move(next);
    if (current.empty()) break;
  }
  return current;
}

std::vector<Action> heap_candidate_actions(const HeapState& hs,
                                           const Typing& typing) {
  if (hs.is_bottom()) return typing.all_actions();
  std::set<Action> out;
  const Heap& h = hs.heap();
  for (const auto& [tok, tcount] : h.counts()) {
    if (!tok.is_token()) continue;
    for (const auto& [c, ccount] : h.counts()) {
      if (!c.is_permission()) continue;
      const auto& p = c.permission();
      if (p.source != tok.token_place() || !typing.declares(p.bio)) continue;
      for (const auto& w : typing.ty(p.bio, p.out)) {
        out.insert(Action{p.bio, p.out, w});
      }
    }
  }
  return {out.begin(), out.end()};
}

ActionTraceSet heap_traces(const HeapState& hs, const Typing& typing,
                           std::size_t depth) {
  ActionTraceSet out;
  std::map<ActionTrace, std::set<HeapState>> level;
  level[ActionTrace{}].insert(hs);
  for (std::size_t d = 0;; ++d) {
    for (const auto& [t, states] : level) out.insert(t);
    if (d == depth) break;
    std::map<ActionTrace, std::set<HeapState>> next;
    for (const auto& [t, states] : level) {
      for (const auto& s : states) {
        for (const auto& a : heap_candidate_actions(s, typing)) {
          auto succ = heap_step(s, a, typing);
          if (succ.empty()) continue;
          ActionTrace ext = t;
          ext.push_back(a);
          next[std::move(ext)].insert(succ.begin(), succ.end());
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

ActionTraceSet heapset_traces(const std::vector<HeapState>& hs_set,
                              const Typing& typing, std::size_t depth) {
  if (hs_set.empty()) {
    throw Error(ErrorCode::kEmptySet, "heapset_traces over an empty set");
  }
  ActionTraceSet acc = heap_traces(hs_set.front(), typing, depth);
  for (std::size_t i = 1; i < hs_set.size(); ++i) {
    const auto next = heap_traces(hs_set[i], typing, depth);
    ActionTraceSet both;
    std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(),
                          std::inserter(both, both.begin()));
    acc = std::move(both);
  }
  return acc;
}

void to_json(nlohmann::json& j, const Place& p) { j = p.path(); }

void to_json(nlohmann::json& j, const Chunk& c) {
  if (c.is_token()) {
    j = nlohmann::json{{"kind", "token"}, {"at", c.token_place()}};
    return;
  }
  const auto& p = c.permission();
  j = nlohmann::json{{"kind", "perm"}, {"bio", p.bio},  {"source", p.source},
                     {"out", p.out},   {"in", p.in},    {"target", p.target}};
}

void from_json(const nlohmann::json& j, Chunk& c) {
  if (j.at("kind") == "token") {
    c = Chunk::Token(Place(j.at("at").get<std::string>()));
    return;
  }
  c = Chunk::Perm(j.at("bio").get<std::string>(),
                  Place(j.at("source").get<std::string>()),
                  j.at("out").get<Value>(), j.at("in").get<Value>(),
                  Place(j.at("target").get<std::string>()));
}

void to_json(nlohmann::json& j, const Heap& h) {
  j = nlohmann::json::array();
  for (const auto& [c, k] : h.counts()) {
    for (std::size_t i = 0; i < k; ++i) j.push_back(c);
  }
}

void to_json(nlohmann::json& j, const HeapState& hs) {
  if (hs.is_bottom()) {
    j = "bottom";
  } else {
    j = hs.heap();
  }
}

}  // namespace igloo
