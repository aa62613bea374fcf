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

#include "igloo/process/process.h"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "igloo/process/typing.h"

namespace igloo {

struct Process::Node {
  Kind kind = Kind::kInactive;
  std::string bio;
  Value out;
  Continuation k;
  Process left;
  Process right;
  mutable std::mutex mu;
  mutable std::map<Value, Process> memo;

  explicit Node(Kind kd) : kind(kd) {}
};

Process::Process() : node_(nullptr) {}

Process Process::Prefix(std::string bio, Value out, Continuation k) {
  auto node = std::make_shared<Node>(Kind::kPrefix);
  node->bio = std::move(bio);
  node->out = std::move(out);
  node->k = std::move(k);
  return Process(std::move(node));
}

Process Process::Choice(Process left, Process right) {
  auto node = std::make_shared<Node>(Kind::kChoice);
  node->left = std::move(left);
  node->right = std::move(right);
  return Process(std::move(node));
}

Process::Kind Process::kind() const {
  return node_ ? node_->kind : Kind::kInactive;
}

const std::string& Process::bio() const {
  if (kind() != Kind::kPrefix) throw std::logic_error("not a prefix");
  return node_->bio;
}

const Value& Process::output() const {
  if (kind() != Kind::kPrefix) throw std::logic_error("not a prefix");
  return node_->out;
}

Process Process::continue_with(const Value& in) const {
  if (kind() != Kind::kPrefix) throw std::logic_error("not a prefix");
  {
    std::lock_guard<std::mutex> lock(node_->mu);
    auto it = node_->memo.find(in);
    if (it != node_->memo.end()) return it->second;
  }
  Process next = node_->k(in);
  std::lock_guard<std::mutex> lock(node_->mu);
  return node_->memo.emplace(in, std::move(next)).first->second;
}

const Process& Process::left() const {
  if (kind() != Kind::kChoice) throw std::logic_error("not a choice");
  return node_->left;
}

const Process& Process::right() const {
  if (kind() != Kind::kChoice) throw std::logic_error("not a choice");
  return node_->right;
}

namespace {

void collect_successors(const Process& p, const Typing& typing,
                        std::vector<ProcessStep>& out) {
  switch (p.kind()) {
    case Process::Kind::kInactive:
      return;
    case Process::Kind::kPrefix:
      for (const auto& w : typing.ty(p.bio(), p.output())) {
        out.push_back({Action{p.bio(), p.output(), w}, p.continue_with(w)});
      }
      return;
    case Process::Kind::kChoice:
      collect_successors(p.left(), typing, out);
      collect_successors(p.right(), typing, out);
      return;
  }
}

}  // namespace

std::vector<ProcessStep> process_successors(const Process& p,
                                            const Typing& typing) {
  std::vector<ProcessStep> out;
  collect_successors(p, typing, out);
  return out;
}

Process finite_choice(const std::vector<Value>& values,
                      const std::function<Process(const Value&)>& body) {
  std::vector<Value> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  Process acc = Process::Inactive();
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    acc = Process::Choice(body(*it), std::move(acc));
  }
  return acc;
}

ActionTraceSet enumerate_process_traces(const Process& p, const Typing& typing,
                                        std::size_t depth) {
  ActionTraceSet out;
  std::map<ActionTrace, std::vector<Process>> level;
  level[ActionTrace{}].push_back(p);
  for (std::size_t d = 0;; ++d) {
    for (const auto& [t, procs] : level) out.insert(t);
    if (d == depth) break;
    std::map<ActionTrace, std::vector<Process>> next;
    std::map<ActionTrace, std::set<const void*>> seen;
    for (const auto& [t, procs] : level) {
      for (const auto& q : procs) {
        for (auto& st : process_successors(q, typing)) {
          ActionTrace ext = t;
          ext.push_back(st.action);
          if (seen[ext].insert(st.next.id()).second) {
            next[ext].push_back(std::move(st.next));
          }
        }
      }
    }
    if (next.empty()) break;
    level = std::move(next);
  }
  return out;
}

bool is_dead(const Process& p) {
  switch (p.kind()) {
    case Process::Kind::kInactive:
      return true;
    case Process::Kind::kPrefix:
      return false;
    case Process::Kind::kChoice:
      return is_dead(p.left()) && is_dead(p.right());
  }
  return true;
}

}  // namespace igloo
