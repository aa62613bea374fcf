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

#ifndef IGLOO_MONITOR_MONITOR_H_
#define IGLOO_MONITOR_MONITOR_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/monitor/heap_tracker.h"
#include "igloo/process/io_guarded.h"
#include "igloo/value.h"

namespace igloo {

enum class Backend { kEventSystem, kHeap };
enum class MonitorMode { kStrict, kAudit };

enum class DenyReason { kNone, kNoEnabledGuard, kIllTypedInput, kNoPermissionAtToken };

struct Verdict {
  DenyReason reason = DenyReason::kNone;

  static Verdict Permit() { return {}; }
  static Verdict Deny(DenyReason r) { return {r}; }
  bool permitted() const { return reason == DenyReason::kNone; }
  std::string to_string() const;

  bool operator==(const Verdict&) const = default;
};

const char* backend_name(Backend b);

struct MonitorRecord {
  std::size_t seq = 0;
  std::string kind;  // request | commit | ghost
  Action action;     // input is unit for requests
  Verdict verdict;
  std::uint64_t state_hash = 0;
};

void to_json(nlohmann::json& j, const MonitorRecord& r);

struct ObservedAction {
  Action action;
  bool ghost = false;
};

// Checks a component's I/O calls against its I/O-guarded specification.
// Outputs are checked before the call (request_output) and the observed
// input is checked when the call returns (commit). The event-system backend
// evaluates guards on the model state; the heap backend pushes a token
// through the canonical heap of the component's process.
template <class S>
class Monitor {
 public:
  // Throws GUARD_DEPENDS_ON_INPUT if a guard at the initial state depends on
  // its input.
  Monitor(IOGuardedES<S> ges, Backend backend,
          MonitorMode mode = MonitorMode::kStrict)
      : ges_(std::move(ges)), backend_(backend), mode_(mode),
        state_(ges_.initial()) {
    ges_.enabled_outputs(state_);
    if (backend_ == Backend::kHeap) {
      tracker_.emplace(proc_of_ges(ges_, state_), ges_.typing());
    }
  }

  Backend backend() const { return backend_; }
  MonitorMode mode() const { return mode_; }
  const IOGuardedES<S>& model() const { return ges_; }

  Verdict request_output(const std::string& bio, const Value& out) {
    Verdict v = check_output(bio, out);
    record("request", Action{bio, out, Value()}, v);
    return v;
  }

  Verdict commit(const std::string& bio, const Value& out, const Value& in) {
    return commit_action(Action{bio, out, in}, false);
  }

  // Ghost operations read unit. Throws std::invalid_argument if bio is not
  // a ghost operation.
  Verdict commit_ghost(const std::string& bio, const Value& out) {
    if (!ges_.is_ghost(bio)) {
      throw std::invalid_argument(bio + " is not a ghost operation");
    }
    return commit_action(Action{bio, out, Value()}, true);
  }

  ActionTrace observed_trace(bool include_ghost) const {
    ActionTrace out;
    for (const auto& o : observed_) {
      if (include_ghost || !o.ghost) out.push_back(o.action);
    }
    return out;
  }
  const std::vector<ObservedAction>& observed() const { return observed_; }

  // (bio, out) pairs the backend would permit now.
  std::vector<std::pair<std::string, Value>> enabled_outputs() const {
    if (tracker_) return tracker_->permitted_outputs();
    return ges_.enabled_outputs(state_);
  }

  // Model state; advanced by permitted commits in both backends.
  const S& state() const { return state_; }
  const std::optional<HeapTracker>& tracker() const { return tracker_; }

  std::uint64_t state_hash() const {
    if (tracker_) {
      const nlohmann::json j = tracker_->heap();
      return fnv1a(j.dump());
    }
    const nlohmann::json j = state_;
    return fnv1a(j.dump());
  }

  bool halted() const { return halted_; }
  std::size_t violations() const { return violations_; }
  const std::vector<MonitorRecord>& log() const { return log_; }

  void write_log(std::ostream& os) const {
    for (const auto& r : log_) os << nlohmann::json(r).dump() << '\n';
  }

 private:
  Verdict check_output(const std::string& bio, const Value& out) const {
    if (tracker_) {
      return tracker_->has_permission(bio, out)
                 ? Verdict::Permit()
                 : Verdict::Deny(DenyReason::kNoPermissionAtToken);
    }
    return ges_.enabled(state_, bio, out)
               ? Verdict::Permit()
               : Verdict::Deny(DenyReason::kNoEnabledGuard);
  }

  Verdict commit_action(const Action& a, bool ghost) {
    Verdict v = check_output(a.bio, a.out);
    if (v.permitted() && !ges_.typing().well_typed(a)) {
      v = Verdict::Deny(DenyReason::kIllTypedInput);
    }
    if (v.permitted() && tracker_ &&
        tracker_->commit(a) != HeapTracker::Outcome::kOk) {
      throw std::logic_error("heap tracker rejected a checked action");
    }
    if (v.permitted()) {
      state_ = ges_.apply(state_, a);
      observed_.push_back({a, ghost});
    } else {
      ++violations_;
      if (mode_ == MonitorMode::kStrict) halted_ = true;
    }
    record(ghost ? "ghost" : "commit", a, v);
    return v;
  }

  void record(const std::string& kind, const Action& a, const Verdict& v) {
    log_.push_back({log_.size(), kind, a, v, state_hash()});
  }

  IOGuardedES<S> ges_;
  Backend backend_;
  MonitorMode mode_;
  S state_;
  std::optional<HeapTracker> tracker_;
  std::vector<ObservedAction> observed_;
  std::vector<MonitorRecord> log_;
  std::size_t violations_ = 0;
  bool halted_ = false;
};

struct BackendComparison {
  std::size_t steps = 0;
  std::size_t decisions = 0;
  std::size_t permits = 0;
  std::size_t disagreements = 0;
  std::optional<nlohmann::json> first_disagreement;
};

// Drives an event-system monitor and a heap monitor with the same random
// requests and commits, and counts decisions on which they differ. Both run
// in audit mode. Candidate inputs include ill-typed ones from `extra_inputs`.
template <class S>
BackendComparison compare_backends(const IOGuardedES<S>& ges, std::size_t steps,
                                   std::uint64_t seed,
                                   const std::vector<Value>& extra_inputs = {}) {
  Monitor<S> es(ges, Backend::kEventSystem, MonitorMode::kAudit);
  Monitor<S> heap(ges, Backend::kHeap, MonitorMode::kAudit);
  std::mt19937_64 rng(seed);
  const Typing& typing = ges.typing();
  std::vector<std::pair<std::string, Value>> all_outputs;
  for (const auto& bio : typing.bios()) {
    for (const auto& v : typing.outputs(bio)) all_outputs.emplace_back(bio, v);
  }
  BackendComparison cmp;
  auto compare = [&](const char* what, const Action& a, const Verdict& x,
                     const Verdict& y) {
    ++cmp.decisions;
    cmp.permits += x.permitted();
    if (x.permitted() == y.permitted()) return;
    ++cmp.disagreements;
    if (!cmp.first_disagreement) {
      cmp.first_disagreement = nlohmann::json{
          {"step", cmp.steps}, {"kind", what}, {"action", a},
          {"event_system", x.to_string()}, {"heap", y.to_string()}};
    }
  };
  for (; cmp.steps < steps; ++cmp.steps) {
    const auto enabled = es.enabled_outputs();
    if (enabled != heap.enabled_outputs()) {
      compare("enabled", Action{}, Verdict::Permit(),
              Verdict::Deny(DenyReason::kNoPermissionAtToken));
    }
    const bool pick_enabled = !enabled.empty() && rng() % 4 != 0;
    const auto& [bio, out] = pick_enabled ? enabled[rng() % enabled.size()]
                                          : all_outputs[rng() % all_outputs.size()];
    const Action probe{bio, out, Value()};
    compare("request", probe, es.request_output(bio, out),
            heap.request_output(bio, out));
    if (ges.is_ghost(bio)) {
      compare("ghost", probe, es.commit_ghost(bio, out), heap.commit_ghost(bio, out));
      continue;
    }
    std::vector<Value> inputs = typing.ty(bio, out);
    inputs.insert(inputs.end(), extra_inputs.begin(), extra_inputs.end());
    const Value in = inputs[rng() % inputs.size()];
    compare("commit", Action{bio, out, in}, es.commit(bio, out, in),
            heap.commit(bio, out, in));
  }
  return cmp;
}

}  // namespace igloo

#endif  // IGLOO_MONITOR_MONITOR_H_
