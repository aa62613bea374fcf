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

#ifndef IGLOO_SIMNET_NODE_H_
#define IGLOO_SIMNET_NODE_H_

#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/monitor/monitor.h"
#include "igloo/process/io_guarded.h"
#include "igloo/process/typing.h"
#include "igloo/value.h"

namespace igloo {

// An I/O operation a program wants to perform next. Inputs are supplied by
// the simulator when the operation returns.
struct IoRequest {
  std::string bio;
  Value out;
};

// What a program is woken up with.
struct InboxEvent {
  enum class Kind {
    kStart,    // first activation
    kTick,     // no queued requests and nothing else to report
    kInput,    // a receive returned `in`
    kTimeout,  // a receive returned nothing
    kSuspect,  // the failure detector reports node `suspect` crashed
  };
  Kind kind = Kind::kTick;
  Value out;  // output of the receive for kInput and kTimeout
  Value in;
  int suspect = -1;
};

template <class L>
struct StepResult {
  L state;
  std::vector<IoRequest> requests;  // empty: the program idles until woken
};

// A hand-written implementation-level state machine. Each activation maps
// the local state and one inbox event to a new state and the I/O requests
// to perform, in order.
template <class L>
struct NodeProgram {
  std::string name;
  L initial;
  std::function<StepResult<L>(const L&, const InboxEvent&)> step;
};

// A program bound to its monitor, with the local state hidden.
class SimNode {
 public:
  SimNode(int id, Value index) : id_(id), index_(std::move(index)) {}
  virtual ~SimNode() = default;
  SimNode(const SimNode&) = delete;
  SimNode& operator=(const SimNode&) = delete;

  int id() const { return id_; }
  const Value& index() const { return index_; }

  virtual const std::string& program_name() const = 0;
  virtual Verdict request_output(const std::string& bio, const Value& out) = 0;
  virtual Verdict commit(const Action& a) = 0;
  virtual bool is_ghost(const std::string& bio) const = 0;
  // Whether `in` is a declared input of bio(out).
  virtual bool accepts_input(const std::string& bio, const Value& out,
                             const Value& in) const = 0;
  virtual std::vector<IoRequest> activate(const InboxEvent& ev) = 0;
  virtual ActionTrace observed_trace() const = 0;
  virtual std::size_t violations() const = 0;
  virtual nlohmann::json model_state() const = 0;

 private:
  int id_;
  Value index_;
};

template <class S, class L>
class MonitoredNode final : public SimNode {
 public:
  MonitoredNode(int id, Value index, IOGuardedES<S> model, NodeProgram<L> program,
                Backend backend, MonitorMode mode)
      : SimNode(id, std::move(index)),
        monitor_(std::move(model), backend, mode),
        program_(std::move(program)),
        local_(program_.initial) {}

  const std::string& program_name() const override { return program_.name; }

  Verdict request_output(const std::string& bio, const Value& out) override {
    return monitor_.request_output(bio, out);
  }

  Verdict commit(const Action& a) override {
    return is_ghost(a.bio) ? monitor_.commit_ghost(a.bio, a.out)
                           : monitor_.commit(a.bio, a.out, a.in);
  }

  bool is_ghost(const std::string& bio) const override {
    return monitor_.model().is_ghost(bio);
  }

  bool accepts_input(const std::string& bio, const Value& out,
                     const Value& in) const override {
    return monitor_.model().typing().well_typed(Action{bio, out, in});
  }

  std::vector<IoRequest> activate(const InboxEvent& ev) override {
    auto r = program_.step(local_, ev);
    local_ = std::move(r.state);
    return std::move(r.requests);
  }

  ActionTrace observed_trace() const override { return monitor_.observed_trace(true); }
  std::size_t violations() const override { return monitor_.violations(); }
  nlohmann::json model_state() const override { return monitor_.state(); }

  const Monitor<S>& monitor() const { return monitor_; }
  const L& local() const { return local_; }

 private:
  Monitor<S> monitor_;
  NodeProgram<L> program_;
  L local_;
};

}  // namespace igloo

#endif  // IGLOO_SIMNET_NODE_H_
