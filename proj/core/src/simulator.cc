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

#include "igloo/simnet/simulator.h"

#include <deque>
#include <random>

#include "igloo/error.h"

namespace igloo {

void to_json(nlohmann::json& j, const FaultPlan& f) {
  j = nlohmann::json{{"crashes", nlohmann::json::array()},
                     {"max_detect_delay", f.max_detect_delay}};
  for (const auto& c : f.crashes) j["crashes"].push_back({{"node", c.node}, {"step", c.step}});
  if (!f.detect_delay.empty()) {
    auto& d = j["detect_delay"];
    for (const auto& [node, delay] : f.detect_delay) d[std::to_string(node)] = delay;
  }
}

FaultPlan fault_plan_from_json(const nlohmann::json& j) {
  FaultPlan f;
  try {
    if (j.contains("crashes")) {
      for (const auto& c : j.at("crashes")) {
        f.crashes.push_back({c.at("node").get<int>(), c.at("step").get<std::size_t>()});
      }
    }
    if (j.contains("max_detect_delay")) {
      f.max_detect_delay = j.at("max_detect_delay").get<std::size_t>();
    }
    if (j.contains("detect_delay")) {
      for (const auto& [node, delay] : j.at("detect_delay").items()) {
        f.detect_delay[std::stoi(node)] = delay.get<std::size_t>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfig, std::string("fault plan: ") + e.what());
  }
  return f;
}

const char* stop_reason_name(StopReason r) {
  switch (r) {
    case StopReason::kQuiescent:
      return "QUIESCENT";
    case StopReason::kStepLimit:
      return "STEP_LIMIT";
    case StopReason::kMonitorViolation:
      return "MONITOR_VIOLATION";
  }
  return "?";
}

bool SimResult::globals_hold() const {
  for (const auto& g : globals) {
    if (!g.holds) return false;
  }
  return true;
}

nlohmann::json SimResult::summary() const {
  nlohmann::json j{{"steps", steps},
                   {"stop", stop_reason_name(stop)},
                   {"violations", monitor_violations},
                   {"log_records", log.size()}};
  for (const auto& [k, v] : counts) j[k] = v;
  for (const char* key : {"elects", "replies"}) {
    if (!j.contains(key)) j[key] = 0;
  }
  auto& g = j["globals"];
  g = nlohmann::json::object();
  for (const auto& v : globals) {
    nlohmann::json e{{"holds", v.holds}};
    if (v.first_violation_step) e["first_violation_step"] = *v.first_violation_step;
    g[v.name] = e;
  }
  if (violation) {
    j["violation"] = {{"step", violation->step},
                      {"node", violation->node},
                      {"index", violation->index},
                      {"action", violation->action},
                      {"reason", violation->reason}};
  }
  return j;
}

nlohmann::json to_json_report(const ReplayVerdict& v) {
  nlohmann::json j{{"status", status_name(v.status)}, {"events_replayed", v.events_replayed}};
  if (v.stuck_at) j["stuck_at"] = *v.stuck_at;
  if (v.stuck_event) j["stuck_event"] = *v.stuck_event;
  return j;
}

namespace {

struct Notice {
  std::size_t due = 0;
  int subject = -1;
};

struct Runtime {
  bool started = false;
  bool idle = false;
  std::deque<IoRequest> queue;
  std::deque<Notice> notices;  // sorted by due step

  bool notice_due(std::size_t step) const {
    return !notices.empty() && notices.front().due <= step;
  }
};

class Scheduler {
 public:
  Scheduler(SimSetup& setup, const FaultPlan& faults, std::uint64_t seed, bool strict)
      : setup_(setup),
        faults_(faults),
        rng_(seed),
        runtime_(setup.nodes.size()),
        strict_(strict) {
    for (std::size_t i = 0; i < setup_.nodes.size(); ++i) {
      by_id_[setup_.nodes[i]->id()] = i;
    }
    for (const auto& c : faults_.crashes) {
      if (!by_id_.count(c.node)) {
        throw Error(ErrorCode::kConfig, "crash of unknown node " + std::to_string(c.node));
      }
    }
    for (const auto& name : setup_.global_checks) result_.globals.push_back({name, true, {}});
  }

  SimResult run(std::size_t max_steps) {
    result_.stop = StopReason::kStepLimit;
    for (step_ = 0; step_ < max_steps; ++step_) {
      apply_crashes();
      std::vector<std::size_t> runnable;
      for (std::size_t i = 0; i < runtime_.size(); ++i) {
        if (is_runnable(i)) runnable.push_back(i);
      }
      if (runnable.empty()) {
        if (!pending_future()) {
          result_.stop = StopReason::kQuiescent;
          break;
        }
        continue;
      }
      const std::size_t pick = runnable[index_draw(rng_, runnable.size())];
      const std::size_t mark = result_.log.size();
      if (!activate(pick)) {
        result_.stop = StopReason::kMonitorViolation;
        ++step_;
        break;
      }
      observe(mark);
    }
    result_.steps = step_;
    if (setup_.finish) setup_.finish(result_);
    return std::move(result_);
  }

 private:
  bool is_runnable(std::size_t i) const {
    if (crashed_.count(setup_.nodes[i]->id())) return false;
    const Runtime& rt = runtime_[i];
    return !rt.started || !rt.queue.empty() || rt.notice_due(step_) || !rt.idle;
  }

  bool pending_future() const {
    for (const auto& c : faults_.crashes) {
      if (c.step > step_ && !crashed_.count(c.node)) return true;
    }
    for (std::size_t i = 0; i < runtime_.size(); ++i) {
      if (!crashed_.count(setup_.nodes[i]->id()) && !runtime_[i].notices.empty()) return true;
    }
    return false;
  }

  void apply_crashes() {
    for (const auto& c : faults_.crashes) {
      if (c.step != step_ || crashed_.count(c.node)) continue;
      crashed_.insert(c.node);
      LogRecord r;
      r.step = step_;
      r.kind = RecordKind::kCrash;
      r.subject = c.node;
      const std::size_t mark = result_.log.size();
      result_.log.append(std::move(r));
      for (std::size_t i = 0; i < runtime_.size(); ++i) {
        const int observer = setup_.nodes[i]->id();
        if (crashed_.count(observer)) continue;
        auto it = faults_.detect_delay.find(observer);
        const std::size_t delay =
            it != faults_.detect_delay.end()
                ? it->second
                : index_draw(rng_, faults_.max_detect_delay + 1);
        auto& notices = runtime_[i].notices;
        Notice n{step_ + delay, c.node};
        auto pos = notices.begin();
        while (pos != notices.end() && pos->due <= n.due) ++pos;
        notices.insert(pos, n);
      }
      observe(mark);
    }
  }

  void enqueue(std::size_t i, std::vector<IoRequest> reqs) {
    Runtime& rt = runtime_[i];
    rt.idle = reqs.empty() && rt.queue.empty();
    for (auto& r : reqs) rt.queue.push_back(std::move(r));
  }

  LogRecord record(std::size_t i, RecordKind kind) const {
    LogRecord r;
    r.step = step_;
    r.kind = kind;
    r.node = setup_.nodes[i]->id();
    r.index = setup_.nodes[i]->index();
    return r;
  }

  // Returns false if the run must stop.
  bool activate(std::size_t i) {
    SimNode& node = *setup_.nodes[i];
    Runtime& rt = runtime_[i];
    if (!rt.started) {
      rt.started = true;
      enqueue(i, node.activate({InboxEvent::Kind::kStart, {}, {}, -1}));
      return true;
    }
    // Notices interrupt a program at its next poll point: a due notice
    // replaces a queued receive that has not been performed yet.
    const bool at_poll = rt.queue.empty() || rt.queue.front().bio == "receive";
    if (rt.notice_due(step_) && at_poll) {
      if (!rt.queue.empty()) rt.queue.pop_front();
      const Notice n = rt.notices.front();
      rt.notices.pop_front();
      LogRecord r = record(i, RecordKind::kNotice);
      r.subject = n.subject;
      result_.log.append(std::move(r));
      enqueue(i, node.activate({InboxEvent::Kind::kSuspect, {}, {}, n.subject}));
      return true;
    }
    if (!rt.queue.empty()) {
      IoRequest req = std::move(rt.queue.front());
      rt.queue.pop_front();
      return perform(i, req);
    }
    enqueue(i, node.activate({InboxEvent::Kind::kTick, {}, {}, -1}));
    return true;
  }

  // A denial: always logged; stops the run in strict mode.
  bool deny(std::size_t i, const Action& a, const Verdict& v) {
    ++result_.monitor_violations;
    ++result_.node_violations[setup_.nodes[i]->id()];
    ++result_.counts["denied"];
    LogRecord r = record(i, RecordKind::kDenied);
    r.action = a;
    r.detail = v.to_string();
    result_.log.append(std::move(r));
    if (!result_.violation) {
      result_.violation =
          ViolationInfo{step_, setup_.nodes[i]->id(), setup_.nodes[i]->index(), a, v.to_string()};
    }
    return !strict_;
  }

  bool commit(std::size_t i, const Action& a, bool ghost) {
    const Verdict v = setup_.nodes[i]->commit(a);
    if (!v.permitted()) return deny(i, a, v);
    LogRecord r = record(i, ghost ? RecordKind::kGhost : RecordKind::kIo);
    r.action = a;
    result_.log.append(std::move(r));
    ++result_.counts["committed"];
    return true;
  }

  bool perform(std::size_t i, const IoRequest& req) {
    SimNode& node = *setup_.nodes[i];
    const Verdict v = node.request_output(req.bio, req.out);
    const bool permitted = v.permitted();
    if (!permitted && !deny(i, Action{req.bio, req.out, Value()}, v)) return false;

    if (node.is_ghost(req.bio)) {
      return !permitted || commit(i, Action{req.bio, req.out, Value()}, true);
    }
    if (req.bio == "send") {
      const SendRoute route = setup_.route_send(node, req.out);
      if (permitted && !commit(i, Action{req.bio, req.out, Value()}, false)) return false;
      LogRecord r = record(i, RecordKind::kChanSend);
      r.message = setup_.channel.send(node.id(), route.to, route.payload);
      result_.log.append(std::move(r));
      ++result_.counts["sends"];
      return true;
    }
    if (req.bio == "receive") {
      const ReceiveRoute route = setup_.route_receive(node, req.out);
      auto msg = setup_.channel.receive(
          route.at, route.from,
          [&](const Value& m) { return node.accepts_input(req.bio, req.out, m); }, rng_);
      if (!msg) {
        LogRecord r = record(i, RecordKind::kTimeout);
        r.action = Action{req.bio, req.out, Value()};
        result_.log.append(std::move(r));
        ++result_.counts["timeouts"];
        enqueue(i, node.activate({InboxEvent::Kind::kTimeout, req.out, {}, -1}));
        return true;
      }
      LogRecord r = record(i, RecordKind::kChanDeliver);
      r.message = *msg;
      result_.log.append(std::move(r));
      ++result_.counts["deliveries"];
      if (permitted && !commit(i, Action{req.bio, req.out, msg->payload}, false)) return false;
      enqueue(i, node.activate({InboxEvent::Kind::kInput, req.out, msg->payload, -1}));
      return true;
    }
    return !permitted || commit(i, Action{req.bio, req.out, Value()}, false);
  }

  // Runs the online checks once for the records appended since `mark`.
  void observe(std::size_t mark) {
    if (!setup_.online) return;
    std::optional<Event> event;
    for (std::size_t k = mark; k < result_.log.size(); ++k) {
      if (auto e = setup_.gamma(result_.log.records[k])) event = std::move(e);
    }
    const SimView view{step_, setup_.channel, crashed_};
    for (const auto& name : setup_.online(view, event)) {
      for (auto& g : result_.globals) {
        if (g.name != name || !g.holds) continue;
        g.holds = false;
        g.first_violation_step = step_;
      }
    }
  }

  SimSetup& setup_;
  const FaultPlan& faults_;
  std::mt19937_64 rng_;
  std::vector<Runtime> runtime_;
  bool strict_;
  std::map<int, std::size_t> by_id_;
  std::set<int> crashed_;
  std::size_t step_ = 0;
  SimResult result_;
};

}  // namespace

SimResult run_setup(SimSetup& setup, const FaultPlan& faults, std::uint64_t seed,
                    std::size_t max_steps, MonitorMode mode) {
  return Scheduler(setup, faults, seed, mode == MonitorMode::kStrict).run(max_steps);
}

GlobalPropertyVerdict check_global(const TraceLog& log, const TraceProperty& prop,
                                   const EventMap& gamma) {
  const auto events = model_events(log, gamma);
  Trace t;
  for (const auto& [pos, e] : events) t.push_back(e);
  if (prop.accepts(t)) return {};
  Trace prefix;
  if (!prop.accepts(prefix)) return {false, std::nullopt};
  for (const auto& [pos, e] : events) {
    prefix.push_back(e);
    if (!prop.accepts(prefix)) return {false, pos};
  }
  return {false, std::nullopt};
}

}  // namespace igloo
