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

#include "igloo/simnet/trace_log.h"

#include <array>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <utility>

#include "igloo/error.h"

namespace igloo {

namespace {

constexpr std::array<std::pair<RecordKind, const char*>, 8> kKindNames{{
    {RecordKind::kIo, "io"},
    {RecordKind::kGhost, "ghost"},
    {RecordKind::kDenied, "denied"},
    {RecordKind::kChanSend, "chan_send"},
    {RecordKind::kChanDeliver, "chan_deliver"},
    {RecordKind::kTimeout, "timeout"},
    {RecordKind::kCrash, "crash"},
    {RecordKind::kNotice, "notice"},
}};

}  // namespace

const char* record_kind_name(RecordKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "?";
}

RecordKind record_kind_from_name(const std::string& s) {
  for (const auto& [kind, name] : kKindNames) {
    if (s == name) return kind;
  }
  throw Error(ErrorCode::kConfig, "unknown log record kind " + s);
}

void to_json(nlohmann::json& j, const LogRecord& r) {
  j = nlohmann::json{{"step", r.step}, {"kind", record_kind_name(r.kind)}};
  if (r.node >= 0) {
    j["node"] = r.node;
    j["index"] = r.index;
  }
  if (r.action) j["action"] = *r.action;
  if (r.message) j["message"] = *r.message;
  if (r.subject) j["subject"] = *r.subject;
  if (!r.detail.empty()) j["detail"] = r.detail;
}

void from_json(const nlohmann::json& j, LogRecord& r) {
  r = LogRecord{};
  r.step = j.at("step").get<std::size_t>();
  r.kind = record_kind_from_name(j.at("kind").get<std::string>());
  if (j.contains("node")) {
    r.node = j.at("node").get<int>();
    r.index = j.at("index").get<Value>();
  }
  if (j.contains("action")) r.action = j.at("action").get<Action>();
  if (j.contains("message")) r.message = j.at("message").get<Envelope>();
  if (j.contains("subject")) r.subject = j.at("subject").get<int>();
  if (j.contains("detail")) r.detail = j.at("detail").get<std::string>();
}

ActionTrace TraceLog::node_projection(int node, bool include_ghost) const {
  ActionTrace out;
  for (const auto& r : records) {
    if (r.node != node || !r.committed()) continue;
    if (r.kind == RecordKind::kGhost && !include_ghost) continue;
    out.push_back(*r.action);
  }
  return out;
}

void TraceLog::write_jsonl(std::ostream& os) const {
  for (const auto& r : records) os << nlohmann::json(r).dump() << '\n';
}

std::string TraceLog::to_jsonl() const {
  std::ostringstream os;
  write_jsonl(os);
  return os.str();
}

TraceLog TraceLog::read_jsonl(std::istream& is) {
  TraceLog log;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    try {
      log.append(nlohmann::json::parse(line).get<LogRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kConfig, std::string("bad log line: ") + e.what());
    }
  }
  return log;
}

std::optional<std::size_t> first_fabricated_delivery(const TraceLog& log) {
  std::map<std::uint64_t, Envelope> sent;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    const auto& r = log.records[i];
    if (!r.message) continue;
    if (r.kind == RecordKind::kChanSend) {
      sent.emplace(r.message->id, *r.message);
    } else if (r.kind == RecordKind::kChanDeliver) {
      auto it = sent.find(r.message->id);
      if (it == sent.end() || it->second.to != r.message->to ||
          it->second.payload != r.message->payload) {
        return i;
      }
    }
  }
  return std::nullopt;
}

std::vector<std::pair<std::size_t, Event>> model_events(const TraceLog& log,
                                                        const EventMap& gamma) {
  std::vector<std::pair<std::size_t, Event>> out;
  for (std::size_t i = 0; i < log.records.size(); ++i) {
    if (auto e = gamma(log.records[i])) out.emplace_back(i, std::move(*e));
  }
  return out;
}

}  // namespace igloo
