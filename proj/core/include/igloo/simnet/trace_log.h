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

#ifndef IGLOO_SIMNET_TRACE_LOG_H_
#define IGLOO_SIMNET_TRACE_LOG_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/event.h"
#include "igloo/process/typing.h"
#include "igloo/simnet/channel.h"
#include "igloo/value.h"

namespace igloo {

enum class RecordKind {
  kIo,           // committed I/O action of a node
  kGhost,        // committed ghost action of a node
  kDenied,       // action the monitor denied (audit mode keeps running)
  kChanSend,     // message entered the channel
  kChanDeliver,  // message handed to a receive
  kTimeout,      // receive returned nothing
  kCrash,        // fail-stop crash of a node
  kNotice,       // failure detector told a node about a crash
};

const char* record_kind_name(RecordKind k);
RecordKind record_kind_from_name(const std::string& s);

struct LogRecord {
  std::size_t step = 0;
  RecordKind kind = RecordKind::kIo;
  int node = -1;       // simulator node id; -1 for the environment
  Value index;         // component index as used by the decomposition
  std::optional<Action> action;
  std::optional<Envelope> message;
  std::optional<int> subject;  // crashed node for kCrash and kNotice
  std::string detail;          // deny reason for kDenied

  bool committed() const { return kind == RecordKind::kIo || kind == RecordKind::kGhost; }
  bool operator==(const LogRecord&) const = default;
};

void to_json(nlohmann::json& j, const LogRecord& r);
void from_json(const nlohmann::json& j, LogRecord& r);

class TraceLog {
 public:
  std::vector<LogRecord> records;

  void append(LogRecord r) { records.push_back(std::move(r)); }
  std::size_t size() const { return records.size(); }

  // Committed actions of one node in log order, ghosts included on request.
  ActionTrace node_projection(int node, bool include_ghost = true) const;

  void write_jsonl(std::ostream& os) const;
  std::string to_jsonl() const;
  static TraceLog read_jsonl(std::istream& is);

  bool operator==(const TraceLog&) const = default;
};

// Index of the first delivery that does not match an earlier send with the
// same id, destination and payload, or nullopt if there is none.
std::optional<std::size_t> first_fabricated_delivery(const TraceLog& log);

// Maps a log record to the event it contributes to the recomposed model,
// or nullopt for records that are not model events.
using EventMap = std::function<std::optional<Event>(const LogRecord&)>;

// The model events of a log with their record positions.
std::vector<std::pair<std::size_t, Event>> model_events(const TraceLog& log,
                                                        const EventMap& gamma);

}  // namespace igloo

#endif  // IGLOO_SIMNET_TRACE_LOG_H_
