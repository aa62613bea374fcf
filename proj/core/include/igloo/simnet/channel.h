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

#ifndef IGLOO_SIMNET_CHANNEL_H_
#define IGLOO_SIMNET_CHANNEL_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "igloo/value.h"

namespace igloo {

struct Envelope {
  std::uint64_t id = 0;  // id of the send that introduced this message
  int from = -1;
  int to = -1;
  Value payload;

  bool operator==(const Envelope&) const = default;
};

void to_json(nlohmann::json& j, const Envelope& e);
void from_json(const nlohmann::json& j, Envelope& e);

enum class ChannelKind { kLossySet, kFifo };

const char* channel_kind_name(ChannelKind k);

// Message transport between simulated nodes.
//
// kLossySet keeps one persistent message set per destination. A receive
// picks any acceptable message in the set, so messages are reordered and
// may be delivered many times; loss is a receive that picks nothing.
//
// kFifo keeps one reliable queue per (from, to) pair and delivers heads.
class ChannelModel {
 public:
  using Acceptable = std::function<bool(const Value&)>;

  static ChannelModel LossySet(double loss_rate);
  static ChannelModel Fifo();

  ChannelKind kind() const { return kind_; }
  double loss_rate() const { return loss_rate_; }

  // Records a send and returns its envelope.
  Envelope send(int from, int to, Value payload);

  // Delivery decision for a receive at `to`, optionally restricted to
  // messages from `from`. Only messages satisfying `acceptable` qualify.
  // FIFO: if `from` is given, only the head of that queue qualifies.
  std::optional<Envelope> receive(int to, std::optional<int> from,
                                  const Acceptable& acceptable, std::mt19937_64& rng);

  // Messages currently in transit to `to`, in a deterministic order.
  std::vector<Envelope> pending(int to) const;

  // FIFO queues keyed by (from, to); empty for the lossy kind.
  const std::map<std::pair<int, int>, std::deque<Envelope>>& queues() const {
    return queues_;
  }

  std::uint64_t sends() const { return next_id_; }

 private:
  ChannelModel(ChannelKind kind, double loss) : kind_(kind), loss_rate_(loss) {}

  ChannelKind kind_;
  double loss_rate_ = 0.0;
  std::uint64_t next_id_ = 0;
  // Lossy set: destination -> payload -> first envelope carrying it.
  std::map<int, std::map<Value, Envelope>> sets_;
  std::map<std::pair<int, int>, std::deque<Envelope>> queues_;
};

// Uniform double in [0, 1) from the top 53 bits of one draw.
double unit_draw(std::mt19937_64& rng);

// Uniform index in [0, n); n must be positive.
std::size_t index_draw(std::mt19937_64& rng, std::size_t n);

}  // namespace igloo

#endif  // IGLOO_SIMNET_CHANNEL_H_
