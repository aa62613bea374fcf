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

#include "igloo/simnet/channel.h"

#include "igloo/error.h"

namespace igloo {

void to_json(nlohmann::json& j, const Envelope& e) {
  j = nlohmann::json{{"id", e.id}, {"from", e.from}, {"to", e.to}, {"payload", e.payload}};
}

void from_json(const nlohmann::json& j, Envelope& e) {
  e.id = j.at("id").get<std::uint64_t>();
  e.from = j.at("from").get<int>();
  e.to = j.at("to").get<int>();
  e.payload = j.at("payload").get<Value>();
}

const char* channel_kind_name(ChannelKind k) {
  return k == ChannelKind::kLossySet ? "lossy-set" : "fifo";
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t index_draw(std::mt19937_64& rng, std::size_t n) {
  return static_cast<std::size_t>(rng() % n);
}

ChannelModel ChannelModel::LossySet(double loss_rate) {
  if (!(loss_rate >= 0.0 && loss_rate < 1.0)) {
    throw Error(ErrorCode::kConfig, "loss rate must be in [0, 1)");
  }
  return ChannelModel(ChannelKind::kLossySet, loss_rate);
}

ChannelModel ChannelModel::Fifo() { return ChannelModel(ChannelKind::kFifo, 0.0); }

Envelope ChannelModel::send(int from, int to, Value payload) {
  Envelope e{next_id_++, from, to, std::move(payload)};
  if (kind_ == ChannelKind::kLossySet) {
    auto& set = sets_[to];
    auto it = set.find(e.payload);
    if (it == set.end()) set.emplace(e.payload, e);
  } else {
    queues_[{from, to}].push_back(e);
  }
  return e;
}

std::optional<Envelope> ChannelModel::receive(int to, std::optional<int> from,
                                              const Acceptable& acceptable,
                                              std::mt19937_64& rng) {
  if (kind_ == ChannelKind::kLossySet) {
    // Always draw, so the random stream does not depend on set contents.
    const bool lost = unit_draw(rng) < loss_rate_;
    std::vector<const Envelope*> candidates;
    auto it = sets_.find(to);
    if (it != sets_.end()) {
      for (const auto& [payload, env] : it->second) {
        if (from && env.from != *from) continue;
        if (acceptable(payload)) candidates.push_back(&env);
      }
    }
    if (lost || candidates.empty()) return std::nullopt;
    Envelope out = *candidates[index_draw(rng, candidates.size())];
    out.to = to;
    return out;
  }
  std::vector<std::deque<Envelope>*> heads;
  for (auto& [key, q] : queues_) {
    if (key.second != to || q.empty()) continue;
    if (from && key.first != *from) continue;
    if (acceptable(q.front().payload)) heads.push_back(&q);
  }
  if (heads.empty()) return std::nullopt;
  auto* q = heads.size() == 1 ? heads.front() : heads[index_draw(rng, heads.size())];
  Envelope out = q->front();
  q->pop_front();
  return out;
}

std::vector<Envelope> ChannelModel::pending(int to) const {
  std::vector<Envelope> out;
  if (kind_ == ChannelKind::kLossySet) {
    auto it = sets_.find(to);
    if (it == sets_.end()) return out;
    for (const auto& [payload, env] : it->second) out.push_back(env);
    return out;
  }
  for (const auto& [key, q] : queues_) {
    if (key.second == to) out.insert(out.end(), q.begin(), q.end());
  }
  return out;
}

}  // namespace igloo
