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

#include "igloo/heap/canonical.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "igloo/error.h"

namespace igloo {

InputSchedule InputSchedule::Pick(const Typing& typing) {
  return InputSchedule("pick",
                       [typing](const ActionTrace&, const std::string& bio,
                                 const Value& out) {
                         return typing.pick(bio, out);
                       });
}

InputSchedule InputSchedule::Random(const Typing& typing, std::uint64_t seed) {
  return InputSchedule(
      "random:" + std::to_string(seed),
      [typing, seed](const ActionTrace& tau, const std::string& bio,
                      const Value& out) {
        const auto& inputs = typing.ty(bio, out);
        nlohmann::json key = {tau, bio, out};
        const auto h = fnv1a(key.dump(), seed ^ 0x9e3779b97f4a7c15ULL);
        return inputs[h % inputs.size()];
      });
}

InputSchedule rho_wit(const ActionTrace& tau, const Typing& typing) {
  return InputSchedule(
      "wit",
      [tau, typing](const ActionTrace& prefix, const std::string& bio,
                     const Value& out) {
        if (prefix.size() < tau.size() &&
            std::equal(prefix.begin(), prefix.end(), tau.begin())) {
          const Action& next = tau[prefix.size()];
          if (next.bio == bio && next.out == out) return next.in;
        }
        return typing.pick(bio, out);
      });
}

Heap pm(const Process& p, const InputSchedule& rho, const ActionTrace& tau,
        const Place& ppos, const Place& cpos, const Place& pos) {
  Process proc = p;
  ActionTrace trace = tau;
  Place prev = ppos;
  Place cur = cpos;
  for (std::size_t i = 0;; ++i) {
    const bool at_end = i == pos.size();
    const char dir = at_end ? '\0' : pos.path()[i];
    if (proc.kind() == Process::Kind::kPrefix) {
      const Value w = rho(trace, proc.bio(), proc.output());
      if (at_end) {
        return Heap{Chunk::Perm(proc.bio(), prev, proc.output(), w, cur.left())};
      }
      if (dir != 'L') return {};
      trace.push_back(Action{proc.bio(), proc.output(), w});
      cur = cur.left();
      prev = cur;
      proc = proc.continue_with(w);
    } else if (proc.kind() == Process::Kind::kChoice && !at_end) {
      cur = cur.child(dir);
      proc = dir == 'L' ? proc.left() : proc.right();
    } else {
      return {};
    }
  }
}

namespace {

void gmod_into(Heap& acc, const Process& p, const InputSchedule& rho,
               ActionTrace& tau, const Place& ppos, const Place& cpos,
               std::size_t actions, const GmodLimits& limits) {
  if (p.is_inactive()) return;
  if (cpos.size() > limits.max_position) {
    if (is_dead(p)) return;
    throw Error(ErrorCode::kBoundExceeded,
                "live process below position bound " +
                    std::to_string(limits.max_position) + " at " +
                    cpos.to_string());
  }
  if (p.kind() == Process::Kind::kChoice) {
    gmod_into(acc, p.left(), rho, tau, ppos, cpos.left(), actions, limits);
    gmod_into(acc, p.right(), rho, tau, ppos, cpos.right(), actions, limits);
    return;
  }
  if (limits.max_actions && actions >= *limits.max_actions) return;
  const Value w = rho(tau, p.bio(), p.output());
  const Place next = cpos.left();
  acc.add(Chunk::Perm(p.bio(), ppos, p.output(), w, next));
  tau.push_back(Action{p.bio(), p.output(), w});
  gmod_into(acc, p.continue_with(w), rho, tau, next, next, actions + 1, limits);
  tau.pop_back();
}

}  // namespace

Heap gmod(const Process& p, const InputSchedule& rho, const ActionTrace& tau,
          const Place& ppos, const Place& cpos, const GmodLimits& limits) {
  Heap acc;
  ActionTrace trace = tau;
  gmod_into(acc, p, rho, trace, ppos, cpos, 0, limits);
  return acc;
}

Heap cmod(const Process& p, const InputSchedule& rho,
          const GmodLimits& limits) {
  return gmod(p, rho, {}, Place(), Place(), limits);
}

Heap cmod_tok(const Process& p, const InputSchedule& rho,
              const GmodLimits& limits) {
  Heap h = cmod(p, rho, limits);
  h.add(Chunk::Token(Place()));
  return h;
}

}  // namespace igloo
