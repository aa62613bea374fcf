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

#ifndef IGLOO_PROCESS_IO_GUARDED_H_
#define IGLOO_PROCESS_IO_GUARDED_H_

#include <algorithm>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "igloo/error.h"
#include "igloo/kernel/event_system.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

// Rendering hints used when printing an event as an I/O specification
// conjunct. Empty fields fall back to the bio name, unit arguments, "true"
// guards and unchanged state.
struct IOSpecText {
  std::string operation;
  std::vector<std::string> out_vars;  // universally quantified outputs
  std::string out_pattern;            // output as written in the chunk
  std::string in_var;                 // existentially quantified input
  std::string guard;
  std::string update;
};

template <class S>
struct IOEvent {
  std::string bio;
  bool ghost = false;
  std::function<bool(const S&, const Value& out, const Value& in)> guard;
  std::function<S(const S&, const Value& out, const Value& in)> update;
  IOSpecText text;
};

// A guarded event system over I/O actions bio(out, in) whose guards must not
// depend on the input. Operation names are unique.
template <class S>
class IOGuardedES {
 public:
  IOGuardedES(std::vector<IOEvent<S>> events, Typing typing, S initial,
              std::string parameters = {})
      : events_(std::make_shared<const std::vector<IOEvent<S>>>(std::move(events))),
        typing_(std::move(typing)),
        initial_(std::move(initial)),
        parameters_(std::move(parameters)) {}

  const std::vector<IOEvent<S>>& events() const { return *events_; }
  const Typing& typing() const { return typing_; }
  const S& initial() const { return initial_; }
  const std::string& parameters() const { return parameters_; }

  const IOEvent<S>* find(const std::string& bio) const {
    for (const auto& ev : *events_) {
      if (ev.bio == bio) return &ev;
    }
    return nullptr;
  }

  bool is_ghost(const std::string& bio) const {
    const auto* ev = find(bio);
    return ev != nullptr && ev->ghost;
  }

  // Guard value of bio(out, ·) at s. Outputs outside the declared domain and
  // unknown operations are disabled. Throws GUARD_DEPENDS_ON_INPUT when the
  // guard differs between two well-typed inputs.
  bool enabled(const S& s, const std::string& bio, const Value& out) const {
    const auto* ev = find(bio);
    if (ev == nullptr || !typing_.declares(bio)) return false;
    if (!typing_.in_output_domain(bio, out)) return false;
    const auto& inputs = typing_.ty(bio, out);
    const bool first = ev->guard(s, out, inputs.front());
    for (std::size_t i = 1; i < inputs.size(); ++i) {
      if (ev->guard(s, out, inputs[i]) != first) {
        throw Error(ErrorCode::kGuardDependsOnInput,
                    bio + "(" + out.to_string() + ") at input " +
                        inputs[i].to_string());
      }
    }
    return first;
  }

  std::vector<std::pair<std::string, Value>> enabled_outputs(const S& s) const {
    std::vector<std::pair<std::string, Value>> out;
    for (const auto& ev : *events_) {
      if (!typing_.declares(ev.bio)) continue;
      for (const auto& v : typing_.outputs(ev.bio)) {
        if (enabled(s, ev.bio, v)) out.emplace_back(ev.bio, v);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  S apply(const S& s, const Action& a) const {
    return find(a.bio)->update(s, a.out, a.in);
  }

  // Transitions s --bio(v,w)--> U(s, v, w) for enabled (bio, v) and every
  // w in Ty(bio, v); optionally with the stutter self-loop.
  EventSystem<S> to_event_system(bool stutter) const {
    IOGuardedES self = *this;
    return EventSystem<S>(
        [self, stutter](const S& s) {
          std::vector<Step<S>> out;
          if (stutter) out.push_back({skip_event(), s});
          for (const auto& [bio, v] : self.enabled_outputs(s)) {
            for (const auto& w : self.typing().ty(bio, v)) {
              out.push_back({to_event(Action{bio, v, w}),
                             self.apply(s, Action{bio, v, w})});
            }
          }
          return out;
        },
        {initial_});
  }

 private:
  std::shared_ptr<const std::vector<IOEvent<S>>> events_;
  Typing typing_;
  S initial_;
  std::string parameters_;
};

// Throws GUARD_DEPENDS_ON_INPUT if any guard depends on its input at any of
// the given states.
template <class S>
void check_guard_independence(const IOGuardedES<S>& ges,
                              const std::vector<S>& states) {
  for (const auto& s : states) ges.enabled_outputs(s);
}

namespace detail {

template <class S>
Process proc_of_ges_at(const std::shared_ptr<const IOGuardedES<S>>& ges,
                       const S& s) {
  const auto enabled = ges->enabled_outputs(s);
  std::vector<Value> keys;
  for (std::size_t i = 0; i < enabled.size(); ++i) {
    keys.push_back(Value::Int(static_cast<std::int64_t>(i)));
  }
  return finite_choice(keys, [ges, s, enabled](const Value& key) {
    const auto& [bio, v] = enabled[static_cast<std::size_t>(key.as_int())];
    return Process::Prefix(bio, v, [ges, s, bio = bio, v = v](const Value& w) {
      return proc_of_ges_at(ges, ges->apply(s, Action{bio, v, w}));
    });
  });
}

}  // namespace detail

// The process whose one-level unfolding offers exactly the enabled I/O
// actions at s; only (bio, out) pairs with a satisfied guard are included.
template <class S>
Process proc_of_ges(const IOGuardedES<S>& ges, const S& s) {
  return detail::proc_of_ges_at(std::make_shared<const IOGuardedES<S>>(ges), s);
}


// One unfolding of the I/O specification predicate of ges over a symbolic
// state s, one conjunct per event in declaration order. Renders "true" when
// there are no events.
template <class S>
std::string render_iospec(const IOGuardedES<S>& ges) {
  if (ges.events().empty()) return "true";
  const std::string params =
      ges.parameters().empty() ? std::string("p") : ges.parameters();
  auto join = [](const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += xs[i];
    }
    return out;
  };
  std::string body;
  for (const auto& ev : ges.events()) {
    const IOSpecText& tx = ev.text;
    const std::string op = tx.operation.empty() ? ev.bio : tx.operation;
    std::vector<std::string> bound;
    if (!tx.in_var.empty()) bound.push_back(tx.in_var);
    bound.push_back("t'");
    std::vector<std::string> args{"t"};
    if (!tx.out_pattern.empty()) args.push_back(tx.out_pattern);
    if (!tx.in_var.empty()) args.push_back(tx.in_var);
    args.push_back("t'");
    const std::string next_state =
        tx.update.empty() ? std::string("s") : "s⟨" + tx.update + "⟩";
    std::string core = "∃" + join(bound) + ". " + op + "(" + join(args) +
                       ") ⋆ P(t', " + params + ", " + next_state + ")";
    if (!tx.guard.empty()) core = "if " + tx.guard + " then " + core + " else true";
    if (!tx.out_vars.empty()) core = "∀⋆" + join(tx.out_vars) + ". " + core;
    if (!body.empty()) body += " ⋆ ";
    body += "(" + core + ")";
  }
  return "P(t, " + params + ", s) =ν " + body;
}

}  // namespace igloo

#endif  // IGLOO_PROCESS_IO_GUARDED_H_
