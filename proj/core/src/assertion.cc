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

#include "igloo/heap/assertion.h"

#include <mutex>
#include <stdexcept>

namespace igloo {

struct Assertion::Node {
  Kind kind = Kind::kBool;
  bool b = true;
  std::optional<Chunk> chunk;
  std::vector<Assertion> parts;
  std::vector<Value> values;
  ValueBody value_body;
  std::optional<std::vector<Place>> places;
  PlaceBody place_body;
  Thunk thunk;
  mutable std::mutex mu;
  mutable std::optional<Assertion> forced;

  explicit Node(Kind kd) : kind(kd) {}
};

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(what);
}

}  // namespace

Assertion Assertion::Bool(bool b) {
  auto n = std::make_shared<Node>(Kind::kBool);
  n->b = b;
  return Assertion(std::move(n));
}

Assertion Assertion::Atom(Chunk c) {
  auto n = std::make_shared<Node>(Kind::kAtom);
  n->chunk = std::move(c);
  return Assertion(std::move(n));
}

Assertion Assertion::Star(Assertion lhs, Assertion rhs) {
  auto n = std::make_shared<Node>(Kind::kStar);
  n->parts = {std::move(lhs), std::move(rhs)};
  return Assertion(std::move(n));
}

Assertion Assertion::StarAll(std::vector<Assertion> parts) {
  Assertion acc = True();
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
    acc = Star(*it, acc);
  }
  return acc;
}

Assertion Assertion::ExistsValue(std::vector<Value> domain, ValueBody body) {
  auto n = std::make_shared<Node>(Kind::kExistsValue);
  n->values = std::move(domain);
  n->value_body = std::move(body);
  return Assertion(std::move(n));
}

Assertion Assertion::ExistsPlace(std::optional<std::vector<Place>> candidates,
                                 PlaceBody body) {
  auto n = std::make_shared<Node>(Kind::kExistsPlace);
  n->places = std::move(candidates);
  n->place_body = std::move(body);
  return Assertion(std::move(n));
}

Assertion Assertion::Defer(Thunk thunk) {
  auto n = std::make_shared<Node>(Kind::kDefer);
  n->thunk = std::move(thunk);
  return Assertion(std::move(n));
}

Assertion::Kind Assertion::kind() const { return node_->kind; }

bool Assertion::bool_value() const {
  require(kind() == Kind::kBool, "not a boolean literal");
  return node_->b;
}

const Chunk& Assertion::chunk() const {
  require(kind() == Kind::kAtom, "not an atom");
  return *node_->chunk;
}

const Assertion& Assertion::lhs() const {
  require(kind() == Kind::kStar, "not a star");
  return node_->parts[0];
}

const Assertion& Assertion::rhs() const {
  require(kind() == Kind::kStar, "not a star");
  return node_->parts[1];
}

const std::vector<Value>& Assertion::value_domain() const {
  require(kind() == Kind::kExistsValue, "not a value quantifier");
  return node_->values;
}

Assertion Assertion::open(const Value& v) const {
  require(kind() == Kind::kExistsValue, "not a value quantifier");
  return node_->value_body(v);
}

const std::optional<std::vector<Place>>& Assertion::place_candidates() const {
  require(kind() == Kind::kExistsPlace, "not a place quantifier");
  return node_->places;
}

Assertion Assertion::open(const Place& t) const {
  require(kind() == Kind::kExistsPlace, "not a place quantifier");
  return node_->place_body(t);
}

Assertion Assertion::force() const {
  require(kind() == Kind::kDefer, "not deferred");
  {
    std::lock_guard<std::mutex> lock(node_->mu);
    if (node_->forced) return *node_->forced;
  }
  Assertion a = node_->thunk();
  std::lock_guard<std::mutex> lock(node_->mu);
  if (!node_->forced) node_->forced = std::move(a);
  return *node_->forced;
}

const char* sat_name(Sat s) {
  switch (s) {
    case Sat::kTrue:
      return "true";
    case Sat::kFalse:
      return "false";
    case Sat::kUnknown:
      return "unknown";
  }
  return "?";
}

namespace {

class Consumer {
 public:
  using Cont = std::function<bool(const Heap&)>;

  Consumer(const Typing& typing, std::size_t budget)
      : typing_(typing), budget_(budget) {}

  bool exhausted() const { return exhausted_; }

  bool consume(const Assertion& phi, const Heap& h, const Cont& k) {
    if (steps_++ >= budget_) {
      exhausted_ = true;
      return false;
    }
    switch (phi.kind()) {
      case Assertion::Kind::kBool:
        return phi.bool_value() && k(h);
      case Assertion::Kind::kAtom: {
        const Chunk& c = phi.chunk();
        if (!c.well_typed(typing_) || !h.contains(c)) return false;
        Heap rest = h;
        rest.remove(c);
        return k(rest);
      }
      case Assertion::Kind::kStar:
        return consume(phi.lhs(), h, [&](const Heap& rest) {
          return consume(phi.rhs(), rest, k);
        });
      case Assertion::Kind::kExistsValue:
        for (const auto& v : phi.value_domain()) {
          if (consume(phi.open(v), h, k)) return true;
          if (exhausted_) return false;
        }
        return false;
      case Assertion::Kind::kExistsPlace: {
        std::vector<Place> domain;
        if (phi.place_candidates()) {
          domain = *phi.place_candidates();
        } else {
          const auto used = h.places();
          domain.assign(used.begin(), used.end());
          domain.push_back(h.fresh_place());
        }
        for (const auto& t : domain) {
          if (consume(phi.open(t), h, k)) return true;
          if (exhausted_) return false;
        }
        return false;
      }
      case Assertion::Kind::kDefer:
        return consume(phi.force(), h, k);
    }
    return false;
  }

 private:
  const Typing& typing_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  bool exhausted_ = false;
};

}  // namespace

Sat assert_sat(const Heap& h, const Assertion& phi, const Typing& typing,
               std::size_t budget) {
  Consumer consumer(typing, budget);
  if (consumer.consume(phi, h, [](const Heap&) { return true; })) {
    return Sat::kTrue;
  }
  return consumer.exhausted() ? Sat::kUnknown : Sat::kFalse;
}

Assertion emb(const Process& p, const Place& t, const Typing& typing) {
  switch (p.kind()) {
    case Process::Kind::kInactive:
      return Assertion::True();
    case Process::Kind::kPrefix: {
      const Typing* ty = &typing;
      return Assertion::ExistsValue(
          typing.ty(p.bio(), p.output()), [p, t, ty](const Value& z) {
            return Assertion::ExistsPlace(
                std::nullopt, [p, t, ty, z](const Place& target) {
                  return Assertion::Star(
                      Assertion::Atom(Chunk::Perm(p.bio(), t, p.output(), z,
                                                  target)),
                      Assertion::Defer([p, ty, z, target] {
                        return emb(p.continue_with(z), target, *ty);
                      }));
                });
          });
    }
    case Process::Kind::kChoice: {
      const Typing* ty = &typing;
      return Assertion::Star(
          Assertion::Defer([p, t, ty] { return emb(p.left(), t, *ty); }),
          Assertion::Defer([p, t, ty] { return emb(p.right(), t, *ty); }));
    }
  }
  return Assertion::False();
}

Assertion emb_tok(const Process& p, const Typing& typing) {
  const Typing* ty = &typing;
  return Assertion::ExistsPlace(std::nullopt, [p, ty](const Place& t) {
    return Assertion::Star(Assertion::Atom(Chunk::Token(t)), emb(p, t, *ty));
  });
}

}  // namespace igloo
