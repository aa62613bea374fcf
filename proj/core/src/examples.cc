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

#include "igloo/heap/examples.h"

namespace igloo {

namespace {

Heap recv_send(const Place& t0, const Place& t1, const Place& t2,
               std::int64_t received) {
  return Heap{Chunk::Token(t0),
              Chunk::Perm("recv", t0, Value(), Value::Int(received), t1),
              Chunk::Perm("send", t1, Value::Int(2 * received), Value(), t2)};
}

}  // namespace

Assertion recv_double_spec() {
  return Assertion::ExistsPlace(std::nullopt, [](const Place& t) {
    return Assertion::Star(
        Assertion::Atom(Chunk::Token(t)),
        Assertion::ExistsValue(
            {Value::Int(12), Value::Int(19)}, [t](const Value& x) {
              return Assertion::ExistsPlace(std::nullopt, [t, x](const Place& t1) {
                return Assertion::ExistsPlace(
                    std::nullopt, [t, x, t1](const Place& t2) {
                      return Assertion::Star(
                          Assertion::Atom(
                              Chunk::Perm("recv", t, Value(), x, t1)),
                          Assertion::Atom(Chunk::Perm(
                              "send", t1, Value::Int(2 * x.as_int()), Value(),
                              t2)));
                    });
              });
            }));
  });
}

Typing recv_send_typing(const std::vector<Value>& recv_inputs) {
  Typing typing;
  typing.declare("recv", {Value()}, recv_inputs);
  typing.declare("send", {Value::Int(24), Value::Int(35), Value::Int(38)},
                 {Value()});
  return typing;
}

Heap recv_send_h1() {
  return recv_send(Place(), Place("L"), Place("R"), 12);
}

Heap recv_send_h2() { return recv_send(Place(), Place(), Place(), 12); }

Heap recv_send_h3() {
  Heap h = recv_send_h1();
  h.add(Chunk::Perm("send", Place("L"), Value::Int(35), Value(), Place("R")));
  return h;
}

Heap recv_send_h1_alt() {
  return recv_send(Place(), Place("L"), Place("R"), 19);
}

InputSchedule example8_schedule() {
  return InputSchedule("example8", [](const ActionTrace& tau,
                                      const std::string& bio, const Value&) {
    if (bio == "in") return Value::Int(static_cast<std::int64_t>(tau.size()) + 1);
    return Value();
  });
}

}  // namespace igloo
