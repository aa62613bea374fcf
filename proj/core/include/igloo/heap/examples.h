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

#ifndef IGLOO_HEAP_EXAMPLES_H_
#define IGLOO_HEAP_EXAMPLES_H_

#include <vector>

#include "igloo/heap/assertion.h"
#include "igloo/heap/canonical.h"
#include "igloo/heap/heap.h"
#include "igloo/process/typing.h"

namespace igloo {

// Receive a value, then send its double:
//   exists t. token(t) * exists x, t', t''. recv(t, (), x, t') *
//   send(t', 2x, (), t'')
// with x ranging over {12, 19}.
Assertion recv_double_spec();

// recv: unit output with the given inputs; send: outputs {24, 35, 38}, unit
// input.
Typing recv_send_typing(const std::vector<Value>& recv_inputs);

// Models of recv_double_spec with places root, L and R:
//   h1: recv 12, send 24 along root -> L -> R
//   h2: both permissions loop on the root place
//   h3: h1 plus send(L, 35, (), R)
//   h1_alt: recv 19, send 38
Heap recv_send_h1();
Heap recv_send_h2();
Heap recv_send_h3();
Heap recv_send_h1_alt();

// in reads |tau| + 1; every other operation reads unit.
InputSchedule example8_schedule();

}  // namespace igloo

#endif  // IGLOO_HEAP_EXAMPLES_H_
