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

#ifndef IGLOO_PROCESS_GENERATORS_H_
#define IGLOO_PROCESS_GENERATORS_H_

#include <cstddef>
#include <cstdint>

#include "igloo/process/io_guarded.h"
#include "igloo/process/process.h"
#include "igloo/process/typing.h"

namespace igloo {

struct RandomTypingParams {
  std::size_t max_bios = 3;     // operations named "a", "b", "c", ...
  std::size_t max_outputs = 3;  // per operation, integers from 0
  std::size_t max_inputs = 3;   // Ty(bio, v) is a subset of 0..max_inputs-1
};

Typing random_typing(std::uint64_t seed, const RandomTypingParams& params = {});

struct RandomProcessParams {
  std::size_t levels = 3;     // maximum prefix nesting
  std::size_t branching = 3;  // alternatives per choice node
};

// A finite process over the typing's operations and outputs. Each level is a finite choice over at most `branching`
// alternatives, so positions grow by at most branching + 1 per level.
Process random_process(const Typing& typing, std::uint64_t seed,
                       const RandomProcessParams& params = {});

struct RandomIOSystemParams {
  std::size_t max_states = 20;
  RandomTypingParams typing;
};

// A random I/O-guarded system over integer states 0..n-1 with table-driven,
// input-independent guards and input-dependent updates.
IOGuardedES<int> random_io_system(std::uint64_t seed,
                                  const RandomIOSystemParams& params = {});

// in(x).Q(x) + fail.Null with Q(x) = out(x).Null + (in(y).out(x+y).Null +
// drop.Null); fail and drop carry unit arguments.
Process example8_process();
// in: unit output, inputs {1, 2}; out: outputs 1..6, unit input; fail and
// drop: unit output and input.
Typing example8_typing();

}  // namespace igloo

#endif  // IGLOO_PROCESS_GENERATORS_H_
