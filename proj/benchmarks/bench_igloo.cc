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


#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "igloo/kernel/composition.h"
#include "igloo/kernel/generators.h"
#include "igloo/kernel/refinement.h"
#include "igloo/monitor/monitor.h"
#include "igloo/protocols/leader.h"
#include "igloo/simnet/scenario.h"

namespace igloo {
namespace {

const RingConfig& ring4() {
  static const RingConfig ring = RingConfig::Sorted({1, 2, 3, 4});
  return ring;
}

void BM_MonitorRequest(benchmark::State& state) {
  const auto backend = state.range(0) == 0 ? Backend::kEventSystem : Backend::kHeap;
  Monitor<LeaderNode> monitor(leader_component(ring4(), 2, ring4().addr_of(3)), backend);
  const auto [bio, out] = monitor.enabled_outputs().front();
  for (auto _ : state) benchmark::DoNotOptimize(monitor.request_output(bio, out));
  state.SetLabel(backend_name(backend));
}
BENCHMARK(BM_MonitorRequest)->Arg(0)->Arg(1);

void BM_BackendRandomWalk(benchmark::State& state) {
  const auto component = leader_component(ring4(), 2, ring4().addr_of(3));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(compare_backends(component, 200, seed++));
  }
}
BENCHMARK(BM_BackendRandomWalk)->Unit(benchmark::kMillisecond);

void BM_ComposeAndEnumerate(benchmark::State& state) {
  RandomSystemParams params;
  const auto alphabet = event_alphabet(params);
  const auto es1 = random_event_system(1, params);
  const auto es2 = random_event_system(2, params);
  const auto chi = random_sync_map(3, alphabet, alphabet);
  const auto composed = compose_parallel(es1, es2, chi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(enumerate_traces(composed, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_ComposeAndEnumerate)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_LeaderRefinement(benchmark::State& state) {
  std::vector<int> ids(static_cast<std::size_t>(state.range(0)));
  std::iota(ids.begin(), ids.end(), 1);
  const LeaderStack st = build_leader_stack(RingConfig::Sorted(ids));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        check_refinement(st.interface_model, st.protocol_model, st.r_ip, st.pi_ip, 5));
  }
}
BENCHMARK(BM_LeaderRefinement)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_LeaderSimulation(benchmark::State& state) {
  const Scenario sc = load_scenario("leader4");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sim(sc, sc.faults, seed++, 2000));
  }
}
BENCHMARK(BM_LeaderSimulation)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace igloo

BENCHMARK_MAIN();
