// Copyright 2026 The eosssd Authors.
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

// Serial versus OpenMP lower bound on a 30x150 square-root instance.

#include <vector>

#include <benchmark/benchmark.h>

#include "eosssd/instance.h"
#include "eosssd/lagrangian.h"
#include "eosssd/linearization.h"

namespace eosssd {
namespace {

struct Fixture {
  Instance instance = GenerateInstance(30, 150, 7, CostFamily::kSquareRoot);
  Linearization lin = [this] {
    const auto [lo, hi] = DefaultCapacityRange(instance);
    return Linearize(instance.cost_function(), 0.01, lo, hi);
  }();
  std::vector<double> multipliers = [this] {
    std::vector<double> u(instance.num_customers());
    for (int j = 0; j < instance.num_customers(); ++j) u[j] = 40.0 + 3.0 * (j % 17);
    return u;
  }();
};

const Fixture& Shared() {
  static const Fixture fixture;
  return fixture;
}

void BM_LowerBoundSerial(benchmark::State& state) {
  const Fixture& f = Shared();
  for (auto _ : state) {
    benchmark::DoNotOptimize(LowerBoundSerial(f.instance, f.lin, f.multipliers));
  }
}
BENCHMARK(BM_LowerBoundSerial);

void BM_LowerBoundParallel(benchmark::State& state) {
  const Fixture& f = Shared();
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        LowerBoundParallel(f.instance, f.lin, f.multipliers, threads));
  }
}
BENCHMARK(BM_LowerBoundParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
}  // namespace eosssd

BENCHMARK_MAIN();
