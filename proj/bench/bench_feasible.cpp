// Copyright 2026 The teamdecomp Authors.
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

// Serial reference vs OpenMP level-parallel feasible-set enumeration.

#include <benchmark/benchmark.h>

#include <map>

#include "teamdecomp/decomposition.hpp"
#include "teamdecomp/feasible_sets.hpp"
#include "teamdecomp/generators.hpp"
#include "teamdecomp/team_view.hpp"

namespace td = teamdecomp;

namespace {

struct Fixture {
  td::TeamView view;
  td::PublicTreeDecomposition dec;
};

const Fixture& kuhn_plus(int ranks) {
  static std::map<int, Fixture> cache;
  auto it = cache.find(ranks);
  if (it == cache.end()) {
    Fixture f;
    f.view = td::build_team_view(td::make_kuhn(2, 1, ranks), td::Team::kPlus);
    f.dec = td::build_decomposition(f.view);
    it = cache.emplace(ranks, std::move(f)).first;
  }
  return it->second;
}

void BM_Serial(benchmark::State& state) {
  const Fixture& f = kuhn_plus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(td::enumerate_feasible(f.dec, f.view).total);
  }
}

void BM_Parallel(benchmark::State& state) {
  const Fixture& f = kuhn_plus(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(td::enumerate_feasible_parallel(f.dec, f.view).total);
  }
}

}  // namespace

BENCHMARK(BM_Serial)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Parallel)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
