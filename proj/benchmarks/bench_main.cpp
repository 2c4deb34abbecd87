// Copyright 2026 The fermat-els Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "fermat_els/census.hpp"
#include "fermat_els/densities.hpp"
#include "fermat_els/local.hpp"

using namespace fermat_els;

namespace {

std::vector<CoeffTriple> random_triples(std::int64_t p, int n, std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> unit(1, 1000);
  std::uniform_int_distribution<int> val(0, n);
  std::vector<CoeffTriple> out;
  while (out.size() < count) {
    CoeffTriple a;
    for (std::size_t i = 0; i < 3; ++i) {
      std::int64_t u = unit(rng);
      while (u % p == 0) u = unit(rng);
      a[i] = (rng() & 1 ? -u : u) * ipow(p, val(rng));
    }
    out.push_back(a);
  }
  return out;
}

void BM_QpSolubleTame(benchmark::State& state) {
  const ExponentContext ctx(3);
  const std::int64_t p = state.range(0);
  const auto triples = random_triples(p, 3, 1024);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(qp_soluble(triples[i++ % triples.size()], ctx, p));
}
BENCHMARK(BM_QpSolubleTame)->Arg(5)->Arg(7)->Arg(101);

void BM_QpSolubleGeneral(benchmark::State& state) {
  const ExponentContext ctx(3);
  const std::int64_t p = state.range(0);
  const auto triples = random_triples(p, 3, 1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(qp_soluble(triples[i++ % triples.size()], ctx, p, QpPath::general));
  }
}
BENCHMARK(BM_QpSolubleGeneral)->Arg(3)->Arg(7)->Arg(31);

void BM_DeltaPClosed(benchmark::State& state) {
  const ExponentContext ctx(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(delta_p_closed(ctx, 10007));
}
BENCHMARK(BM_DeltaPClosed)->Arg(3)->Arg(7);

void BM_MCountsDirect(benchmark::State& state) {
  const ExponentContext ctx(static_cast<int>(state.range(0)));
  const std::int64_t p = state.range(1);
  for (auto _ : state) benchmark::DoNotOptimize(m_counts_direct(ctx, p));
}
BENCHMARK(BM_MCountsDirect)->Args({3, 2})->Args({3, 3})->Args({3, 7})->Unit(benchmark::kMillisecond);

void BM_CensusShard(benchmark::State& state) {
  const ExponentContext ctx(3);
  const std::int64_t bound = state.range(0);
  const FactorTable table(bound);
  for (auto _ : state) benchmark::DoNotOptimize(count_els_symmetric_shard(ctx, bound, table, 8, 0));
}
BENCHMARK(BM_CensusShard)->Arg(50)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
