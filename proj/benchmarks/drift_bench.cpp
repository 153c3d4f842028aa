// Copyright 2026 The driftlab Authors
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

#include "driftlab/drift_div_q.hpp"
#include "driftlab/drift_div_qm1.hpp"

namespace driftlab {
namespace {

void BM_ClosedForm(benchmark::State& state) {
  const Quintuple p(10, 3, 5, 2, 10);
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), 10, 40);
  n += 12345;
  for (auto _ : state) benchmark::DoNotOptimize(closed_form_g(p, n).g);
}
BENCHMARK(BM_ClosedForm);

void BM_GExact(benchmark::State& state) {
  const Quintuple p(10, 3, 5, 2, 10);
  mpz_class n;
  mpz_ui_pow_ui(n.get_mpz_t(), 10, 40);
  n += 12345;
  for (auto _ : state) benchmark::DoNotOptimize(g_exact(p, n));
}
BENCHMARK(BM_GExact);

void BM_EExact(benchmark::State& state) {
  const Quintuple p(7, 1, 3, 2, 7);
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(E_exact(p, k).value);
}
BENCHMARK(BM_EExact)->Arg(8)->Arg(64)->Arg(512)->Unit(benchmark::kMicrosecond);

void BM_Profile(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto d = static_cast<std::uint32_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(profile(Quintuple(q, 0, d, 0, q)).M);
}
BENCHMARK(BM_Profile)->Args({3, 2})->Args({7, 6})->Args({13, 4})->Unit(benchmark::kMillisecond);

void BM_Certify(benchmark::State& state) {
  const Quintuple p(5, 1, 4, 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(certify_oscillation(p, 24).positive_claims);
}
BENCHMARK(BM_Certify)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace driftlab
