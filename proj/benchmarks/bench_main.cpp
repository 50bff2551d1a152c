// Copyright 2026 The cavnet Authors
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

#include <numbers>
#include <random>

#include <benchmark/benchmark.h>

#include "cavnet/dynamics.hpp"
#include "cavnet/eliminate.hpp"
#include "cavnet/linop.hpp"
#include "cavnet/netio.hpp"

namespace {

using namespace cavnet;

void BM_EliminateMultiport(benchmark::State& state) {
  const auto blocks = build_coupling_blocks(builtin_example("fig1-bmbs"));
  for (auto _ : state) benchmark::DoNotOptimize(adiabatic_eliminate(blocks));
}
BENCHMARK(BM_EliminateMultiport);

void BM_EliminateDftSize(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  NetworkSpec spec;
  ComponentDef comp;
  comp.element = ElementDef::dft_multiport(n);
  comp.fiber_coupling = 1e9;
  for (int i = 0; i < 2 * n; ++i) {
    spec.cavities.push_back({"c" + std::to_string(i + 1)});
    (i < n ? comp.inputs : comp.outputs).push_back(Attachment::to(spec.cavities.back().id, 1e6));
  }
  spec.components.push_back(comp);
  const auto blocks = build_coupling_blocks(spec);
  for (auto _ : state) benchmark::DoNotOptimize(adiabatic_eliminate(blocks));
}
BENCHMARK(BM_EliminateDftSize)->RangeMultiplier(2)->Range(4, 64);

void BM_SimulateTwoCavity(benchmark::State& state) {
  const auto spec = builtin_example("fig2-two-cavity");
  const CVector psi0 = excite(spec, "c1");
  const auto steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(spec, Model::kFull, psi0, 7.85e-4, steps));
}
BENCHMARK(BM_SimulateTwoCavity)->Arg(1024)->Arg(16384);

void BM_Rk4Pyramid(benchmark::State& state) {
  const CMatrix h = build_full_hamiltonian(build_coupling_blocks(builtin_example("fig4-pyramid"))).matrix;
  CVector psi0 = CVector::Zero(h.rows());
  psi0(0) = 1.0;
  const double dt = 1e-3 / spectral_norm(h);
  for (auto _ : state) benchmark::DoNotOptimize(propagate_rk4(h, {psi0, 0.0}, 1e4 * dt, dt));
}
BENCHMARK(BM_Rk4Pyramid);

void BM_ReckDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) z(i, j) = Complex(normal(rng), normal(rng));
  }
  const CMatrix q = Eigen::HouseholderQR<CMatrix>(z).householderQ() * CMatrix::Identity(n, n);
  const auto u = Unitary::checked(q, 1e-10);
  for (auto _ : state) benchmark::DoNotOptimize(decompose_reck(u));
}
BENCHMARK(BM_ReckDecompose)->Arg(4)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
