// Copyright 2026 The billiard-prop Authors
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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "billiard/observables.hpp"
#include "billiard/propagator.hpp"
#include "billiard/theta.hpp"

namespace {

using namespace billiard;

void BM_Theta3(benchmark::State &state) {
    const double eps = std::pow(10.0, -static_cast<double>(state.range(0)));
    const Nome q = Nome::from_log({-std::numbers::pi * eps, 0.7});
    double z = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta3(z, q, {}));
        z += 1e-7;
    }
}
BENCHMARK(BM_Theta3)->DenseRange(1, 4);

void BM_GreensTheta(benchmark::State &state) {
    const auto shape = static_cast<Shape>(state.range(0));
    const BoxSpec spec{1.0, 1.0, 1.0};
    const Point2 p{0.3, 0.1};
    const Point2 q{0.2, -0.05};
    for (auto _ : state) {
        benchmark::DoNotOptimize(greens_theta(shape, p, q, 0.3, spec, {}));
    }
    state.SetLabel(std::string(to_string(shape)));
}
BENCHMARK(BM_GreensTheta)->DenseRange(0, 4);

void BM_GreensOracle(benchmark::State &state) {
    const BoxSpec spec{1.0, 1.0, 1.0};
    const int n_cut = spectral_cutoff(Shape::Square, spec, 1e-3, 1e-10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            greens_spectral_oracle(Shape::Square, {0.3, 0.1}, {0.2, -0.05}, 0.3, spec, n_cut, 1e-3));
    }
    state.SetLabel("n_cut=" + std::to_string(n_cut));
}
BENCHMARK(BM_GreensOracle);

void BM_PropagateGrid(benchmark::State &state) {
    const auto shape = static_cast<Shape>(state.range(0));
    const int n = static_cast<int>(state.range(1));
    const BoxSpec spec{1.0, 1.0, 1.0};
    const QuantumNumbers qn = shape == Shape::Triangle ? QuantumNumbers{1, 2}
                                                       : QuantumNumbers{1, 1};
    const Superposition s({{1.0, EigenState::make(shape, qn, spec)}});
    const auto lattice = GridState::uniform(ShapeDomain{shape, spec}, n);
    const auto initial = GridState::from_superposition(s, lattice.nx(), lattice.ny());
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_grid(initial, 0.3, {}));
    }
    state.SetLabel(std::string(to_string(shape)));
}
BENCHMARK(BM_PropagateGrid)
    ->ArgsProduct({{1, 2, 3}, {33, 65, 129}})
    ->Unit(benchmark::kMillisecond);

void BM_CovarianceDirect(benchmark::State &state) {
    const BoxSpec spec{2.0, 1.0, 1.0};
    const auto s = two_mode_example_state(spec);
    const QuadConfig quad{static_cast<int>(state.range(0)), 1e-10};
    for (auto _ : state) {
        benchmark::DoNotOptimize(covariance_direct(s, 0.2, quad));
    }
}
BENCHMARK(BM_CovarianceDirect)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
