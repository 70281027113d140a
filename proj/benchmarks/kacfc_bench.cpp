// Copyright 2026 The kacfc Authors
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

#include "kacfc/kac_particles.hpp"
#include "kacfc/kac_solver.hpp"
#include "kacfc/variational.hpp"

namespace {

using namespace kacfc;

KineticState bump_state(const TorusGrid& g, const ModelParams& p) {
    const GridMeasure rho = von_mises(g, 1.0, 0.3);
    return lift_pi(DensityFluxPair{rho, (0.5 * p.V) * rho}, p);
}

void BM_StepStrang(benchmark::State& st) {
    const TorusGrid g(static_cast<std::size_t>(st.range(0)));
    const ModelParams p(2.0, 1.0);
    KineticState s = bump_state(g, p);
    const double dt = g.dx() / p.V;
    for (auto _ : st) {
        StepResult r = step_strang(s, dt);
        benchmark::DoNotOptimize(r.state.plus.w.data());
        s = std::move(r.state);
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_StepStrang)->RangeMultiplier(4)->Range(256, 16384);

void BM_StepSpectral(benchmark::State& st) {
    const TorusGrid g(static_cast<std::size_t>(st.range(0)));
    const ModelParams p(2.0, 1.0);
    const KineticState s = bump_state(g, p);
    for (auto _ : st) {
        KineticState r = step_spectral(s, 0.25);
        benchmark::DoNotOptimize(r.plus.w.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_StepSpectral)->RangeMultiplier(4)->Range(256, 16384);

void BM_Wasserstein1(benchmark::State& st) {
    const TorusGrid g(static_cast<std::size_t>(st.range(0)));
    const GridMeasure a = von_mises(g, 1.0, 0.2);
    const GridMeasure b = von_mises(g, 2.0, 0.7);
    for (auto _ : st) benchmark::DoNotOptimize(wasserstein1(a, b));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Wasserstein1)->RangeMultiplier(4)->Range(256, 65536);

void BM_RateFunctional(benchmark::State& st) {
    const TorusGrid g(static_cast<std::size_t>(st.range(0)));
    const ModelParams p(1.0, 2.0);
    const Trajectory tr = solve(SolverConfig::make(g, p, g.dx() / p.V, 0.25), bump_state(g, p));
    for (auto _ : st) benchmark::DoNotOptimize(rate_functional(tr));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(tr.intervals()));
}
BENCHMARK(BM_RateFunctional)->Arg(256)->Arg(1024);

void BM_EnsembleRun(benchmark::State& st) {
    const TorusGrid g(256);
    const ModelParams p(1.0, 2.0);
    EnsembleConfig cfg{static_cast<std::size_t>(st.range(0)), p, 7, {0.0, 0.25, 0.5}, g,
                       static_cast<unsigned>(st.range(1))};
    const KineticState s0 = bump_state(g, p);
    for (auto _ : st) {
        auto snaps = ensemble_run(cfg, s0);
        benchmark::DoNotOptimize(snaps.data());
    }
    st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_EnsembleRun)->Args({10000, 1})->Args({10000, 0})->Args({100000, 0})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
