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

#include <algorithm>
#include <cstdlib>

#include <gtest/gtest.h>

#include "kacfc/asymptotics.hpp"
#include "kacfc/kac_particles.hpp"
#include "test_util.hpp"

namespace kacfc {
namespace {

TEST(ParticleStream, UniformAndExponential) {
    ParticleStream rng(1, 2);
    double mean = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double u = rng.uniform();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        mean += u;
    }
    EXPECT_NEAR(mean / 20000.0, 0.5, 0.01);
    EXPECT_EQ(rng.counter(), 20000u);
    EXPECT_TRUE(std::isinf(rng.exponential(0.0)));
    ParticleStream a(5, 9, 1);
    ParticleStream b(5, 9, 1);
    ParticleStream c(5, 10, 1);
    EXPECT_EQ(a.next_u64(), b.next_u64());
    EXPECT_NE(counter_hash(5, 9, 1, 0), counter_hash(5, 10, 1, 0));
    EXPECT_NE(counter_hash(5, 9, 0, 0), counter_hash(5, 9, 1, 0));
    EXPECT_NE(a.next_u64(), c.next_u64());
}

TEST(SimulateParticle, DeterministicMotionWithoutSwitching) {
    ParticleStream rng(3, 0);
    const ParticlePath path = simulate_particle(Particle{0.0, 1}, ModelParams(2.0, 0.0), 0.25, rng);
    EXPECT_TRUE(path.event_times.empty());
    EXPECT_NEAR(path.final_state.x, 0.5, 1e-15);
    EXPECT_EQ(path.final_state.v, 1);
}

TEST(SimulateParticle, MeanEventCountIsLambdaT) {
    const ModelParams p(2.0, 0.5);
    const int paths = 10000;
    double sum = 0.0;
    double sum2 = 0.0;
    for (int i = 0; i < paths; ++i) {
        ParticleStream rng(17, static_cast<std::uint64_t>(i));
        const auto n = static_cast<double>(simulate_particle(Particle{0.3, -1}, p, 10.0, rng).event_times.size());
        sum += n;
        sum2 += n * n;
    }
    const double mean = sum / paths;
    const double se = std::sqrt((sum2 / paths - mean * mean) / paths);
    EXPECT_LT(std::abs(mean - 5.0), 3.0 * se);
}

TEST(SimulateParticle, RepeatIsBitIdentical) {
    const ModelParams p(1.5, 3.0);
    ParticleStream a(99, 4);
    ParticleStream b(99, 4);
    const ParticlePath pa = simulate_particle(Particle{0.1, 1}, p, 5.0, a);
    const ParticlePath pb = simulate_particle(Particle{0.1, 1}, p, 5.0, b);
    EXPECT_EQ(pa.event_times, pb.event_times);
    EXPECT_EQ(pa.final_state.x, pb.final_state.x);
    EXPECT_EQ(pa.final_state.v, pb.final_state.v);
    EXPECT_TRUE(std::is_sorted(pa.event_times.begin(), pa.event_times.end()));
}

TEST(SimulateParticle, PositionFollowsVelocityBetweenEvents) {
    const ModelParams p(1.7, 2.0);
    ParticleStream rng(12, 1);
    const Particle p0{0.42, 1};
    const ParticlePath path = simulate_particle(p0, p, 3.0, rng);
    // Reconstruct the endpoint from the event times alone.
    double x = p0.x;
    int v = p0.v;
    double t = 0.0;
    for (double te : path.event_times) {
        x += v * p.V * (te - t);
        t = te;
        v = -v;
    }
    x += v * p.V * (3.0 - t);
    x -= std::floor(x);
    EXPECT_NEAR(std::min(std::abs(x - path.final_state.x), 1.0 - std::abs(x - path.final_state.x)), 0.0, 1e-12);
    EXPECT_EQ(v, path.final_state.v);
}

TEST(EmpiricalMeasure, Examples) {
    const TorusGrid g(4);
    const ModelParams p(1.0, 1.0);
    const KineticState one = empirical_measure({Particle{0.5, 1}}, g, p);
    EXPECT_EQ(one.plus.w, (std::vector<double>{0.0, 0.0, 1.0, 0.0}));
    EXPECT_EQ(one.minus.w, (std::vector<double>{0.0, 0.0, 0.0, 0.0}));
    std::vector<Particle> same(7, Particle{0.1, -1});
    const KineticState all = empirical_measure(same, g, p);
    EXPECT_EQ(all.minus.w[0], 1.0);
    EXPECT_EQ(all.total_mass(), 1.0);
}

TEST(EmpiricalMeasure, PermutationInvariant) {
    const TorusGrid g(16);
    const ModelParams p(1.0, 1.0);
    std::vector<Particle> ps = sample_particles(KineticState::stationary(g, p), 500, 4);
    const KineticState a = empirical_measure(ps, g, p);
    std::mt19937_64 rng(1);
    std::shuffle(ps.begin(), ps.end(), rng);
    const KineticState b = empirical_measure(ps, g, p);
    EXPECT_EQ(a.plus.w, b.plus.w);
    EXPECT_EQ(a.minus.w, b.minus.w);
}

TEST(EmpiricalMeasure, StationarySamplesConvergeAtMonteCarloRate) {
    const TorusGrid g(256);
    const ModelParams p(1.0, 1.0);
    const KineticState pi = KineticState::stationary(g, p);
    const GridMeasure u = GridMeasure::uniform(g);
    std::vector<double> Ns;
    std::vector<double> errs;
    for (double N : {1e3, 1e4, 1e5}) {
        double e = 0.0;
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto ps = sample_particles(pi, static_cast<std::size_t>(N), seed);
            e += wasserstein1(project_pi(empirical_measure(ps, g, p)).rho, u);
        }
        Ns.push_back(N);
        errs.push_back(e / 10.0);
    }
    EXPECT_NEAR(loglog_slope(Ns, errs), -0.5, 0.1);
}

TEST(SampleParticle, StaysInsideSampledCell) {
    const TorusGrid g(8);
    const ModelParams p(1.0, 1.0);
    const KineticState s(p, GridMeasure::dirac(g, 0.3), GridMeasure::zeros(g));
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Particle q = sample_particle(s, 1, i);
        EXPECT_EQ(g.cell_of(q.x), g.cell_of(0.3));
        EXPECT_EQ(q.v, 1);
    }
}

EnsembleConfig base_config(std::size_t N, unsigned threads) {
    EnsembleConfig c;
    c.n_particles = N;
    c.params = ModelParams(2.0, 0.5);
    c.seed = 7;
    c.snapshot_times = {0.0, 0.2, 0.5};
    c.bin_grid = TorusGrid(64);
    c.threads = threads;
    return c;
}

TEST(EnsembleRun, IndependentOfWorkerCount) {
    const KineticState s0 = lift_pi({von_mises(TorusGrid(64), 2.0), GridMeasure::zeros(TorusGrid(64))},
                                    ModelParams(2.0, 0.5));
    const auto a = ensemble_run(base_config(5000, 1), s0);
    for (unsigned w : {2u, 3u, 8u}) {
        const auto b = ensemble_run(base_config(5000, w), s0);
        ASSERT_EQ(a.size(), b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            EXPECT_EQ(a[k].second.plus.w, b[k].second.plus.w);
            EXPECT_EQ(a[k].second.minus.w, b[k].second.minus.w);
        }
    }
}

TEST(EnsembleRun, WithoutSwitchingIsAShiftOfTheSample) {
    const TorusGrid g(64);
    EnsembleConfig c = base_config(3000, 2);
    c.params = ModelParams(1.3, 0.0);
    c.snapshot_times = {0.3};
    const KineticState s0 = KineticState::stationary(g, c.params);
    const auto out = ensemble_run(c, s0);
    std::vector<Particle> ps = sample_particles(s0, c.n_particles, c.seed);
    for (auto& q : ps) {
        q.x += q.v * c.params.V * 0.3;
        q.x -= std::floor(q.x);
    }
    const KineticState ref = empirical_measure(ps, g, c.params);
    EXPECT_LT(test::max_abs_diff(out[0].second, ref), 1e-15);
}

TEST(EnsembleRun, VelocityMarginalEquilibrates) {
    const TorusGrid g(32);
    EnsembleConfig c = base_config(20000, 0);
    c.params = ModelParams(1.0, 5.0);
    c.snapshot_times = {4.0};
    c.bin_grid = g;
    const KineticState s0(c.params, GridMeasure::uniform(g), GridMeasure::zeros(g));
    const auto out = ensemble_run(c, s0);
    const double frac = out[0].second.plus.total_mass();
    EXPECT_LT(std::abs(frac - 0.5), 3.0 / std::sqrt(4.0 * 20000.0));
}

TEST(EnsembleRun, SingleParticleGivesSingleAtoms) {
    const TorusGrid g(64);
    EnsembleConfig c = base_config(1, 0);
    const auto out = ensemble_run(c, KineticState::stationary(g, c.params));
    for (const auto& [t, s] : out) {
        int atoms = 0;
        for (std::size_t i = 0; i < g.n(); ++i) atoms += (s.plus.w[i] == 1.0) + (s.minus.w[i] == 1.0);
        EXPECT_EQ(atoms, 1);
        EXPECT_EQ(s.total_mass(), 1.0);
    }
}

TEST(EnsembleRun, Validation) {
    const KineticState s0 = KineticState::stationary(TorusGrid(64), ModelParams(2.0, 0.5));
    EXPECT_THROW(ensemble_run(base_config(0, 1), s0), InvalidArgument);
    EnsembleConfig c = base_config(10, 1);
    c.snapshot_times = {0.5, 0.1};
    EXPECT_THROW(ensemble_run(c, s0), InvalidArgument);
}

TEST(WorkerCount, EnvironmentCapsRequest) {
    ::setenv("KAC_THREADS", "2", 1);
    EXPECT_EQ(worker_count(8), 2u);
    EXPECT_EQ(worker_count(1), 1u);
    EXPECT_LE(worker_count(0), 2u);
    ::unsetenv("KAC_THREADS");
    EXPECT_EQ(worker_count(5), 5u);
    EXPECT_GE(worker_count(0), 1u);
}

}  // namespace
}  // namespace kacfc
