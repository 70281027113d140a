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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "kacfc/torus_measures.hpp"

namespace kacfc {

struct Particle {
    double x = 0.0;  // in [0, 1)
    int v = 1;       // +1 or -1; the velocity is v V
};

// Counter-based random stream: the k-th draw is a hash of
// (seed, particle, tag, k), independent of evaluation order.
class ParticleStream {
public:
    ParticleStream(std::uint64_t seed, std::uint64_t particle, std::uint64_t tag = 0)
        : seed_(seed), particle_(particle), tag_(tag) {}

    std::uint64_t next_u64();
    // Uniform in (0, 1).
    double uniform();
    double exponential(double rate);
    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_;
    std::uint64_t particle_;
    std::uint64_t tag_;
    std::uint64_t counter_ = 0;
};

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t particle, std::uint64_t tag, std::uint64_t counter);

struct ParticlePath {
    std::vector<double> event_times;
    Particle final_state;
};

// Exact event-driven simulation over [0, t_end].
ParticlePath simulate_particle(const Particle& p0, const ModelParams& params, double t_end, ParticleStream& rng);

// Advances a particle from its current time over a duration; no event list kept.
Particle advance_particle(Particle p, const ModelParams& params, double duration, ParticleStream& rng,
                          std::size_t* events = nullptr);

KineticState empirical_measure(const std::vector<Particle>& particles, const TorusGrid& bin_grid,
                               const ModelParams& params);

// Draws particle `index` from sigma: cell and velocity by inverse CDF, position
// uniform within the cell.
Particle sample_particle(const KineticState& sigma, std::uint64_t seed, std::uint64_t index);
std::vector<Particle> sample_particles(const KineticState& sigma, std::size_t n, std::uint64_t seed);

struct EnsembleConfig {
    std::size_t n_particles = 1;
    ModelParams params;
    std::uint64_t seed = 0;
    std::vector<double> snapshot_times;
    TorusGrid bin_grid;
    // Worker count; 0 selects the hardware count. KAC_THREADS caps either.
    unsigned threads = 0;
};

// Runs N independent particles started from sigma0 and bins them at every
// snapshot time. Output does not depend on the worker count.
std::vector<std::pair<double, KineticState>> ensemble_run(const EnsembleConfig& config, const KineticState& sigma0);

// The requested worker count (hardware concurrency when 0), capped by
// KAC_THREADS when that is set.
unsigned worker_count(unsigned requested = 0);

}  // namespace kacfc
