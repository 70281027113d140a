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

#include "kacfc/kac_particles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace kacfc {
namespace {

constexpr std::uint64_t kInitTag = 0;
constexpr std::uint64_t kDynamicsTag = 1;

std::uint64_t splitmix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double wrap_unit(double x) {
    x -= std::floor(x);
    // floor can leave x == 1 after round-off for tiny negative inputs.
    return x >= 1.0 ? 0.0 : x;
}

}  // namespace

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t particle, std::uint64_t tag, std::uint64_t counter) {
    std::uint64_t h = splitmix(seed);
    h = splitmix(h ^ particle);
    h = splitmix(h ^ (tag * 0xd1b54a32d192ed03ULL));
    return splitmix(h ^ counter);
}

std::uint64_t ParticleStream::next_u64() { return counter_hash(seed_, particle_, tag_, counter_++); }

double ParticleStream::uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double ParticleStream::exponential(double rate) {
    if (rate <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(uniform()) / rate;
}

ParticlePath simulate_particle(const Particle& p0, const ModelParams& params, double t_end, ParticleStream& rng) {
    if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be nonnegative");
    ParticlePath path;
    Particle p = p0;
    double t = 0.0;
    while (true) {
        const double tau = rng.exponential(params.lambda);
        if (t + tau >= t_end) {
            p.x = wrap_unit(p.x + p.v * params.V * (t_end - t));
            break;
        }
        p.x = wrap_unit(p.x + p.v * params.V * tau);
        t += tau;
        p.v = -p.v;
        path.event_times.push_back(t);
    }
    path.final_state = p;
    return path;
}

Particle advance_particle(Particle p, const ModelParams& params, double duration, ParticleStream& rng,
                          std::size_t* events) {
    double t = 0.0;
    while (true) {
        const double tau = rng.exponential(params.lambda);
        if (t + tau >= duration) {
            p.x = wrap_unit(p.x + p.v * params.V * (duration - t));
            return p;
        }
        p.x = wrap_unit(p.x + p.v * params.V * tau);
        t += tau;
        p.v = -p.v;
        if (events) ++*events;
    }
}

KineticState empirical_measure(const std::vector<Particle>& particles, const TorusGrid& bin_grid,
                               const ModelParams& params) {
    if (particles.empty()) throw InvalidArgument("empirical measure of an empty ensemble");
    std::vector<std::uint64_t> plus(bin_grid.n(), 0), minus(bin_grid.n(), 0);
    for (const auto& p : particles) {
        const std::size_t c = bin_grid.cell_of(p.x);
        (p.v > 0 ? plus : minus)[c] += 1;
    }
    const double inv = 1.0 / static_cast<double>(particles.size());
    GridMeasure mp = GridMeasure::zeros(bin_grid);
    GridMeasure mm = GridMeasure::zeros(bin_grid);
    for (std::size_t i = 0; i < bin_grid.n(); ++i) {
        mp.w[i] = static_cast<double>(plus[i]) * inv;
        mm.w[i] = static_cast<double>(minus[i]) * inv;
    }
    return KineticState(params, std::move(mp), std::move(mm));
}

namespace {

// Cumulative masses over (plus cells, minus cells).
std::vector<double> cumulative(const KineticState& sigma) {
    const std::size_t n = sigma.grid().n();
    std::vector<double> c(2 * n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) c[i] = (acc += std::max(sigma.plus.w[i], 0.0));
    for (std::size_t i = 0; i < n; ++i) c[n + i] = (acc += std::max(sigma.minus.w[i], 0.0));
    return c;
}

Particle sample_from_cdf(const std::vector<double>& cdf, const TorusGrid& g, std::uint64_t seed,
                         std::uint64_t index) {
    ParticleStream rng(seed, index, kInitTag);
    const double u = rng.uniform() * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    std::size_t k = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
    // Skip empty categories that upper_bound may land on at the right edge.
    while (k > 0 && cdf[k] == cdf[k - 1]) --k;
    const std::size_t n = g.n();
    Particle p;
    p.v = k < n ? 1 : -1;
    const std::size_t cell = k % n;
    p.x = wrap_unit((static_cast<double>(cell) + rng.uniform()) * g.dx());
    return p;
}

}  // namespace

Particle sample_particle(const KineticState& sigma, std::uint64_t seed, std::uint64_t index) {
    return sample_from_cdf(cumulative(sigma), sigma.grid(), seed, index);
}

std::vector<Particle> sample_particles(const KineticState& sigma, std::size_t n, std::uint64_t seed) {
    const auto cdf = cumulative(sigma);
    std::vector<Particle> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = sample_from_cdf(cdf, sigma.grid(), seed, i);
    return out;
}

unsigned worker_count(unsigned requested) {
    unsigned n = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("KAC_THREADS")) {
        try {
            const long cap = std::stol(env);
            if (cap > 0) n = std::min(n, static_cast<unsigned>(cap));
        } catch (const std::exception&) {
        }
    }
    return n;
}

std::vector<std::pair<double, KineticState>> ensemble_run(const EnsembleConfig& config, const KineticState& sigma0) {
    if (config.n_particles == 0) throw InvalidArgument("ensemble needs at least one particle");
    if (!std::is_sorted(config.snapshot_times.begin(), config.snapshot_times.end()))
        throw InvalidArgument("snapshot times must be sorted");
    if (!config.snapshot_times.empty() && config.snapshot_times.front() < 0.0)
        throw InvalidArgument("snapshot times must be nonnegative");
    const std::size_t N = config.n_particles;
    const std::size_t S = config.snapshot_times.size();
    const std::size_t nb = config.bin_grid.n();
    const auto cdf = cumulative(sigma0);
    const unsigned W = static_cast<unsigned>(std::min<std::size_t>(worker_count(config.threads), N));

    // counts[w][s * 2 nb + 2 cell + (v < 0)]
    std::vector<std::vector<std::uint64_t>> counts(W, std::vector<std::uint64_t>(S * 2 * nb, 0));
    auto work = [&](unsigned w) {
        const std::size_t begin = N * w / W;
        const std::size_t end = N * (w + 1) / W;
        auto& c = counts[w];
        for (std::size_t i = begin; i < end; ++i) {
            Particle p = sample_from_cdf(cdf, sigma0.grid(), config.seed, i);
            ParticleStream rng(config.seed, i, kDynamicsTag);
            double t = 0.0;
            for (std::size_t s = 0; s < S; ++s) {
                p = advance_particle(p, config.params, config.snapshot_times[s] - t, rng);
                t = config.snapshot_times[s];
                c[s * 2 * nb + 2 * config.bin_grid.cell_of(p.x) + (p.v < 0 ? 1 : 0)] += 1;
            }
        }
    };
    if (W == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < W; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    std::vector<std::pair<double, KineticState>> out;
    const double inv = 1.0 / static_cast<double>(N);
    for (std::size_t s = 0; s < S; ++s) {
        GridMeasure mp = GridMeasure::zeros(config.bin_grid);
        GridMeasure mm = GridMeasure::zeros(config.bin_grid);
        for (std::size_t i = 0; i < nb; ++i) {
            std::uint64_t cp = 0;
            std::uint64_t cm = 0;
            for (unsigned w = 0; w < W; ++w) {
                cp += counts[w][s * 2 * nb + 2 * i];
                cm += counts[w][s * 2 * nb + 2 * i + 1];
            }
            mp.w[i] = static_cast<double>(cp) * inv;
            mm.w[i] = static_cast<double>(cm) * inv;
        }
        out.emplace_back(config.snapshot_times[s], KineticState(config.params, std::move(mp), std::move(mm)));
    }
    return out;
}

}  // namespace kacfc
