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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "kacfc/torus_measures.hpp"

namespace kacfc {

enum class Scheme { strang_split, spectral_oracle };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);

struct SolverConfig {
    TorusGrid grid;
    ModelParams params;
    double dt = 0.0;
    double t_end = 0.0;
    Scheme scheme = Scheme::strang_split;
    // The caller's dt before rounding, kept for reporting.
    double requested_dt = 0.0;

    // Number of steps; t_end is reached exactly when it is a multiple of dt,
    // otherwise the run stops at the first step past t_end.
    std::size_t n_steps() const;

    // Builds a config, rounding dt down to the nearest value with an integer
    // transport shift when the scheme is strang_split.
    static SolverConfig make(const TorusGrid& grid, const ModelParams& params, double dt, double t_end,
                             Scheme scheme = Scheme::strang_split);
    bool dt_rounded() const { return requested_dt != dt; }
};

// Integer cell shift V dt / dx. Throws CflViolation unless it is a positive
// integer within 1e-12.
std::size_t cfl_shift(const TorusGrid& grid, double V, double dt);

struct StepResult {
    KineticState state;
    KineticState midpoint;
    FluxPair flux;
};

// Strang splitting: half collision, exact shift, half collision. Fluxes are
// recorded at the midpoint of the transport sub-step.
StepResult step_strang(const KineticState& sigma, double dt);

// Exact evolution over time t of every Fourier mode of (rho, omega).
KineticState step_spectral(const KineticState& sigma, double t);

struct Trajectory {
    SolverConfig config;
    std::vector<double> times;
    std::vector<KineticState> states;
    // One entry per interval [t_k, t_{k+1}).
    std::vector<KineticState> midpoints;
    std::vector<FluxPair> fluxes;

    std::size_t intervals() const { return fluxes.size(); }
    double dt(std::size_t k) const { return times[k + 1] - times[k]; }
};

struct StepView {
    std::size_t k;
    double t0;
    double t1;
    const KineticState& before;
    const KineticState& midpoint;
    const KineticState& after;
    const FluxPair& flux;
};

using StepObserver = std::function<void(const StepView&)>;

// Runs the configured scheme and reports every step to `observer` without
// storing the trajectory.
KineticState integrate(const SolverConfig& config, const KineticState& sigma0, const StepObserver& observer);

// Stores every `stride`-th state. Fluxes and midpoints of a stored interval are
// the averages over its steps, so the stored trajectory still satisfies the
// discrete continuity equation. n_steps must be a multiple of stride.
Trajectory solve(const SolverConfig& config, const KineticState& sigma0, std::size_t stride = 1);

// Builds trajectories incrementally from a step stream; usable as an observer.
class TrajectoryRecorder {
public:
    TrajectoryRecorder(const SolverConfig& config, const KineticState& sigma0, std::size_t stride);
    void operator()(const StepView& step);
    Trajectory take();

private:
    Trajectory traj_;
    std::size_t stride_;
    std::size_t in_window_ = 0;
    KineticState mid_acc_;
    FluxPair flux_acc_;
};

GridMeasure heat_reference(const GridMeasure& rho0, double alpha, double t);

// Time average of the heat flux -alpha d_x rho over [t0, t1], exact per mode.
GridMeasure heat_flux_average(const GridMeasure& rho0, double alpha, double t0, double t1);

DensityFluxPair wave_reference(const DensityFluxPair& pair0, double V, double t);

}  // namespace kacfc
