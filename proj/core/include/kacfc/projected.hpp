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

#include <vector>

#include "kacfc/kac_solver.hpp"
#include "kacfc/torus_measures.hpp"

namespace kacfc {

// Fluxes of the density-flux system. The first index names the kind of flux
// (transport or jump), the second the equation it enters (rho or omega).
struct ProjectedFlux {
    GridMeasure transport_rho;    // J^1_1, equals omega for solutions
    GridMeasure transport_omega;  // J^1_2, equals V^2 rho for solutions
    GridMeasure jump_rho;         // J^2_1
    GridMeasure jump_omega;       // J^2_2, equals lambda omega for solutions
};

// (rho, omega) at snapshot times plus per-interval midpoints and fluxes.
struct DensityFluxTrajectory {
    ModelParams params;
    std::vector<double> times;
    std::vector<GridMeasure> rho;
    std::vector<GridMeasure> omega;
    std::vector<GridMeasure> rho_mid;
    std::vector<GridMeasure> omega_mid;
    // May be empty when only (rho, omega) data is available.
    std::vector<ProjectedFlux> flux;

    std::size_t intervals() const { return rho_mid.size(); }
    double dt(std::size_t k) const { return times[k + 1] - times[k]; }
};

DensityFluxTrajectory project_trajectory(const Trajectory& traj);

// Heat flow pair: rho from the heat semigroup, omega the exact time average of
// -alpha d_x rho over each interval. Fluxes are left empty.
DensityFluxTrajectory heat_pair_trajectory(const GridMeasure& rho0, double alpha, double t_end,
                                           std::size_t intervals);

// Heat flow transported with constant drift delta, paired with
// omega = -alpha d_x rho + delta rho (exact interval averages).
DensityFluxTrajectory drifting_heat_pair_trajectory(const GridMeasure& rho0, double alpha, double delta,
                                                    double t_end, std::size_t intervals);

// d'Alembert solution of the wave equation with exact interval averages and
// fluxes (omega, V^2 rho, 0, 0).
DensityFluxTrajectory wave_pair_trajectory(const DensityFluxPair& pair0, double V, double t_end,
                                           std::size_t intervals);

// Projected functional: entropy of the lifted jump flux against lambda times the
// lifted state, +inf unless J^1_1 = omega and J^1_2 = V^2 rho. Throws
// ConeViolation for states outside the cone.
double projected_functional(const DensityFluxTrajectory& traj);

struct ProjectedFirRow {
    double t = 0.0;
    double entropy = 0.0;  // Ent(rho_t | Lebesgue)
    double g = 0.0;        // int_0^t int |d omega / d rho|^2 d rho dr
};

struct ProjectedFirReport {
    std::vector<ProjectedFirRow> rows;
    // Largest ratio ||omega||_TV(B x C) / ||rho||_TV(B x C)^{1/2} over the
    // window family, and the Cauchy-Schwarz bound sqrt(G_T) it must respect.
    double c_fit = 0.0;
    double c_bound = 0.0;
};

ProjectedFirReport projected_fir_terms(const DensityFluxTrajectory& traj);

// Maximum over intervals of the cell-wise residual of
// rho_{k+1} - rho_k + dt d_x omega_mid (spectral derivative), in mass units.
double continuity_residual(const DensityFluxTrajectory& traj);

struct DiffusiveLimitReport {
    double value = 0.0;           // direct quadratic form
    double value_via_flux = 0.0;  // with alpha D rho replaced by -2 alpha J (NaN without fluxes)
    double fisher_term = 0.0;     // int int |D rho / rho|^2 rho
    double metric_term = 0.0;     // int int |omega / rho|^2 rho
    double cross_term = 0.0;      // int int (D rho / rho) omega
    double entropy_difference = 0.0;
    double expanded_value = 0.0;  // half of (alpha/2 fisher + metric/(2 alpha) + entropy difference)
    double identity_gap = 0.0;    // |value - expanded_value|
    double max_ce_residual = 0.0;
    bool positive = true;
};

// Throws ContinuityViolation when the continuity residual exceeds 1e-8 in some
// interval. Returns value = +inf if rho is not strictly positive.
DiffusiveLimitReport limit_functional_diffusive(const DensityFluxTrajectory& traj, double alpha);

struct HyperbolicLimitReport {
    double value = 0.0;  // 0 or +inf
    double max_rho_residual = 0.0;
    double max_omega_residual = 0.0;
    double max_flux_tv = 0.0;
};

HyperbolicLimitReport limit_functional_hyperbolic(const DensityFluxTrajectory& traj);

}  // namespace kacfc
