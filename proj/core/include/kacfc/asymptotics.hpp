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

#include <functional>
#include <string>
#include <vector>

#include "kacfc/projected.hpp"
#include "kacfc/torus_measures.hpp"

namespace kacfc {

enum class SweepMode { diffusive, hyperbolic };

std::string to_string(SweepMode m);

// Initial (rho, omega) on a given grid for given model parameters.
using InitialDatum = std::function<DensityFluxPair(const TorusGrid&, const ModelParams&)>;

// Smooth bump rho_0 = von Mises(kappa) with the equilibrium flux
// omega_0 = -alpha d_x rho_0.
InitialDatum diffusive_bump(double kappa, double alpha);
// Smooth bump with omega_0 = 0.
InitialDatum symmetric_bump(double kappa);
// rho_0 = von Mises(kappa), omega_0 = theta V rho_0 with |theta| <= 1.
InitialDatum tilted_bump(double kappa, double theta);

struct SweepSpec {
    SweepMode mode = SweepMode::diffusive;
    // V values (diffusive, increasing) or lambda values (hyperbolic, decreasing).
    std::vector<double> parameters;
    double alpha = 1.0;  // diffusive mode
    double V = 1.0;      // hyperbolic mode
    InitialDatum initial;
    double t_end = 1.0;
    double snapshot_dt = 1.0 / 64.0;
    // Grid policy: n = base_cells (p / base_parameter)^cell_exponent, rounded,
    // and dt = shift dx / V.
    std::size_t base_cells = 256;
    double base_parameter = 1.0;
    double cell_exponent = 0.0;
    std::size_t shift = 1;
    // Worker count for independent sweep entries, resolved by worker_count().
    unsigned threads = 0;
};

// Diffusive sweep with dx proportional to 1/V^2 and dt = dx/V.
SweepSpec diffusive_sweep_spec(double alpha, std::vector<double> V_list, InitialDatum initial, double t_end,
                               double snapshot_dt, std::size_t cells_at_first_V);
// Hyperbolic sweep on a fixed grid.
SweepSpec hyperbolic_sweep_spec(double V, std::vector<double> lambda_list, InitialDatum initial, double t_end,
                                double snapshot_dt, std::size_t cells, std::size_t shift = 1);

struct ConvergenceRecord {
    double parameter = 0.0;
    double V = 0.0;
    double lambda = 0.0;
    std::size_t n_cells = 0;
    double dt = 0.0;
    // sup over snapshots of W1(rho_t, reference rho_t).
    double sup_w1_rho = 0.0;
    // sup over snapshots of the bounded-Lipschitz bound between omega_t and the
    // reference flux (-alpha d_x rho for diffusive, wave omega for hyperbolic).
    double sup_dist_omega = 0.0;
    // int_0^T ||J_t||_TV dt with J = sum_v (v/V) j^2 (diffusive) or
    // J = sum_v v j^2 (hyperbolic).
    double derived_flux_tv = 0.0;
    // ||j^2||_TV([0,T] x Omega) and the exact-flux value lambda T.
    double jump_tv = 0.0;
    double jump_tv_bound = 0.0;
    // Rate functional of the step-level trajectory; rescaled in diffusive mode.
    double rate_functional = 0.0;
    double max_mass_drift = 0.0;
    double min_cell_mass = 0.0;
    bool cone_ok = true;
    // Filled in by equicontinuity_diagnostic.
    double holder_exponent = 0.0;
    double holder_constant = 0.0;
    // Snapshots with interval-averaged midpoints and fluxes.
    DensityFluxTrajectory snapshots;
};

struct SweepResult {
    SweepMode mode = SweepMode::diffusive;
    double alpha = 0.0;
    double V = 0.0;
    std::vector<ConvergenceRecord> records;
    // sup_t W1 errors strictly decrease along the parameter list.
    bool strictly_decreasing = false;
    double error_ratio = 0.0;  // last over first
    // Least-squares slope of log error against log parameter.
    double loglog_slope = 0.0;
    // Exact limit solution on the finest grid (heat pair or wave pair).
    DensityFluxTrajectory limit_reference;
    // Finest-parameter trajectory standing in for the limit point.
    DensityFluxTrajectory standin;
    std::string limit_note;
};

SweepResult run_diffusive_sweep(const SweepSpec& spec);
SweepResult run_hyperbolic_sweep(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec);

struct EquicontinuityFit {
    std::vector<double> h;
    // increments[i][m] = sup_t W1(rho_{t+h_m}, rho_t) for trajectory i.
    std::vector<std::vector<double>> increments;
    std::vector<double> exponents;
    // Fitted prefactor c in c h^exponent.
    std::vector<double> fitted_constants;
    // max_h increment / h^{1/2}, the uniform Hoelder-1/2 constant.
    std::vector<double> holder_constants;
    double min_exponent = 0.0;
    double constant_ratio = 1.0;
    // min_exponent >= 0.4 and constant_ratio <= 4.
    bool ok = false;
};

// Every h must be a multiple of the snapshot spacing of every trajectory.
EquicontinuityFit equicontinuity_diagnostic(const std::vector<const DensityFluxTrajectory*>& trajectories,
                                            const std::vector<double>& h_list);
// Same, storing the fitted exponent and Hoelder constant in each record.
EquicontinuityFit equicontinuity_diagnostic(std::vector<ConvergenceRecord>& records,
                                            const std::vector<double>& h_list);

// A test function psi(x), possibly adapted to the trajectory and interval.
struct TestFunction {
    std::string name;
    std::function<std::vector<double>(const DensityFluxTrajectory&, std::size_t interval)> eval;
};

TestFunction fixed_test_function(std::string name, std::function<double(double)> f);

// sin 2 pi x, cos 2 pi x, sin 4 pi x and -alpha d_x log rho (rho floored at
// 1e-8); diffusive banks also carry the pointwise optimiser
// -(alpha D rho + omega) / rho.
std::vector<TestFunction> default_psi_bank(SweepMode mode, double alpha);

struct LiminfReport {
    std::vector<std::string> psi_names;
    std::vector<double> parameters;
    // pairings[r][p] for record r and test function p.
    std::vector<std::vector<double>> pairings;
    // Pairing at the exact limit reference and at the finest-parameter
    // stand-in, per test function.
    std::vector<double> limit_pairings;
    std::vector<double> standin_pairings;
    std::vector<double> rate_values;
    // max_p |pairings[r][p] - limit_pairings[p]| per record.
    std::vector<double> distance_to_limit;
    // limit_pairings[p] <= min_r rate_values[r] + tolerance, per test function.
    std::vector<bool> below_rate;
    double tolerance = 1e-8;
    std::string note;
};

// Diffusive: int int [psi (J - omega / 2 alpha) - psi^2 rho / 4 alpha] with
// J = sum_v (v/V) j^2 at finite V and J = -D rho / 2 at the limit reference.
double diffusive_pairing(const DensityFluxTrajectory& traj, const TestFunction& psi, double alpha, bool limit);
// Hyperbolic: int int psi dJ with J = sum_v v j^2.
double hyperbolic_pairing(const DensityFluxTrajectory& traj, const TestFunction& psi);

LiminfReport liminf_pairing(const SweepResult& sweep, const std::vector<TestFunction>& bank);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kacfc
