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

#include <limits>
#include <optional>
#include <vector>

#include "kacfc/kac_solver.hpp"
#include "kacfc/torus_measures.hpp"

namespace kacfc {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Relative entropy sum (f log f - f + 1) nu with f = mu/nu. Returns +inf when
// mu charges a nu-null cell or has negative mass anywhere.
double rel_entropy(const GridMeasure& mu, const GridMeasure& nu);
double rel_entropy(const VelocityPair& mu, const VelocityPair& nu);
double rel_entropy(const KineticState& mu, const KineticState& nu);

// Ent(sigma | pi) against the uniform stationary measure.
double entropy_to_stationary(const KineticState& sigma);
// Ent(rho | Lebesgue) for a measure on the torus.
double entropy_to_lebesgue(const GridMeasure& rho);

// FI(sigma | pi) = sum over cells of (sqrt(sigma_+) - sqrt(sigma_-))^2 in masses.
double fisher_info(const KineticState& sigma);

// Generalised Fisher information of sigma relative to a reference state, summed
// cell by cell and velocity by velocity.
double generalized_fi(const KineticState& sigma, const KineticState& ref);

// Test function phi = (phi1, phi2) on cells x {+V, -V}.
struct TestFunctionGrid {
    std::vector<double> phi1_plus;
    std::vector<double> phi1_minus;
    std::vector<double> phi2_plus;
    std::vector<double> phi2_minus;

    static TestFunctionGrid zeros(std::size_t n);
};

// <phi, j> = sum phi1 j1 + phi2 j2 over cells and velocities.
double pairing(const TestFunctionGrid& phi, const FluxPair& j);

// H(sigma, phi) = sum [v phi1 + lambda (e^{phi2} - 1)] sigma.
double hamiltonian(const KineticState& sigma, const TestFunctionGrid& phi);

// Ent(j2 | lambda sigma) when j1 = v sigma within 1e-10 relative, +inf otherwise.
double lagrangian(const KineticState& sigma, const FluxPair& j);

// Maximiser phi2 = log(j2 / (lambda sigma)) of <phi, j> - H(sigma, phi) in the
// jump component. Cells with zero jump flux get phi2 = `floor`.
TestFunctionGrid legendre_argmax(const KineticState& sigma, const FluxPair& j, double floor = -60.0);

// sup_phi <phi, j> - H(sigma, phi) evaluated at the closed-form maximiser.
double lagrangian_sup_form(const KineticState& sigma, const FluxPair& j);

// Contribution of one interval to the rate functional. The transport flux is
// checked against the interval midpoint; the jump entropy is averaged over
// the two endpoint states.
double interval_rate(const KineticState& before, const KineticState& midpoint, const KineticState& after,
                     const FluxPair& flux, double dt, double lambda);

double rate_functional(const Trajectory& traj);
// Same functional with switching rate V^2/(2 alpha).
double rate_functional_rescaled(const Trajectory& traj, double alpha);

// Accumulates the rate functional step by step from a solver stream.
class RateAccumulator {
public:
    explicit RateAccumulator(double lambda) : lambda_(lambda) {}
    void operator()(const StepView& step);
    double value() const { return value_; }

private:
    double lambda_;
    double value_ = 0.0;
};

Trajectory mollify(const Trajectory& traj, double eps);

struct FunctionalRow {
    double t = 0.0;
    double entropy = 0.0;
    double fi = 0.0;
    double fi_integral = 0.0;
    double rate_cum = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
};

struct FunctionalReport {
    double entropy_initial = 0.0;
    double entropy_final = 0.0;
    double fi_integral = 0.0;
    double rate_value = 0.0;
    // Smallest slack over all snapshot times.
    double fir_slack = 0.0;
    double tol_fir = 0.0;
    bool slack_ok = true;
    bool entropy_nonincreasing = true;
    std::vector<FunctionalRow> rows;
};

// Default tolerance 1e-8 + 10 dt^2 with dt the largest interval.
double default_fir_tolerance(const Trajectory& traj);

// Evaluates Ent(sigma_t|pi) + lambda int FI <= Ent(sigma_0|pi) + I at every
// snapshot. Throws IllPrepared when Ent(sigma_0|pi) is infinite.
FunctionalReport fir_check(const Trajectory& traj, std::optional<double> tol_fir = std::nullopt);

// Both sides of the generalised inequality with the time-dependent reference
// `ref` (same time grid). Slack is reported, not asserted.
FunctionalReport generalized_fir(const Trajectory& traj, const Trajectory& ref);

}  // namespace kacfc
