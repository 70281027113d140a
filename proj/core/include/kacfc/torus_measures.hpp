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
#include <vector>

#include "kacfc/errors.hpp"

namespace kacfc {

// Uniform periodic grid on the unit torus. Cell i covers [i dx, (i+1) dx).
class TorusGrid {
public:
    TorusGrid() = default;
    explicit TorusGrid(std::size_t n_cells);

    std::size_t n() const noexcept { return n_; }
    double dx() const noexcept { return dx_; }
    double center(std::size_t i) const noexcept { return (static_cast<double>(i) + 0.5) * dx_; }
    std::size_t wrap(long long i) const noexcept;
    // Cell containing the torus point x (x is reduced modulo 1 first).
    std::size_t cell_of(double x) const noexcept;

    bool operator==(const TorusGrid& o) const noexcept { return n_ == o.n_; }

private:
    std::size_t n_ = 0;
    double dx_ = 0.0;
};

// A (possibly signed) measure on the torus stored as cell masses.
struct GridMeasure {
    TorusGrid grid;
    std::vector<double> w;

    GridMeasure() = default;
    GridMeasure(const TorusGrid& g, std::vector<double> weights);

    static GridMeasure zeros(const TorusGrid& g);
    static GridMeasure uniform(const TorusGrid& g, double mass = 1.0);
    // Point mass placed in the cell containing x.
    static GridMeasure dirac(const TorusGrid& g, double x, double mass = 1.0);
    // Cell masses f(x_i) dx sampled at cell centers.
    static GridMeasure from_density(const TorusGrid& g, const std::function<double(double)>& f);

    std::size_t size() const noexcept { return w.size(); }
    double total_mass() const;
    double density(std::size_t i) const { return w[i] / grid.dx(); }
    std::vector<double> densities() const;

    GridMeasure& operator+=(const GridMeasure& o);
    GridMeasure& operator-=(const GridMeasure& o);
    GridMeasure& operator*=(double s);
};

GridMeasure operator+(GridMeasure a, const GridMeasure& b);
GridMeasure operator-(GridMeasure a, const GridMeasure& b);
GridMeasure operator*(double s, GridMeasure a);

struct ModelParams {
    double V = 1.0;
    double lambda = 0.0;

    ModelParams() = default;
    ModelParams(double V_, double lambda_);
    // alpha = V^2/(2 lambda); throws InvalidArgument when lambda = 0.
    double alpha() const;
    double tau() const;
    // Parameters of the diffusive rescaling with fixed alpha.
    static ModelParams diffusive(double V, double alpha);
};

// Measure on the torus times {+V, -V}.
struct KineticState {
    ModelParams params;
    GridMeasure plus;
    GridMeasure minus;

    KineticState() = default;
    KineticState(const ModelParams& p, GridMeasure plus_, GridMeasure minus_);

    // Uniform probability measure, mass dx/2 per cell and velocity.
    static KineticState stationary(const TorusGrid& g, const ModelParams& p);

    const TorusGrid& grid() const noexcept { return plus.grid; }
    double total_mass() const;
    // Swap of the two velocity channels.
    KineticState reversed() const;
};

struct DensityFluxPair {
    GridMeasure rho;
    GridMeasure omega;
};

// Pair of measures indexed by velocity sign.
struct VelocityPair {
    GridMeasure plus;
    GridMeasure minus;
};

// Continuity-equation fluxes: j1 is the transport flux, j2 the jump flux.
struct FluxPair {
    VelocityPair j1;
    VelocityPair j2;

    // The fluxes of an exact solution at state sigma: (v sigma, lambda sigma).
    static FluxPair canonical(const KineticState& sigma);
};

DensityFluxPair project_pi(const KineticState& sigma);
// Inverse of project_pi. Throws ConeViolation when |omega_i| > V rho_i + 1e-10 V.
KineticState lift_pi(const DensityFluxPair& pair, const ModelParams& params);
// Linear versions acting on arbitrary signed pairs (used for fluxes).
DensityFluxPair project_pi(const VelocityPair& mu, double V);
VelocityPair lift_pi_linear(const DensityFluxPair& pair, double V);

double tv_norm(const GridMeasure& mu);

// Exact periodic W1 between two nonnegative measures of equal mass.
// Throws MassMismatch when the masses differ by more than 1e-9.
double wasserstein1(const GridMeasure& mu, const GridMeasure& nu);

// Kantorovich-Rubinstein norm of a signed measure of zero total mass.
double kr_norm(const GridMeasure& d);

// Upper bound for the bounded-Lipschitz distance between two signed measures:
// |mass difference| + kr_norm of the mass-corrected difference.
double bl_upper_bound(const GridMeasure& mu, const GridMeasure& nu);

// Circular convolution with the wrapped heat kernel of variance eps.
GridMeasure mollify(const GridMeasure& mu, double eps);
KineticState mollify(const KineticState& sigma, double eps);

// Normalised von Mises profile exp(kappa cos(2 pi (x - x0))) as a probability measure.
GridMeasure von_mises(const TorusGrid& g, double kappa, double x0 = 0.5);

}  // namespace kacfc
