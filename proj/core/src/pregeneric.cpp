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

#include "kacfc/pregeneric.hpp"

#include <cmath>
#include <sstream>

#include "kacfc/variational.hpp"

namespace kacfc {

DualField DualField::zeros(std::size_t n) {
    return DualField{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                     std::vector<double>(n, 0.0)};
}

PreGenericBlocks::PreGenericBlocks(const DensityFluxPair& state, const ModelParams& params)
    : params_(params), state_(state) {
    const KineticState lifted = lift_pi(state, params);
    const TorusGrid& g = state.rho.grid;
    const std::size_t n = g.n();
    s_plus_ = lifted.plus.densities();
    s_minus_ = lifted.minus.densities();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(s_plus_[i] > 0.0) || !(s_minus_[i] > 0.0)) {
            std::ostringstream os;
            os << "lifted state vanishes in cell " << i << "; the driving entropy is not differentiable there";
            throw DegenerateState(os.str());
        }
    }
    S_ = entropy_to_stationary(lifted);
    const double V = params.V;
    dS_drho_.resize(n);
    dS_domega_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        dS_drho_[i] = 0.5 * std::log(4.0 * s_plus_[i] * s_minus_[i]);
        dS_domega_[i] = std::log(s_plus_[i] / s_minus_[i]) / (2.0 * V);
    }
    B1_transport_ = state.omega;
    B1_jump_ = GridMeasure::zeros(g);
    B2_transport_ = (V * V) * state.rho;
    B2_jump_ = GridMeasure::zeros(g);
}

double PreGenericBlocks::orthogonality() const {
    const std::size_t n = dS_drho_.size();
    const double dx = state_.rho.grid.dx();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t ip = (i + 1) % n;
        const std::size_t im = (i + n - 1) % n;
        const double d_rho = (dS_drho_[ip] - dS_drho_[im]) / (2.0 * dx);
        const double d_omega = (dS_domega_[ip] - dS_domega_[im]) / (2.0 * dx);
        // Pairing with masses: B densities times dx.
        s += d_rho * B1_transport_.w[i] + d_omega * B2_transport_.w[i];
    }
    return s;
}

double PreGenericBlocks::R(const DualField& xi) const {
    const double V = params_.V;
    const double lam = params_.lambda;
    const double dx = state_.rho.grid.dx();
    double s = 0.0;
    for (std::size_t i = 0; i < s_plus_.size(); ++i) {
        const double c = std::cosh(V * xi.jump_omega[i]) - 1.0;
        s += std::sqrt(s_minus_[i] * s_plus_[i]) * std::exp(0.5 * V * xi.jump_rho[i]) * c * dx;
    }
    return 2.0 * lam * s;
}

double PreGenericBlocks::H(const DualField& psi) const {
    const double V = params_.V;
    const double lam = params_.lambda;
    double s = 0.0;
    for (std::size_t i = 0; i < s_plus_.size(); ++i) {
        const double r = state_.rho.w[i];
        const double w = state_.omega.w[i];
        const double e = std::exp(psi.jump_rho[i]);
        s += psi.transport_rho[i] * w + V * V * psi.transport_omega[i] * r;
        s += lam * e * (std::cosh(V * psi.jump_omega[i]) - 1.0) * r;
        s += lam / V * e * std::sinh(V * psi.jump_omega[i]) * w;
    }
    return s;
}

double PreGenericBlocks::H_direct(const DualField& psi) const {
    const double V = params_.V;
    const double lam = params_.lambda;
    const double dx = state_.rho.grid.dx();
    double s = 0.0;
    for (std::size_t i = 0; i < s_plus_.size(); ++i) {
        s += psi.transport_rho[i] * state_.omega.w[i] + V * V * psi.transport_omega[i] * state_.rho.w[i];
        s += lam * s_plus_[i] * dx * std::expm1(psi.jump_rho[i] + V * psi.jump_omega[i]);
        s += lam * s_minus_[i] * dx * std::expm1(psi.jump_rho[i] - V * psi.jump_omega[i]);
    }
    return s;
}

}  // namespace kacfc
