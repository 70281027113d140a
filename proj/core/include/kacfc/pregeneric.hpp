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

#include "kacfc/torus_measures.hpp"

namespace kacfc {

// A dual variable paired with the four projected fluxes, as functions on the
// cell centers. Naming follows ProjectedFlux.
struct DualField {
    std::vector<double> transport_rho;
    std::vector<double> jump_rho;
    std::vector<double> transport_omega;
    std::vector<double> jump_omega;

    static DualField zeros(std::size_t n);
};

// Driving entropy, nondissipative field and dissipation potential of the
// density-flux system at a fixed state (rho, omega).
class PreGenericBlocks {
public:
    // Throws ConeViolation outside the cone and DegenerateState when a lifted
    // velocity channel vanishes in some cell.
    PreGenericBlocks(const DensityFluxPair& state, const ModelParams& params);

    // S = Ent(lift(rho, omega) | lift(Lebesgue, 0)).
    double S() const { return S_; }
    // Functional derivatives of S as cell functions.
    const std::vector<double>& dS_drho() const { return dS_drho_; }
    const std::vector<double>& dS_domega() const { return dS_domega_; }

    // B_1 = (omega, 0), B_2 = (V^2 rho, 0): transport and jump parts.
    const GridMeasure& B1_transport() const { return B1_transport_; }
    const GridMeasure& B1_jump() const { return B1_jump_; }
    const GridMeasure& B2_transport() const { return B2_transport_; }
    const GridMeasure& B2_jump() const { return B2_jump_; }

    // <grad dS, B> with centered differences for d_x.
    double orthogonality() const;

    // R(rho, omega, xi) = 2 lambda int sqrt(s_- s_+) e^{V xi^2_1/2} (cosh(V xi^2_2) - 1) dx
    // with s_+- the lifted densities.
    double R(const DualField& xi) const;

    // Dual Hamiltonian of the density-flux system in the closed form
    // psi^1_1 omega + V^2 psi^1_2 rho + lambda e^{psi^2_1} (cosh(V psi^2_2) - 1) rho
    //   + (lambda/V) e^{psi^2_1} sinh(V psi^2_2) omega.
    double H(const DualField& psi) const;

    // sup_J <psi, J> - L(rho, omega, J) computed on the lifted state; agrees
    // with H when psi^2_1 = 0.
    double H_direct(const DualField& psi) const;

private:
    ModelParams params_;
    DensityFluxPair state_;
    std::vector<double> s_plus_;
    std::vector<double> s_minus_;
    double S_ = 0.0;
    std::vector<double> dS_drho_;
    std::vector<double> dS_domega_;
    GridMeasure B1_transport_, B1_jump_, B2_transport_, B2_jump_;
};

}  // namespace kacfc
