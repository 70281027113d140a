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


#include <gtest/gtest.h>

#include "kacfc/asymptotics.hpp"
#include "kacfc/pregeneric.hpp"
#include "kacfc/projected.hpp"
#include "kacfc/variational.hpp"
#include "test_util.hpp"

namespace kacfc {
namespace {

using test::kPi;

// Constant (rho, omega) held over `steps` intervals with the given fluxes.
DensityFluxTrajectory constant_pair(const ModelParams& p, const GridMeasure& rho, const GridMeasure& omega,
                                    const ProjectedFlux& J, double dt, std::size_t steps) {
    DensityFluxTrajectory tr;
    tr.params = p;
    for (std::size_t k = 0; k <= steps; ++k) {
        tr.times.push_back(dt * static_cast<double>(k));
        tr.rho.push_back(rho);
        tr.omega.push_back(omega);
    }
    for (std::size_t k = 0; k < steps; ++k) {
        tr.rho_mid.push_back(rho);
        tr.omega_mid.push_back(omega);
        tr.flux.push_back(J);
    }
    return tr;
}

ProjectedFlux solution_flux(const ModelParams& p, const GridMeasure& rho, const GridMeasure& omega) {
    return ProjectedFlux{omega, (p.V * p.V) * rho, p.lambda * rho, p.lambda * omega};
}

double xlogx_entropy(double f, double g) { return f * std::log(f / g) - f + g; }

TEST(ProjectedFunctional, MatchesRateFunctionalOnSolverTrajectories) {
    const TorusGrid g(64);
    const ModelParams p(1.0, 2.0);
    std::mt19937_64 rng(11);
    const KineticState s0 = test::random_state(g, p, rng, 0.2);
    const Trajectory tr = solve(SolverConfig::make(g, p, g.dx() / p.V, 0.25), s0, 4);
    const double direct = rate_functional(tr);
    const double projected = projected_functional(project_trajectory(tr));
    EXPECT_NEAR(projected, direct, 1e-12 + 1e-9 * std::abs(direct));
}

TEST(ProjectedFunctional, VanishesOnExactJumpFlux) {
    const TorusGrid g(32);
    const ModelParams p(2.0, 3.0);
    const GridMeasure rho = von_mises(g, 1.0, 0.3);
    const GridMeasure omega = 0.4 * p.V * rho;
    const auto tr = constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 5);
    EXPECT_NEAR(projected_functional(tr), 0.0, 1e-15);
}

TEST(ProjectedFunctional, DoubledOmegaJumpFluxClosedForm) {
    const TorusGrid g(24);
    const ModelParams p(2.0, 1.5);
    const GridMeasure rho = von_mises(g, 0.7, 0.6);
    const GridMeasure omega = 0.3 * p.V * rho;
    ProjectedFlux J = solution_flux(p, rho, omega);
    J.jump_omega *= 2.0;
    const double dt = 0.05;
    const std::size_t steps = 4;
    const auto tr = constant_pair(p, rho, omega, J, dt, steps);
    double per_time = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        const double r = rho.w[i];
        const double w = omega.w[i];
        const double jp = 0.5 * p.lambda * (r + 2.0 * w / p.V);
        const double jm = 0.5 * p.lambda * (r - 2.0 * w / p.V);
        per_time += xlogx_entropy(jp, 0.5 * p.lambda * (r + w / p.V));
        per_time += xlogx_entropy(jm, 0.5 * p.lambda * (r - w / p.V));
    }
    EXPECT_NEAR(projected_functional(tr), per_time * dt * static_cast<double>(steps), 1e-13);
}

TEST(ProjectedFunctional, TransportMismatchIsInfinite) {
    const TorusGrid g(16);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = GridMeasure::uniform(g);
    const GridMeasure omega = GridMeasure::zeros(g);
    ProjectedFlux J = solution_flux(p, rho, omega);
    J.transport_rho.w[2] += 1e-3;
    EXPECT_TRUE(std::isinf(projected_functional(constant_pair(p, rho, omega, J, 0.1, 2))));
}

TEST(ProjectedFunctional, RejectsStatesOutsideTheCone) {
    const TorusGrid g(16);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = GridMeasure::uniform(g);
    const GridMeasure omega = 1.5 * rho;
    EXPECT_THROW(projected_functional(constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 2)),
                 ConeViolation);
}

TEST(ProjectedFir, ZeroFluxGivesZeroG) {
    const TorusGrid g(32);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = von_mises(g, 1.0);
    const GridMeasure omega = GridMeasure::zeros(g);
    const auto rep = projected_fir_terms(constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 6));
    for (const auto& row : rep.rows) EXPECT_EQ(row.g, 0.0);
    EXPECT_EQ(rep.c_fit, 0.0);
}

TEST(ProjectedFir, ProportionalFluxGrowsLinearly) {
    const TorusGrid g(32);
    const ModelParams p(2.0, 1.0);
    const double c = 0.7;
    const GridMeasure rho = von_mises(g, 1.0, 0.2);
    const GridMeasure omega = c * rho;
    const auto rep = projected_fir_terms(constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.125, 8));
    for (const auto& row : rep.rows) {
        EXPECT_NEAR(row.g, c * c * row.t, 1e-13);
        EXPECT_NEAR(row.entropy, rep.rows.front().entropy, 1e-15);
    }
    EXPECT_LE(rep.c_fit, rep.c_bound * (1.0 + 1e-12));
}

TEST(ProjectedFir, InfiniteInitialEntropyIsIllPrepared) {
    const TorusGrid g(16);
    const ModelParams p(1.0, 1.0);
    GridMeasure rho = GridMeasure::uniform(g);
    rho.w[0] = -1e-3;
    rho.w[1] += 1e-3;
    const GridMeasure omega = GridMeasure::zeros(g);
    EXPECT_THROW(projected_fir_terms(constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 1)),
                 IllPrepared);
}

TEST(DiffusiveLimit, HeatPairIsNearlyZero) {
    const double alpha = 0.5;
    auto report = [&](std::size_t n) {
        const TorusGrid g(n);
        return limit_functional_diffusive(heat_pair_trajectory(von_mises(g, 1.0, 0.4), alpha, 0.1, 400), alpha);
    };
    const auto coarse = report(128);
    const auto fine = report(256);
    EXPECT_LT(fine.value, 1e-5);
    EXPECT_LT(fine.value, coarse.value / 3.0);
    // Centred differences make the expanded form agree only up to O(dx^2).
    EXPECT_LT(fine.identity_gap, coarse.identity_gap / 3.0);
    EXPECT_TRUE(std::isnan(fine.value_via_flux));
}

TEST(DiffusiveLimit, DriftingPairClosedForm) {
    const TorusGrid g(256);
    const double alpha = 0.4;
    const double delta = 0.3;
    const double T = 0.2;
    const auto tr = drifting_heat_pair_trajectory(von_mises(g, 0.8, 0.5), alpha, delta, T, 800);
    const auto rep = limit_functional_diffusive(tr, alpha);
    EXPECT_NEAR(rep.value, T * delta * delta / (4.0 * alpha), 1e-5);
    EXPECT_LT(rep.identity_gap, 1e-4);
}

TEST(DiffusiveLimit, FrozenProfileViolatesContinuity) {
    const TorusGrid g(64);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = von_mises(g, 1.0);
    const GridMeasure omega = heat_flux_average(rho, 1.0, 0.0, 0.01);
    const auto tr = constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 2);
    EXPECT_GT(continuity_residual(tr), 1e-8);
    EXPECT_THROW(limit_functional_diffusive(tr, 1.0), ContinuityViolation);
}

TEST(DiffusiveLimit, HoledDensityIsInfinite) {
    const TorusGrid g(32);
    const ModelParams p(1.0, 1.0);
    GridMeasure rho = GridMeasure::uniform(g);
    rho.w[4] = 0.0;
    const GridMeasure omega = GridMeasure::zeros(g);
    const auto rep =
        limit_functional_diffusive(constant_pair(p, rho, omega, solution_flux(p, rho, omega), 0.1, 1), 1.0);
    EXPECT_FALSE(rep.positive);
    EXPECT_TRUE(std::isinf(rep.value));
}

TEST(DiffusiveLimit, RejectsNonpositiveAlpha) {
    const TorusGrid g(32);
    const auto tr = heat_pair_trajectory(von_mises(g, 1.0), 1.0, 0.1, 2);
    EXPECT_THROW(limit_functional_diffusive(tr, 0.0), InvalidArgument);
}

TEST(HyperbolicLimit, WavePairIsZero) {
    const TorusGrid g(128);
    const GridMeasure rho = von_mises(g, 1.0, 0.3);
    const auto tr = wave_pair_trajectory(DensityFluxPair{rho, 0.5 * rho}, 2.0, 0.5, 16);
    const auto rep = limit_functional_hyperbolic(tr);
    EXPECT_EQ(rep.value, 0.0);
    EXPECT_LE(rep.max_rho_residual, 1e-10);
    EXPECT_LE(rep.max_omega_residual, 1e-10);
}

TEST(HyperbolicLimit, DampedSolutionIsInfinite) {
    const TorusGrid g(128);
    const ModelParams p(2.0, 0.1);
    const GridMeasure rho = von_mises(g, 1.0, 0.3);
    const KineticState s0 = lift_pi(DensityFluxPair{rho, GridMeasure::zeros(g)}, p);
    const Trajectory tr = solve(SolverConfig::make(g, p, g.dx() / p.V, 0.5), s0, 8);
    const auto rep = limit_functional_hyperbolic(project_trajectory(tr));
    EXPECT_TRUE(std::isinf(rep.value));
    EXPECT_GT(rep.max_flux_tv, 1e-8);
}

TEST(HyperbolicLimit, InjectedJumpFluxIsInfinite) {
    const TorusGrid g(64);
    const GridMeasure rho = von_mises(g, 1.0);
    auto tr = wave_pair_trajectory(DensityFluxPair{rho, GridMeasure::zeros(g)}, 1.0, 0.25, 4);
    tr.flux[2].jump_omega.w[7] = 1e-3;
    EXPECT_TRUE(std::isinf(limit_functional_hyperbolic(tr).value));
}

TEST(PreGeneric, EquilibriumBlocks) {
    const TorusGrid g(32);
    const ModelParams p(2.0, 1.0);
    const PreGenericBlocks b(DensityFluxPair{GridMeasure::uniform(g), GridMeasure::zeros(g)}, p);
    EXPECT_NEAR(b.S(), 0.0, 1e-15);
    EXPECT_NEAR(b.orthogonality(), 0.0, 1e-15);
    for (double v : b.dS_drho()) EXPECT_NEAR(v, 0.0, 1e-14);
    for (double v : b.dS_domega()) EXPECT_NEAR(v, 0.0, 1e-14);
    EXPECT_EQ(b.R(DualField::zeros(g.n())), 0.0);
}

TEST(PreGeneric, EntropyMatchesLiftedEntropy) {
    const TorusGrid g(40);
    const ModelParams p(1.5, 0.7);
    const GridMeasure rho = von_mises(g, 1.2, 0.1);
    const DensityFluxPair pair{rho, 0.4 * p.V * rho};
    const PreGenericBlocks b(pair, p);
    EXPECT_NEAR(b.S(), entropy_to_stationary(lift_pi(pair, p)), 1e-14);
}

TEST(PreGeneric, DissipationPotentialIsNonnegative) {
    const TorusGrid g(24);
    const ModelParams p(2.0, 1.3);
    const GridMeasure rho = von_mises(g, 0.9, 0.7);
    const PreGenericBlocks b(DensityFluxPair{rho, -0.3 * p.V * rho}, p);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> N(0.0, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        DualField xi = DualField::zeros(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) {
            xi.transport_rho[i] = N(rng);
            xi.transport_omega[i] = N(rng);
            xi.jump_rho[i] = N(rng);
            xi.jump_omega[i] = N(rng);
        }
        EXPECT_GE(b.R(xi), 0.0);
    }
}

TEST(PreGeneric, OrthogonalityIsSmallForSmoothStates) {
    const TorusGrid g(512);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = von_mises(g, 1.0, 0.3);
    GridMeasure omega = GridMeasure::from_density(g, [](double x) { return 0.1 * std::sin(2.0 * kPi * x); });
    const PreGenericBlocks b(DensityFluxPair{rho, omega}, p);
    EXPECT_LT(std::abs(b.orthogonality()), 1e-4);
}

TEST(PreGeneric, ClosedFormHamiltonianMatchesLiftedSupremum) {
    const TorusGrid g(20);
    const ModelParams p(1.7, 0.9);
    const GridMeasure rho = von_mises(g, 1.0, 0.45);
    const PreGenericBlocks b(DensityFluxPair{rho, 0.2 * p.V * rho}, p);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        DualField psi = DualField::zeros(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) {
            psi.transport_rho[i] = U(rng);
            psi.transport_omega[i] = U(rng);
            psi.jump_omega[i] = U(rng);
        }
        EXPECT_NEAR(b.H(psi), b.H_direct(psi), 1e-12);
    }
}

TEST(PreGeneric, Errors) {
    const TorusGrid g(16);
    const ModelParams p(1.0, 1.0);
    const GridMeasure rho = GridMeasure::uniform(g);
    EXPECT_THROW(PreGenericBlocks(DensityFluxPair{rho, 1.2 * rho}, p), ConeViolation);
    EXPECT_THROW(PreGenericBlocks(DensityFluxPair{rho, 1.0 * rho}, p), DegenerateState);
}

}  // namespace
}  // namespace kacfc
