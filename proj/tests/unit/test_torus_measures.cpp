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

#include "kacfc/torus_measures.hpp"
#include "test_util.hpp"

namespace kacfc {
namespace {

using test::kPi;

TEST(TorusGrid, Geometry) {
    const TorusGrid g(8);
    EXPECT_DOUBLE_EQ(g.dx(), 0.125);
    EXPECT_DOUBLE_EQ(g.center(0), 0.0625);
    EXPECT_EQ(g.wrap(-1), 7u);
    EXPECT_EQ(g.wrap(17), 1u);
    EXPECT_EQ(g.cell_of(1.01), 0u);
    EXPECT_EQ(g.cell_of(-0.01), 7u);
    EXPECT_NEAR(g.dx() * static_cast<double>(g.n()), 1.0, 1e-15);
    EXPECT_THROW(TorusGrid(1), InvalidArgument);
}

TEST(ModelParams, DerivedQuantities) {
    const ModelParams p(2.0, 0.5);
    EXPECT_DOUBLE_EQ(p.alpha(), 4.0);
    EXPECT_DOUBLE_EQ(p.tau(), 1.0);
    EXPECT_NEAR(p.alpha() * 2.0 * p.lambda, p.V * p.V, 1e-14);
    EXPECT_THROW(ModelParams(2.0, 0.0).alpha(), InvalidArgument);
    EXPECT_THROW(ModelParams(0.0, 1.0), InvalidArgument);
    EXPECT_THROW(ModelParams(1.0, -1.0), InvalidArgument);
    const ModelParams d = ModelParams::diffusive(8.0, 4.0);
    EXPECT_DOUBLE_EQ(d.lambda, 8.0);
}

TEST(ProjectPi, SymmetricStateHasNoFlux) {
    const TorusGrid g(16);
    const KineticState s = KineticState::stationary(g, ModelParams(2.0, 1.0));
    const DensityFluxPair p = project_pi(s);
    EXPECT_LT(test::max_abs_diff(p.rho, GridMeasure::uniform(g)), 1e-16);
    EXPECT_EQ(tv_norm(p.omega), 0.0);
}

TEST(ProjectPi, OneSidedState) {
    const TorusGrid g(16);
    const ModelParams par(2.0, 1.0);
    const KineticState s(par, GridMeasure::uniform(g), GridMeasure::zeros(g));
    const DensityFluxPair p = project_pi(s);
    EXPECT_LT(test::max_abs_diff(p.rho, GridMeasure::uniform(g)), 1e-16);
    EXPECT_LT(test::max_abs_diff(p.omega, GridMeasure::uniform(g, 2.0)), 1e-16);
}

TEST(LiftPi, Examples) {
    const TorusGrid g(16);
    const ModelParams par(3.0, 1.0);
    const GridMeasure u = GridMeasure::uniform(g);
    const KineticState a = lift_pi({u, GridMeasure::zeros(g)}, par);
    EXPECT_LT(test::max_abs_diff(a.plus, 0.5 * u), 1e-16);
    EXPECT_LT(test::max_abs_diff(a.minus, 0.5 * u), 1e-16);
    const KineticState b = lift_pi({u, par.V * u}, par);
    EXPECT_LT(test::max_abs_diff(b.plus, u), 1e-15);
    EXPECT_LT(test::max_abs_diff(b.minus, GridMeasure::zeros(g)), 1e-15);
    EXPECT_THROW(lift_pi({u, 1.5 * par.V * u}, par), ConeViolation);
}

TEST(LiftPi, RoundTripsAreIdentities) {
    std::mt19937_64 rng(11);
    const TorusGrid g(64);
    const ModelParams par(2.5, 0.7);
    std::uniform_real_distribution<double> th(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        const KineticState s = test::random_state(g, par, rng);
        EXPECT_LT(test::max_abs_diff(lift_pi(project_pi(s), par), s), 1e-13);

        const GridMeasure rho = test::random_measure(g, rng);
        GridMeasure omega = rho;
        for (double& v : omega.w) v *= par.V * th(rng);
        const DensityFluxPair back = project_pi(lift_pi({rho, omega}, par));
        EXPECT_LT(test::max_abs_diff(back.rho, rho), 1e-13 * 1.0);
        EXPECT_LT(test::max_abs_diff(back.omega, omega), 1e-13 * par.V);
    }
}

TEST(TvNorm, Examples) {
    const TorusGrid g2(2);
    EXPECT_DOUBLE_EQ(tv_norm(GridMeasure(g2, {0.5, -0.5})), 1.0);
    const TorusGrid g(32);
    EXPECT_NEAR(tv_norm(GridMeasure::uniform(g)), 1.0, 1e-14);
    const ModelParams par(2.0, 1.0);
    const GridMeasure u = GridMeasure::uniform(g);
    const KineticState s = lift_pi({u, 0.3 * par.V * u}, par);
    EXPECT_NEAR(tv_norm(project_pi(s).omega), 0.3 * par.V, 1e-13);
}

TEST(TvNorm, ConeBoundOnRandomStates) {
    std::mt19937_64 rng(5);
    const TorusGrid g(40);
    const ModelParams par(1.7, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
        const DensityFluxPair p = project_pi(test::random_state(g, par, rng, 0.0));
        EXPECT_LE(tv_norm(p.omega), par.V * tv_norm(p.rho) + 1e-14);
    }
}

TEST(Wasserstein, PointMasses) {
    const TorusGrid g(100);
    const GridMeasure a = GridMeasure::dirac(g, 0.1);
    EXPECT_EQ(wasserstein1(a, a), 0.0);
    EXPECT_NEAR(wasserstein1(a, GridMeasure::dirac(g, 0.2)), 0.1, 1e-14);
    EXPECT_NEAR(wasserstein1(GridMeasure::dirac(g, 0.05), GridMeasure::dirac(g, 0.95)), 0.1, 1e-14);
    EXPECT_THROW(wasserstein1(a, GridMeasure::dirac(g, 0.3, 0.5)), MassMismatch);
}

TEST(Wasserstein, IsAMetric) {
    std::mt19937_64 rng(3);
    const TorusGrid g(50);
    for (int rep = 0; rep < 200; ++rep) {
        const GridMeasure a = test::random_measure(g, rng, 1.0, 0.0);
        const GridMeasure b = test::random_measure(g, rng, 1.0, 0.0);
        const GridMeasure c = test::random_measure(g, rng, 1.0, 0.0);
        const double ab = wasserstein1(a, b);
        EXPECT_GE(ab, 0.0);
        EXPECT_NEAR(ab, wasserstein1(b, a), 1e-14);
        EXPECT_LE(ab, wasserstein1(a, c) + wasserstein1(c, b) + 1e-10);
    }
}

TEST(Wasserstein, DualAndDiameterBounds) {
    // Kantorovich duality against 1-Lipschitz trigonometric test functions, and
    // the bound W1 <= diam * TV / 2 with diameter 1/2.
    std::mt19937_64 rng(9);
    const TorusGrid g(64);
    for (int rep = 0; rep < 100; ++rep) {
        const GridMeasure a = test::random_measure(g, rng, 1.0, 0.0);
        const GridMeasure b = test::random_measure(g, rng, 1.0, 0.0);
        const double w = wasserstein1(a, b);
        for (int k = 1; k <= 4; ++k) {
            for (double phase : {0.0, 0.3, 1.1}) {
                double s = 0.0;
                for (std::size_t i = 0; i < g.n(); ++i) {
                    s += std::sin(2.0 * kPi * k * g.center(i) + phase) / (2.0 * kPi * k) * (a.w[i] - b.w[i]);
                }
                EXPECT_LE(std::abs(s), w + 1e-14);
            }
        }
        EXPECT_LE(w, 0.25 * tv_norm(a - b) + 1e-14);
    }
}

TEST(Mollify, UniformIsFixed) {
    const TorusGrid g(64);
    const GridMeasure u = GridMeasure::uniform(g);
    EXPECT_LT(test::max_abs_diff(mollify(u, 0.01), u), 1e-15);
    EXPECT_THROW(mollify(u, 0.0), InvalidArgument);
}

TEST(Mollify, DiracGivesWrappedGaussian) {
    const TorusGrid g(128);
    const double x0 = 0.3;
    const double eps = 0.01;
    const GridMeasure m = mollify(GridMeasure::dirac(g, x0), eps);
    const double c0 = g.center(g.cell_of(x0));
    std::vector<double> ref(g.n());
    double total = 0.0;
    for (std::size_t i = 0; i < g.n(); ++i) {
        double s = 0.0;
        for (int k = -3; k <= 3; ++k) {
            const double y = g.center(i) - c0 + k;
            s += std::exp(-y * y / (2.0 * eps));
        }
        ref[i] = s;
        total += s;
    }
    for (std::size_t i = 0; i < g.n(); ++i) EXPECT_NEAR(m.w[i], ref[i] / total, 1e-14);
}

TEST(Mollify, ConservesMassAndContractsTv) {
    std::mt19937_64 rng(21);
    const TorusGrid g(96);
    std::normal_distribution<double> nd;
    for (int rep = 0; rep < 50; ++rep) {
        const GridMeasure a = test::random_measure(g, rng, 1.0, 0.0);
        std::vector<double> sw(g.n());
        for (double& v : sw) v = nd(rng);
        const GridMeasure b(g, sw);
        EXPECT_NEAR(mollify(a, 1e-3).total_mass(), 1.0, 1e-12);
        EXPECT_NEAR(mollify(b, 1e-3).total_mass(), b.total_mass(), 1e-12);
        const GridMeasure c = test::random_measure(g, rng, 1.0, 0.0);
        EXPECT_LE(tv_norm(mollify(a, 2e-3) - mollify(c, 2e-3)), tv_norm(a - c) + 1e-14);
    }
}

TEST(Mollify, KeepsStrictPositivityInTheTail) {
    const TorusGrid g(512);
    const GridMeasure m = mollify(GridMeasure::dirac(g, 0.5), 1e-3);
    for (double v : m.w) EXPECT_GT(v, 0.0);
}

TEST(KineticState, ReversedSwapsChannels) {
    std::mt19937_64 rng(1);
    const TorusGrid g(8);
    const KineticState s = test::random_state(g, ModelParams(1.0, 1.0), rng);
    const KineticState r = s.reversed();
    EXPECT_EQ(r.plus.w, s.minus.w);
    EXPECT_EQ(r.minus.w, s.plus.w);
    EXPECT_NEAR(KineticState::stationary(g, s.params).total_mass(), 1.0, 1e-15);
}

}  // namespace
}  // namespace kacfc
