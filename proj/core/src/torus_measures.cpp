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

#include "kacfc/torus_measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace kacfc {

TorusGrid::TorusGrid(std::size_t n_cells) : n_(n_cells), dx_(1.0 / static_cast<double>(n_cells)) {
    if (n_cells < 2) throw InvalidArgument("TorusGrid needs at least 2 cells");
}

std::size_t TorusGrid::wrap(long long i) const noexcept {
    const long long n = static_cast<long long>(n_);
    long long r = i % n;
    if (r < 0) r += n;
    return static_cast<std::size_t>(r);
}

std::size_t TorusGrid::cell_of(double x) const noexcept {
    x -= std::floor(x);
    auto i = static_cast<std::size_t>(x * static_cast<double>(n_));
    return std::min(i, n_ - 1);
}

GridMeasure::GridMeasure(const TorusGrid& g, std::vector<double> weights)
    : grid(g), w(std::move(weights)) {
    if (w.size() != g.n()) throw InvalidArgument("GridMeasure weight count does not match grid");
}

GridMeasure GridMeasure::zeros(const TorusGrid& g) { return GridMeasure(g, std::vector<double>(g.n(), 0.0)); }

GridMeasure GridMeasure::uniform(const TorusGrid& g, double mass) {
    return GridMeasure(g, std::vector<double>(g.n(), mass * g.dx()));
}

GridMeasure GridMeasure::dirac(const TorusGrid& g, double x, double mass) {
    GridMeasure m = zeros(g);
    m.w[g.cell_of(x)] = mass;
    return m;
}

GridMeasure GridMeasure::from_density(const TorusGrid& g, const std::function<double(double)>& f) {
    GridMeasure m = zeros(g);
    for (std::size_t i = 0; i < g.n(); ++i) m.w[i] = f(g.center(i)) * g.dx();
    return m;
}

double GridMeasure::total_mass() const {
    double s = 0.0;
    for (double v : w) s += v;
    return s;
}

std::vector<double> GridMeasure::densities() const {
    std::vector<double> d(w.size());
    const double inv = 1.0 / grid.dx();
    for (std::size_t i = 0; i < w.size(); ++i) d[i] = w[i] * inv;
    return d;
}

GridMeasure& GridMeasure::operator+=(const GridMeasure& o) {
    if (!(grid == o.grid)) throw InvalidArgument("grid mismatch");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += o.w[i];
    return *this;
}

GridMeasure& GridMeasure::operator-=(const GridMeasure& o) {
    if (!(grid == o.grid)) throw InvalidArgument("grid mismatch");
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= o.w[i];
    return *this;
}

GridMeasure& GridMeasure::operator*=(double s) {
    for (double& v : w) v *= s;
    return *this;
}

GridMeasure operator+(GridMeasure a, const GridMeasure& b) { return a += b; }
GridMeasure operator-(GridMeasure a, const GridMeasure& b) { return a -= b; }
GridMeasure operator*(double s, GridMeasure a) { return a *= s; }

ModelParams::ModelParams(double V_, double lambda_) : V(V_), lambda(lambda_) {
    if (!(V > 0.0) || !std::isfinite(V)) throw InvalidArgument("speed V must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw InvalidArgument("switching rate must be >= 0");
}

double ModelParams::alpha() const {
    if (lambda == 0.0) throw InvalidArgument("alpha is undefined for lambda = 0");
    return V * V / (2.0 * lambda);
}

double ModelParams::tau() const {
    if (lambda == 0.0) throw InvalidArgument("tau is undefined for lambda = 0");
    return 1.0 / (2.0 * lambda);
}

ModelParams ModelParams::diffusive(double V, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    return ModelParams(V, V * V / (2.0 * alpha));
}

KineticState::KineticState(const ModelParams& p, GridMeasure plus_, GridMeasure minus_)
    : params(p), plus(std::move(plus_)), minus(std::move(minus_)) {
    if (!(plus.grid == minus.grid)) throw InvalidArgument("velocity channels on different grids");
}

KineticState KineticState::stationary(const TorusGrid& g, const ModelParams& p) {
    return KineticState(p, GridMeasure::uniform(g, 0.5), GridMeasure::uniform(g, 0.5));
}

double KineticState::total_mass() const { return plus.total_mass() + minus.total_mass(); }

KineticState KineticState::reversed() const { return KineticState(params, minus, plus); }

FluxPair FluxPair::canonical(const KineticState& sigma) {
    const double V = sigma.params.V;
    const double lam = sigma.params.lambda;
    return FluxPair{{V * sigma.plus, -V * sigma.minus}, {lam * sigma.plus, lam * sigma.minus}};
}

DensityFluxPair project_pi(const KineticState& sigma) {
    return project_pi(VelocityPair{sigma.plus, sigma.minus}, sigma.params.V);
}

DensityFluxPair project_pi(const VelocityPair& mu, double V) {
    const TorusGrid& g = mu.plus.grid;
    DensityFluxPair out{GridMeasure::zeros(g), GridMeasure::zeros(g)};
    for (std::size_t i = 0; i < g.n(); ++i) {
        out.rho.w[i] = mu.plus.w[i] + mu.minus.w[i];
        out.omega.w[i] = V * (mu.plus.w[i] - mu.minus.w[i]);
    }
    return out;
}

VelocityPair lift_pi_linear(const DensityFluxPair& pair, double V) {
    const TorusGrid& g = pair.rho.grid;
    VelocityPair out{GridMeasure::zeros(g), GridMeasure::zeros(g)};
    for (std::size_t i = 0; i < g.n(); ++i) {
        out.plus.w[i] = 0.5 * (pair.rho.w[i] + pair.omega.w[i] / V);
        out.minus.w[i] = 0.5 * (pair.rho.w[i] - pair.omega.w[i] / V);
    }
    return out;
}

KineticState lift_pi(const DensityFluxPair& pair, const ModelParams& params) {
    const double V = params.V;
    const double tol = 1e-10 * V;
    for (std::size_t i = 0; i < pair.rho.size(); ++i) {
        if (std::abs(pair.omega.w[i]) > V * pair.rho.w[i] + tol) {
            std::ostringstream os;
            os << "cone condition violated in cell " << i << ": |omega| = " << std::abs(pair.omega.w[i])
               << " > V rho = " << V * pair.rho.w[i];
            throw ConeViolation(os.str());
        }
    }
    VelocityPair vp = lift_pi_linear(pair, V);
    // Clip round-off below zero so the lifted state is a genuine measure.
    for (double& v : vp.plus.w) v = std::max(v, 0.0);
    for (double& v : vp.minus.w) v = std::max(v, 0.0);
    return KineticState(params, std::move(vp.plus), std::move(vp.minus));
}

double tv_norm(const GridMeasure& mu) {
    double s = 0.0;
    for (double v : mu.w) s += std::abs(v);
    return s;
}

double kr_norm(const GridMeasure& d) {
    const std::size_t n = d.size();
    std::vector<double> F(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        acc += d.w[i];
        F[i] = acc;
    }
    // The optimal additive constant for sum |F_i - c| is a median of F.
    std::vector<double> tmp(F);
    auto mid = tmp.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(tmp.begin(), mid, tmp.end());
    const double c = *mid;
    double s = 0.0;
    for (double f : F) s += std::abs(f - c);
    return s * d.grid.dx();
}

double wasserstein1(const GridMeasure& mu, const GridMeasure& nu) {
    if (!(mu.grid == nu.grid)) throw InvalidArgument("grid mismatch");
    const double dm = mu.total_mass() - nu.total_mass();
    if (std::abs(dm) > 1e-9) {
        std::ostringstream os;
        os << "W1 needs equal masses, difference " << dm;
        throw MassMismatch(os.str());
    }
    return kr_norm(mu - nu);
}

double bl_upper_bound(const GridMeasure& mu, const GridMeasure& nu) {
    if (!(mu.grid == nu.grid)) throw InvalidArgument("grid mismatch");
    GridMeasure d = mu - nu;
    const double dm = d.total_mass();
    const double per_cell = dm * d.grid.dx();
    for (double& v : d.w) v -= per_cell;
    return std::abs(dm) + kr_norm(d);
}

namespace {

std::vector<double> heat_kernel(const TorusGrid& g, double eps) {
    const std::size_t n = g.n();
    std::vector<double> k(n);
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = static_cast<double>(j) * g.dx();
        double s = 0.0;
        for (int m = -10; m <= 10; ++m) {
            const double y = d + m;
            s += std::exp(-y * y / (2.0 * eps));
        }
        k[j] = s;
        total += s;
    }
    for (double& v : k) v /= total;
    return k;
}

}  // namespace

GridMeasure mollify(const GridMeasure& mu, double eps) {
    if (!(eps > 0.0)) throw InvalidArgument("mollifier variance must be positive");
    const std::size_t n = mu.size();
    const auto kh = detail::rfft(heat_kernel(mu.grid, eps));
    auto mh = detail::rfft(mu.w);
    for (std::size_t k = 0; k < mh.size(); ++k) mh[k] *= kh[k];
    GridMeasure out(mu.grid, detail::irfft(mh, n));
    const bool nonneg = std::all_of(mu.w.begin(), mu.w.end(), [](double v) { return v >= 0.0; });
    if (nonneg) {
        // FFT round-off swamps the Gaussian tail; sum small cells directly so
        // they keep their (tiny, positive) mass instead of being clipped to 0.
        const double peak = *std::max_element(out.w.begin(), out.w.end());
        const auto k = heat_kernel(mu.grid, eps);
        for (std::size_t i = 0; i < n; ++i) {
            if (out.w[i] > 1e-10 * peak) continue;
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (mu.w[j] != 0.0) s += k[(i + n - j) % n] * mu.w[j];
            }
            out.w[i] = s;
        }
    }
    return out;
}

KineticState mollify(const KineticState& sigma, double eps) {
    return KineticState(sigma.params, mollify(sigma.plus, eps), mollify(sigma.minus, eps));
}

GridMeasure von_mises(const TorusGrid& g, double kappa, double x0) {
    GridMeasure m = GridMeasure::from_density(
        g, [&](double x) { return std::exp(kappa * std::cos(2.0 * std::numbers::pi * (x - x0))); });
    m *= 1.0 / m.total_mass();
    return m;
}

}  // namespace kacfc
