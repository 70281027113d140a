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

#include "kacfc/projected.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"
#include "kacfc/variational.hpp"

namespace kacfc {

using detail::cplx;

namespace {

// Mode k evolves as exp(z_k t); returns the field at time t.
template <class Z>
GridMeasure modal_at(const GridMeasure& f0, Z z, double t) {
    auto c = detail::rfft(f0.w);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::exp(z(k) * t);
    return GridMeasure(f0.grid, detail::irfft(c, f0.size()));
}

// (1/h) int_{t0}^{t1} exp(z t) dt, accurate for small |z h|.
cplx mean_exp(cplx z, double t0, double t1) {
    const double h = t1 - t0;
    const cplx zh = z * h;
    cplx ratio;
    if (std::abs(zh) < 1e-4) {
        ratio = 1.0 + zh / 2.0 + zh * zh / 6.0 + zh * zh * zh / 24.0;
    } else {
        ratio = (std::exp(zh) - 1.0) / zh;
    }
    return std::exp(z * t0) * ratio;
}

// Interval average of the modal evolution, multiplied per mode by `mult`.
template <class Z, class M>
GridMeasure modal_mean(const GridMeasure& f0, Z z, M mult, double t0, double t1) {
    auto c = detail::rfft(f0.w);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= mult(k) * mean_exp(z(k), t0, t1);
    return GridMeasure(f0.grid, detail::irfft(c, f0.size()));
}

double wave_k(std::size_t k) { return 2.0 * std::numbers::pi * static_cast<double>(k); }

std::vector<double> centered_difference(const std::vector<double>& u, double dx) {
    const std::size_t n = u.size();
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double up = u[(i + 1) % n];
        const double um = u[(i + n - 1) % n];
        g[i] = (up - um) / (2.0 * dx);
    }
    return g;
}

double max_abs_diff_plus(const GridMeasure& a, const GridMeasure& b, const std::vector<double>& c, double s) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.w[i] - b.w[i] + s * c[i]));
    return m;
}

}  // namespace

DensityFluxTrajectory project_trajectory(const Trajectory& traj) {
    DensityFluxTrajectory out;
    out.params = traj.config.params;
    const double V = out.params.V;
    out.times = traj.times;
    for (const auto& s : traj.states) {
        DensityFluxPair p = project_pi(s);
        out.rho.push_back(std::move(p.rho));
        out.omega.push_back(std::move(p.omega));
    }
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        DensityFluxPair m = project_pi(traj.midpoints[k]);
        out.rho_mid.push_back(std::move(m.rho));
        out.omega_mid.push_back(std::move(m.omega));
        DensityFluxPair j1 = project_pi(traj.fluxes[k].j1, V);
        DensityFluxPair j2 = project_pi(traj.fluxes[k].j2, V);
        out.flux.push_back(ProjectedFlux{std::move(j1.rho), std::move(j1.omega), std::move(j2.rho),
                                         std::move(j2.omega)});
    }
    return out;
}

DensityFluxTrajectory drifting_heat_pair_trajectory(const GridMeasure& rho0, double alpha, double delta,
                                                    double t_end, std::size_t intervals) {
    if (intervals == 0) throw InvalidArgument("need at least one interval");
    const std::size_t n = rho0.size();
    auto z = [&](std::size_t k) {
        const double K = wave_k(k);
        return cplx(-alpha * K * K, -K * delta);
    };
    auto one = [](std::size_t) { return cplx(1.0, 0.0); };
    auto flux_mult = [&](std::size_t k) {
        if (2 * k == n) return cplx(delta, 0.0);
        return cplx(delta, -alpha * wave_k(k));
    };
    DensityFluxTrajectory out;
    out.params = ModelParams(1.0, 0.0);
    const double h = t_end / static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double t = static_cast<double>(k) * h;
        out.times.push_back(t);
        GridMeasure r = modal_at(rho0, z, t);
        out.omega.push_back(modal_mean(rho0, z, flux_mult, t, t));
        out.rho.push_back(std::move(r));
    }
    for (std::size_t k = 0; k < intervals; ++k) {
        const double t0 = out.times[k];
        const double t1 = out.times[k + 1];
        out.rho_mid.push_back(modal_mean(rho0, z, one, t0, t1));
        out.omega_mid.push_back(modal_mean(rho0, z, flux_mult, t0, t1));
    }
    return out;
}

DensityFluxTrajectory heat_pair_trajectory(const GridMeasure& rho0, double alpha, double t_end,
                                           std::size_t intervals) {
    return drifting_heat_pair_trajectory(rho0, alpha, 0.0, t_end, intervals);
}

DensityFluxTrajectory wave_pair_trajectory(const DensityFluxPair& pair0, double V, double t_end,
                                           std::size_t intervals) {
    if (intervals == 0) throw InvalidArgument("need at least one interval");
    DensityFluxTrajectory out;
    out.params = ModelParams(V, 0.0);
    const KineticState s0 = lift_pi(pair0, out.params);
    auto zp = [&](std::size_t k) { return cplx(0.0, -wave_k(k) * V); };
    auto zm = [&](std::size_t k) { return cplx(0.0, wave_k(k) * V); };
    auto one = [](std::size_t) { return cplx(1.0, 0.0); };
    const double h = t_end / static_cast<double>(intervals);
    for (std::size_t k = 0; k <= intervals; ++k) {
        const double t = static_cast<double>(k) * h;
        out.times.push_back(t);
        DensityFluxPair p = wave_reference(pair0, V, t);
        out.rho.push_back(std::move(p.rho));
        out.omega.push_back(std::move(p.omega));
    }
    for (std::size_t k = 0; k < intervals; ++k) {
        const double t0 = out.times[k];
        const double t1 = out.times[k + 1];
        VelocityPair mid{modal_mean(s0.plus, zp, one, t0, t1), modal_mean(s0.minus, zm, one, t0, t1)};
        DensityFluxPair m = project_pi(mid, V);
        ProjectedFlux f{m.omega, (V * V) * m.rho, GridMeasure::zeros(m.rho.grid), GridMeasure::zeros(m.rho.grid)};
        out.rho_mid.push_back(std::move(m.rho));
        out.omega_mid.push_back(std::move(m.omega));
        out.flux.push_back(std::move(f));
    }
    return out;
}

double projected_functional(const DensityFluxTrajectory& traj) {
    if (traj.flux.size() != traj.intervals()) throw InvalidArgument("projected functional needs fluxes");
    const ModelParams& p = traj.params;
    const double V = p.V;
    const double lam = p.lambda;
    auto lifted_ref = [&](const GridMeasure& r, const GridMeasure& w) {
        KineticState s = lift_pi(DensityFluxPair{r, w}, p);
        return VelocityPair{lam * s.plus, lam * s.minus};
    };
    double total = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const GridMeasure& rm = traj.rho_mid[k];
        const GridMeasure& wm = traj.omega_mid[k];
        lift_pi(DensityFluxPair{rm, wm}, p);
        const ProjectedFlux& J = traj.flux[k];
        double scale = 0.0;
        for (double v : rm.w) scale = std::max(scale, std::abs(v));
        for (std::size_t i = 0; i < rm.size(); ++i) {
            // Transport constraints from lifting j1 = v sigma: J^1_1 = omega, J^1_2 = V^2 rho.
            if (std::abs(J.transport_rho.w[i] - wm.w[i]) > 1e-10 * V * scale) return kInfinity;
            if (std::abs(J.transport_omega.w[i] - V * V * rm.w[i]) > 1e-10 * V * V * scale) return kInfinity;
        }
        const VelocityPair j2 = lift_pi_linear(DensityFluxPair{J.jump_rho, J.jump_omega}, V);
        const double a = rel_entropy(j2, lifted_ref(traj.rho[k], traj.omega[k]));
        const double b = rel_entropy(j2, lifted_ref(traj.rho[k + 1], traj.omega[k + 1]));
        total += 0.5 * (a + b) * traj.dt(k);
    }
    return total;
}

ProjectedFirReport projected_fir_terms(const DensityFluxTrajectory& traj) {
    ProjectedFirReport rep;
    auto quotient = [](const GridMeasure& r, const GridMeasure& w) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (w.w[i] == 0.0) continue;
            if (r.w[i] <= 0.0) return kInfinity;
            s += w.w[i] * w.w[i] / r.w[i];
        }
        return s;
    };
    const double e0 = entropy_to_lebesgue(traj.rho.front());
    if (!std::isfinite(e0)) throw IllPrepared("initial density has infinite entropy relative to Lebesgue measure");
    double g_prev = quotient(traj.rho.front(), traj.omega.front());
    double g = 0.0;
    for (std::size_t k = 0; k < traj.rho.size(); ++k) {
        const double gk = (k == 0) ? g_prev : quotient(traj.rho[k], traj.omega[k]);
        if (k > 0) g += 0.5 * traj.dt(k - 1) * (g_prev + gk);
        rep.rows.push_back(ProjectedFirRow{traj.times[k], (k == 0) ? e0 : entropy_to_lebesgue(traj.rho[k]), g});
        g_prev = gk;
    }

    const std::size_t n = traj.rho.front().size();
    const std::size_t arcs = std::min<std::size_t>(8, n);
    double g_mid = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) g_mid += traj.dt(k) * quotient(traj.rho_mid[k], traj.omega_mid[k]);
    rep.c_bound = std::sqrt(g_mid);
    // Window family: every interval and the whole horizon, times the full torus
    // and `arcs` equal arcs.
    auto window = [&](std::size_t k0, std::size_t k1, std::size_t i0, std::size_t i1) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t k = k0; k < k1; ++k) {
            for (std::size_t i = i0; i < i1; ++i) {
                num += traj.dt(k) * std::abs(traj.omega_mid[k].w[i]);
                den += traj.dt(k) * traj.rho_mid[k].w[i];
            }
        }
        return den > 0.0 ? num / std::sqrt(den) : 0.0;
    };
    const std::size_t K = traj.intervals();
    for (std::size_t a = 0; a <= arcs; ++a) {
        const std::size_t i0 = (a == arcs) ? 0 : a * n / arcs;
        const std::size_t i1 = (a == arcs) ? n : (a + 1) * n / arcs;
        rep.c_fit = std::max(rep.c_fit, window(0, K, i0, i1));
        for (std::size_t k = 0; k < K; ++k) rep.c_fit = std::max(rep.c_fit, window(k, k + 1, i0, i1));
    }
    return rep;
}

double continuity_residual(const DensityFluxTrajectory& traj) {
    double m = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const auto d = detail::spectral_derivative(traj.omega_mid[k].w);
        m = std::max(m, max_abs_diff_plus(traj.rho[k + 1], traj.rho[k], d, traj.dt(k)));
    }
    return m;
}

DiffusiveLimitReport limit_functional_diffusive(const DensityFluxTrajectory& traj, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    DiffusiveLimitReport rep;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const auto d = detail::spectral_derivative(traj.omega_mid[k].w);
        const double r = max_abs_diff_plus(traj.rho[k + 1], traj.rho[k], d, traj.dt(k));
        rep.max_ce_residual = std::max(rep.max_ce_residual, r);
        if (r > 1e-8) {
            std::ostringstream os;
            os << "continuity equation residual " << r << " exceeds 1e-8 on interval " << k;
            throw ContinuityViolation(os.str());
        }
    }
    auto strictly_positive = [](const GridMeasure& m) {
        return std::all_of(m.w.begin(), m.w.end(), [](double v) { return v > 0.0; });
    };
    for (const auto& r : traj.rho) rep.positive = rep.positive && strictly_positive(r);
    for (const auto& r : traj.rho_mid) rep.positive = rep.positive && strictly_positive(r);
    if (!rep.positive) {
        rep.value = rep.value_via_flux = rep.expanded_value = kInfinity;
        return rep;
    }
    const bool has_flux = traj.flux.size() == traj.intervals();
    const double V = traj.params.V;
    double via_flux = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const double h = traj.dt(k);
        const double dx = traj.rho_mid[k].grid.dx();
        const auto u = traj.rho_mid[k].densities();
        const auto w = traj.omega_mid[k].densities();
        const auto g = centered_difference(u, dx);
        std::vector<double> J;
        if (has_flux) {
            J = traj.flux[k].jump_omega.densities();
            for (double& v : J) v /= V * V;
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double q = alpha * g[i] + w[i];
            rep.value += h * dx * q * q / u[i] / (4.0 * alpha);
            rep.fisher_term += h * dx * g[i] * g[i] / u[i];
            rep.metric_term += h * dx * w[i] * w[i] / u[i];
            rep.cross_term += h * dx * g[i] * w[i] / u[i];
            if (has_flux) {
                const double qf = -2.0 * alpha * J[i] + w[i];
                via_flux += h * dx * qf * qf / u[i] / (4.0 * alpha);
            }
        }
    }
    rep.value_via_flux = has_flux ? via_flux : std::nan("");
    rep.entropy_difference = entropy_to_lebesgue(traj.rho.back()) - entropy_to_lebesgue(traj.rho.front());
    rep.expanded_value =
        0.5 * (0.5 * alpha * rep.fisher_term + rep.metric_term / (2.0 * alpha) + rep.entropy_difference);
    rep.identity_gap = std::abs(rep.value - rep.expanded_value);
    return rep;
}

HyperbolicLimitReport limit_functional_hyperbolic(const DensityFluxTrajectory& traj) {
    HyperbolicLimitReport rep;
    const double V = traj.params.V;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const double h = traj.dt(k);
        const auto dw = detail::spectral_derivative(traj.omega_mid[k].w);
        auto dr = detail::spectral_derivative(traj.rho_mid[k].w);
        for (double& v : dr) v *= V * V;
        rep.max_rho_residual = std::max(rep.max_rho_residual, max_abs_diff_plus(traj.rho[k + 1], traj.rho[k], dw, h));
        rep.max_omega_residual =
            std::max(rep.max_omega_residual, max_abs_diff_plus(traj.omega[k + 1], traj.omega[k], dr, h));
        if (k < traj.flux.size()) rep.max_flux_tv = std::max(rep.max_flux_tv, tv_norm(traj.flux[k].jump_omega));
    }
    const bool ok = rep.max_rho_residual <= 1e-8 && rep.max_omega_residual <= 1e-8 && rep.max_flux_tv <= 1e-8;
    rep.value = ok ? 0.0 : kInfinity;
    return rep;
}

}  // namespace kacfc
