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

#include "kacfc/kac_solver.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace kacfc {

using detail::cplx;

std::string to_string(Scheme s) {
    return s == Scheme::strang_split ? "strang_split" : "spectral_oracle";
}

Scheme scheme_from_string(const std::string& s) {
    if (s == "strang_split" || s == "strang") return Scheme::strang_split;
    if (s == "spectral_oracle" || s == "spectral") return Scheme::spectral_oracle;
    throw InvalidArgument("unknown scheme '" + s + "'");
}

std::size_t SolverConfig::n_steps() const {
    const double r = t_end / dt;
    const double rr = std::round(r);
    if (std::abs(r - rr) <= 1e-9 * std::max(1.0, rr)) return static_cast<std::size_t>(rr);
    return static_cast<std::size_t>(std::ceil(r));
}

SolverConfig SolverConfig::make(const TorusGrid& grid, const ModelParams& params, double dt, double t_end,
                                Scheme scheme) {
    if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
    if (!(t_end >= 0.0)) throw InvalidArgument("t_end must be nonnegative");
    SolverConfig c;
    c.grid = grid;
    c.params = params;
    c.t_end = t_end;
    c.scheme = scheme;
    c.requested_dt = dt;
    c.dt = dt;
    if (scheme == Scheme::strang_split) {
        const double unit = grid.dx() / params.V;
        const double r = dt / unit;
        double s = std::floor(r + 1e-12 * std::max(1.0, r));
        if (s < 1.0) {
            std::ostringstream os;
            os << "dt = " << dt << " is below the smallest admissible step dx/V = " << unit;
            throw CflViolation(os.str());
        }
        c.dt = s * unit;
        if (std::abs(c.dt - dt) <= 1e-12 * dt) c.dt = dt;
    }
    return c;
}

std::size_t cfl_shift(const TorusGrid& grid, double V, double dt) {
    const double r = V * dt / grid.dx();
    const double rr = std::round(r);
    if (rr < 1.0 || std::abs(r - rr) > 1e-12 * std::max(1.0, r)) {
        std::ostringstream os;
        os << "transport shift V dt/dx = " << r << " is not a positive integer";
        throw CflViolation(os.str());
    }
    return static_cast<std::size_t>(rr);
}

namespace {

// Exact relaxation of the velocity difference over time h.
void collide(KineticState& s, double h) {
    const double e = std::exp(-2.0 * s.params.lambda * h);
    const double a = 0.5 * (1.0 + e);
    const double b = 0.5 * (1.0 - e);
    auto& p = s.plus.w;
    auto& q = s.minus.w;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double pi = p[i];
        const double qi = q[i];
        p[i] = a * pi + b * qi;
        q[i] = b * pi + a * qi;
    }
}

std::vector<double> circular_shift(const std::vector<double>& x, long long s) {
    const long long n = static_cast<long long>(x.size());
    std::vector<double> y(x.size());
    long long r = s % n;
    if (r < 0) r += n;
    for (long long i = 0; i < n; ++i) y[static_cast<std::size_t>((i + r) % n)] = x[static_cast<std::size_t>(i)];
    return y;
}

KineticState average(const KineticState& a, const KineticState& b) {
    KineticState m = a;
    for (std::size_t i = 0; i < m.plus.w.size(); ++i) {
        m.plus.w[i] = 0.5 * (a.plus.w[i] + b.plus.w[i]);
        m.minus.w[i] = 0.5 * (a.minus.w[i] + b.minus.w[i]);
    }
    return m;
}

}  // namespace

StepResult step_strang(const KineticState& sigma, double dt) {
    const std::size_t s = cfl_shift(sigma.grid(), sigma.params.V, dt);
    KineticState a = sigma;
    collide(a, 0.5 * dt);
    KineticState b = a;
    b.plus.w = circular_shift(a.plus.w, static_cast<long long>(s));
    b.minus.w = circular_shift(a.minus.w, -static_cast<long long>(s));
    KineticState mid = average(a, b);
    collide(b, 0.5 * dt);
    FluxPair flux = FluxPair::canonical(mid);
    return StepResult{std::move(b), std::move(mid), std::move(flux)};
}

KineticState step_spectral(const KineticState& sigma, double t) {
    const std::size_t n = sigma.grid().n();
    const double V = sigma.params.V;
    const double lam = sigma.params.lambda;
    const DensityFluxPair pf = project_pi(sigma);
    auto rh = detail::rfft(pf.rho.w);
    auto wh = detail::rfft(pf.omega.w);
    const double decay = std::exp(-lam * t);
    for (std::size_t k = 0; k < rh.size(); ++k) {
        const double K = 2.0 * std::numbers::pi * static_cast<double>(k);
        const double D = lam * lam - K * K * V * V;
        // C = e^{-lam t} cosh(s t), S = e^{-lam t} sinh(s t)/s with s^2 = D.
        double C;
        double S;
        if (std::abs(D) < 1e-8) {
            C = decay * (1.0 + 0.5 * D * t * t);
            S = decay * t * (1.0 + D * t * t / 6.0);
        } else if (D > 0.0) {
            const double s = std::sqrt(D);
            if (s * t < 1.0) {
                C = decay * std::cosh(s * t);
                S = decay * std::sinh(s * t) / s;
            } else {
                const double ep = std::exp((s - lam) * t);
                const double em = std::exp(-(s + lam) * t);
                C = 0.5 * (ep + em);
                S = 0.5 * (ep - em) / s;
            }
        } else {
            const double s = std::sqrt(-D);
            C = decay * std::cos(s * t);
            S = decay * std::sin(s * t) / s;
        }
        const cplx r0 = rh[k];
        const cplx w0 = wh[k];
        const cplx iK(0.0, K);
        rh[k] = (C + S * lam) * r0 - S * iK * w0;
        wh[k] = -S * iK * V * V * r0 + (C - S * lam) * w0;
    }
    DensityFluxPair out{GridMeasure(sigma.grid(), detail::irfft(rh, n)),
                        GridMeasure(sigma.grid(), detail::irfft(wh, n))};
    VelocityPair vp = lift_pi_linear(out, V);
    return KineticState(sigma.params, std::move(vp.plus), std::move(vp.minus));
}

KineticState integrate(const SolverConfig& config, const KineticState& sigma0, const StepObserver& observer) {
    if (!(sigma0.grid() == config.grid)) throw InvalidArgument("initial state is not on the configured grid");
    KineticState cur = sigma0;
    cur.params = config.params;
    const std::size_t n = config.n_steps();
    if (config.scheme == Scheme::strang_split) cfl_shift(config.grid, config.params.V, config.dt);
    for (std::size_t k = 0; k < n; ++k) {
        const double t0 = static_cast<double>(k) * config.dt;
        const double t1 = static_cast<double>(k + 1) * config.dt;
        if (config.scheme == Scheme::strang_split) {
            StepResult r = step_strang(cur, config.dt);
            if (observer) observer(StepView{k, t0, t1, cur, r.midpoint, r.state, r.flux});
            cur = std::move(r.state);
        } else {
            KineticState next = step_spectral(cur, config.dt);
            KineticState mid = average(cur, next);
            FluxPair flux = FluxPair::canonical(mid);
            if (observer) observer(StepView{k, t0, t1, cur, mid, next, flux});
            cur = std::move(next);
        }
    }
    return cur;
}

TrajectoryRecorder::TrajectoryRecorder(const SolverConfig& config, const KineticState& sigma0, std::size_t stride)
    : stride_(stride) {
    if (stride == 0) throw InvalidArgument("record stride must be positive");
    if (config.n_steps() % stride != 0) throw InvalidArgument("number of steps is not a multiple of the stride");
    traj_.config = config;
    traj_.times.push_back(0.0);
    traj_.states.push_back(sigma0);
    traj_.states.back().params = config.params;
}

void TrajectoryRecorder::operator()(const StepView& step) {
    const double wgt = 1.0 / static_cast<double>(stride_);
    if (in_window_ == 0) {
        mid_acc_ = step.midpoint;
        mid_acc_.plus *= wgt;
        mid_acc_.minus *= wgt;
        flux_acc_ = step.flux;
        for (GridMeasure* g : {&flux_acc_.j1.plus, &flux_acc_.j1.minus, &flux_acc_.j2.plus, &flux_acc_.j2.minus})
            *g *= wgt;
    } else {
        mid_acc_.plus += wgt * step.midpoint.plus;
        mid_acc_.minus += wgt * step.midpoint.minus;
        flux_acc_.j1.plus += wgt * step.flux.j1.plus;
        flux_acc_.j1.minus += wgt * step.flux.j1.minus;
        flux_acc_.j2.plus += wgt * step.flux.j2.plus;
        flux_acc_.j2.minus += wgt * step.flux.j2.minus;
    }
    if (++in_window_ == stride_) {
        traj_.times.push_back(step.t1);
        traj_.states.push_back(step.after);
        traj_.midpoints.push_back(std::move(mid_acc_));
        traj_.fluxes.push_back(std::move(flux_acc_));
        in_window_ = 0;
    }
}

Trajectory TrajectoryRecorder::take() { return std::move(traj_); }

Trajectory solve(const SolverConfig& config, const KineticState& sigma0, std::size_t stride) {
    TrajectoryRecorder rec(config, sigma0, stride);
    integrate(config, sigma0, [&rec](const StepView& s) { rec(s); });
    return rec.take();
}

GridMeasure heat_reference(const GridMeasure& rho0, double alpha, double t) {
    const std::size_t n = rho0.size();
    auto c = detail::rfft(rho0.w);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double K = 2.0 * std::numbers::pi * static_cast<double>(k);
        c[k] *= std::exp(-alpha * K * K * t);
    }
    return GridMeasure(rho0.grid, detail::irfft(c, n));
}

GridMeasure heat_flux_average(const GridMeasure& rho0, double alpha, double t0, double t1) {
    const std::size_t n = rho0.size();
    const double h = t1 - t0;
    auto c = detail::rfft(rho0.w);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double K = 2.0 * std::numbers::pi * static_cast<double>(k);
        if (k == 0 || 2 * k == n) {
            c[k] = 0.0;
            continue;
        }
        const double a = alpha * K * K;
        // (1/h) int_{t0}^{t1} e^{-a t} dt, written to stay accurate for small a h.
        const double avg = h > 0.0 ? std::exp(-a * t0) * (-std::expm1(-a * h)) / (a * h) : std::exp(-a * t0);
        c[k] *= -alpha * cplx(0.0, K) * avg;
    }
    return GridMeasure(rho0.grid, detail::irfft(c, n));
}

DensityFluxPair wave_reference(const DensityFluxPair& pair0, double V, double t) {
    const TorusGrid& g = pair0.rho.grid;
    KineticState s = lift_pi(pair0, ModelParams(V, 0.0));
    const double d = V * t;
    const double cells = d / g.dx();
    const double rc = std::round(cells);
    if (std::abs(cells - rc) <= 1e-9 * std::max(1.0, std::abs(cells))) {
        const auto sh = static_cast<long long>(rc);
        s.plus.w = circular_shift(s.plus.w, sh);
        s.minus.w = circular_shift(s.minus.w, -sh);
    } else {
        s.plus.w = detail::spectral_shift(s.plus.w, d);
        s.minus.w = detail::spectral_shift(s.minus.w, -d);
    }
    return project_pi(s);
}

}  // namespace kacfc
