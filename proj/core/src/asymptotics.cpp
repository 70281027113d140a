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

#include "kacfc/asymptotics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "fft.hpp"
#include "kacfc/kac_particles.hpp"
#include "kacfc/kac_solver.hpp"
#include "kacfc/variational.hpp"

namespace kacfc {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

GridMeasure derivative(const GridMeasure& m) { return GridMeasure(m.grid, detail::spectral_derivative(m.w)); }

std::size_t cells_for(const SweepSpec& spec, double p) {
    const double scale = std::pow(p / spec.base_parameter, spec.cell_exponent);
    const double n = std::round(static_cast<double>(spec.base_cells) * scale);
    if (!(n >= 2.0)) throw InvalidArgument("grid policy produced fewer than two cells");
    return static_cast<std::size_t>(n);
}

std::size_t steps_per(double span, double dt, const char* what) {
    const double r = span / dt;
    const double rr = std::round(r);
    if (rr < 1.0 || std::abs(r - rr) > 1e-9 * std::max(1.0, rr)) {
        std::ostringstream os;
        os << what << " " << span << " is not a multiple of dt = " << dt;
        throw InvalidArgument(os.str());
    }
    return static_cast<std::size_t>(rr);
}

// Runs independent jobs on a small pool; exceptions are rethrown in job order.
template <class F>
void run_jobs(std::size_t count, unsigned threads, F&& job) {
    const unsigned W = static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), std::max<std::size_t>(count, 1)));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (W <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < W; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct StepStats {
    double V = 1.0;
    bool diffusive = true;
    double rate = 0.0;
    double lambda_rate = 0.0;
    double derived_tv = 0.0;
    double jump_tv = 0.0;
    double mass0 = 1.0;
    double max_drift = 0.0;
    double min_mass = 0.0;

    void operator()(const StepView& s) {
        const double dt = s.t1 - s.t0;
        rate += interval_rate(s.before, s.midpoint, s.after, s.flux, dt, lambda_rate);
        const auto& jp = s.flux.j2.plus.w;
        const auto& jm = s.flux.j2.minus.w;
        double dtv = 0.0;
        double jtv = 0.0;
        for (std::size_t i = 0; i < jp.size(); ++i) {
            dtv += std::abs(jp[i] - jm[i]);
            jtv += std::abs(jp[i]) + std::abs(jm[i]);
        }
        // J = sum_v (v/V) j^2 in the rescaled frame, sum_v v j^2 otherwise.
        derived_tv += dt * dtv * (diffusive ? 1.0 / V : V);
        jump_tv += dt * jtv;
        max_drift = std::max(max_drift, std::abs(s.after.total_mass() - mass0));
        for (std::size_t i = 0; i < jp.size(); ++i) {
            min_mass = std::min({min_mass, s.after.plus.w[i], s.after.minus.w[i]});
        }
    }
};

ConvergenceRecord run_entry(const SweepSpec& spec, double p) {
    ConvergenceRecord rec;
    rec.parameter = p;
    const bool diffusive = spec.mode == SweepMode::diffusive;
    const ModelParams params = diffusive ? ModelParams::diffusive(p, spec.alpha) : ModelParams(spec.V, p);
    rec.V = params.V;
    rec.lambda = params.lambda;
    rec.n_cells = cells_for(spec, p);
    const TorusGrid grid(rec.n_cells);
    const double dt = static_cast<double>(spec.shift) * grid.dx() / params.V;
    rec.dt = dt;
    const std::size_t stride = steps_per(spec.snapshot_dt, dt, "snapshot spacing");
    steps_per(spec.t_end, spec.snapshot_dt, "horizon");

    const DensityFluxPair pair0 = spec.initial(grid, params);
    const KineticState sigma0 = lift_pi(pair0, params);
    if (diffusive && !std::isfinite(entropy_to_stationary(sigma0))) {
        throw IllPrepared("diffusive sweep needs initial data with finite entropy");
    }
    const SolverConfig config = SolverConfig::make(grid, params, dt, spec.t_end);

    TrajectoryRecorder recorder(config, sigma0, stride);
    StepStats stats;
    stats.V = params.V;
    stats.diffusive = diffusive;
    stats.lambda_rate = params.lambda;
    stats.mass0 = sigma0.total_mass();
    stats.min_mass = std::min(*std::min_element(sigma0.plus.w.begin(), sigma0.plus.w.end()),
                              *std::min_element(sigma0.minus.w.begin(), sigma0.minus.w.end()));
    integrate(config, sigma0, [&](const StepView& s) {
        recorder(s);
        stats(s);
    });
    rec.snapshots = project_trajectory(recorder.take());
    rec.rate_functional = stats.rate;
    rec.derived_flux_tv = stats.derived_tv;
    rec.jump_tv = stats.jump_tv;
    rec.jump_tv_bound = params.lambda * spec.t_end;
    rec.max_mass_drift = stats.max_drift;
    rec.min_cell_mass = stats.min_mass;
    rec.cone_ok = stats.min_mass >= -1e-14;

    const auto& S = rec.snapshots;
    for (std::size_t k = 0; k < S.times.size(); ++k) {
        const double t = S.times[k];
        if (diffusive) {
            const GridMeasure ref = heat_reference(pair0.rho, spec.alpha, t);
            rec.sup_w1_rho = std::max(rec.sup_w1_rho, wasserstein1(S.rho[k], ref));
            const GridMeasure ref_omega = -spec.alpha * derivative(ref);
            rec.sup_dist_omega = std::max(rec.sup_dist_omega, bl_upper_bound(S.omega[k], ref_omega));
        } else {
            const DensityFluxPair ref = wave_reference(pair0, params.V, t);
            rec.sup_w1_rho = std::max(rec.sup_w1_rho, wasserstein1(S.rho[k], ref.rho));
            rec.sup_dist_omega = std::max(rec.sup_dist_omega, bl_upper_bound(S.omega[k], ref.omega));
        }
    }
    return rec;
}

void summarize(SweepResult& out) {
    std::vector<double> ps, errs;
    out.strictly_decreasing = true;
    for (std::size_t i = 0; i < out.records.size(); ++i) {
        ps.push_back(out.records[i].parameter);
        errs.push_back(out.records[i].sup_w1_rho);
        if (i > 0 && !(errs[i] < errs[i - 1])) out.strictly_decreasing = false;
    }
    if (!errs.empty() && errs.front() > 0.0) out.error_ratio = errs.back() / errs.front();
    bool positive = ps.size() >= 2;
    for (std::size_t i = 0; i < ps.size(); ++i) positive = positive && ps[i] > 0.0 && errs[i] > 0.0;
    out.loglog_slope = positive ? loglog_slope(ps, errs) : std::nan("");
}

std::vector<ConvergenceRecord> run_all(const SweepSpec& spec) {
    std::vector<ConvergenceRecord> records(spec.parameters.size());
    run_jobs(spec.parameters.size(), spec.threads, [&](std::size_t i) {
        records[i] = run_entry(spec, spec.parameters[i]);
    });
    return records;
}

}  // namespace

std::string to_string(SweepMode m) { return m == SweepMode::diffusive ? "diffusive" : "hyperbolic"; }

InitialDatum diffusive_bump(double kappa, double alpha) {
    return [kappa, alpha](const TorusGrid& g, const ModelParams&) {
        GridMeasure rho = von_mises(g, kappa);
        GridMeasure omega = -alpha * derivative(rho);
        return DensityFluxPair{std::move(rho), std::move(omega)};
    };
}

InitialDatum symmetric_bump(double kappa) {
    return [kappa](const TorusGrid& g, const ModelParams&) {
        GridMeasure rho = von_mises(g, kappa);
        return DensityFluxPair{rho, GridMeasure::zeros(g)};
    };
}

InitialDatum tilted_bump(double kappa, double theta) {
    if (std::abs(theta) > 1.0) throw InvalidArgument("tilt must lie in [-1, 1]");
    return [kappa, theta](const TorusGrid& g, const ModelParams& p) {
        GridMeasure rho = von_mises(g, kappa);
        GridMeasure omega = (theta * p.V) * rho;
        return DensityFluxPair{std::move(rho), std::move(omega)};
    };
}

SweepSpec diffusive_sweep_spec(double alpha, std::vector<double> V_list, InitialDatum initial, double t_end,
                               double snapshot_dt, std::size_t cells_at_first_V) {
    SweepSpec s;
    s.mode = SweepMode::diffusive;
    s.alpha = alpha;
    s.parameters = std::move(V_list);
    s.initial = std::move(initial);
    s.t_end = t_end;
    s.snapshot_dt = snapshot_dt;
    s.base_cells = cells_at_first_V;
    s.base_parameter = s.parameters.empty() ? 1.0 : s.parameters.front();
    s.cell_exponent = 2.0;
    s.shift = 1;
    return s;
}

SweepSpec hyperbolic_sweep_spec(double V, std::vector<double> lambda_list, InitialDatum initial, double t_end,
                                double snapshot_dt, std::size_t cells, std::size_t shift) {
    SweepSpec s;
    s.mode = SweepMode::hyperbolic;
    s.V = V;
    s.parameters = std::move(lambda_list);
    s.initial = std::move(initial);
    s.t_end = t_end;
    s.snapshot_dt = snapshot_dt;
    s.base_cells = cells;
    s.base_parameter = 1.0;
    s.cell_exponent = 0.0;
    s.shift = shift;
    return s;
}

SweepResult run_diffusive_sweep(const SweepSpec& spec) {
    if (spec.mode != SweepMode::diffusive) throw InvalidArgument("spec is not a diffusive sweep");
    if (spec.parameters.empty()) throw InvalidArgument("empty V list");
    if (!(spec.alpha > 0.0)) throw InvalidArgument("diffusive sweep needs alpha > 0");
    for (std::size_t i = 0; i < spec.parameters.size(); ++i) {
        if (!(spec.parameters[i] > 0.0)) throw InvalidArgument("V values must be positive");
        if (i > 0 && !(spec.parameters[i] > spec.parameters[i - 1])) throw InvalidArgument("V list must increase");
    }
    if (!spec.initial) throw InvalidArgument("sweep needs an initial datum");
    SweepResult out;
    out.mode = spec.mode;
    out.alpha = spec.alpha;
    out.records = run_all(spec);
    summarize(out);
    const auto& last = out.records.back();
    const TorusGrid grid(last.n_cells);
    const ModelParams params = ModelParams::diffusive(last.V, spec.alpha);
    out.limit_reference =
        heat_pair_trajectory(spec.initial(grid, params).rho, spec.alpha, spec.t_end, last.snapshots.intervals());
    out.standin = last.snapshots;
    std::ostringstream os;
    os << "limit reference: exact heat flow on the finest grid; stand-in: finest trajectory, V = " << last.parameter;
    out.limit_note = os.str();
    return out;
}

SweepResult run_hyperbolic_sweep(const SweepSpec& spec) {
    if (spec.mode != SweepMode::hyperbolic) throw InvalidArgument("spec is not a hyperbolic sweep");
    if (spec.parameters.empty()) throw InvalidArgument("empty lambda list");
    if (!(spec.V > 0.0)) throw InvalidArgument("hyperbolic sweep needs V > 0");
    for (double l : spec.parameters) {
        if (!(l >= 0.0)) throw InvalidArgument("lambda values must be nonnegative");
    }
    if (!spec.initial) throw InvalidArgument("sweep needs an initial datum");
    SweepResult out;
    out.mode = spec.mode;
    out.V = spec.V;
    out.records = run_all(spec);
    summarize(out);
    const auto& last = out.records.back();
    const TorusGrid grid(last.n_cells);
    const ModelParams params(spec.V, 0.0);
    out.limit_reference =
        wave_pair_trajectory(spec.initial(grid, params), spec.V, spec.t_end, last.snapshots.intervals());
    out.standin = last.snapshots;
    std::ostringstream os;
    os << "limit reference: exact wave solution on the sweep grid; stand-in: finest trajectory, lambda = "
       << last.parameter;
    out.limit_note = os.str();
    return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
    return spec.mode == SweepMode::diffusive ? run_diffusive_sweep(spec) : run_hyperbolic_sweep(spec);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InvalidArgument("slope fit needs two or more points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

EquicontinuityFit equicontinuity_diagnostic(const std::vector<const DensityFluxTrajectory*>& trajectories,
                                            const std::vector<double>& h_list) {
    if (h_list.empty()) throw InvalidArgument("empty h list");
    EquicontinuityFit fit;
    fit.h = h_list;
    fit.min_exponent = kInfinity;
    double cmin = kInfinity, cmax = 0.0;
    for (const auto* traj : trajectories) {
        const auto& T = traj->times;
        if (T.size() < 2) throw InvalidArgument("trajectory needs at least two snapshots");
        const double spacing = T[1] - T[0];
        std::vector<double> inc;
        for (double h : h_list) {
            const std::size_t m = steps_per(h, spacing, "increment");
            double sup = 0.0;
            for (std::size_t k = 0; k + m < T.size(); ++k) sup = std::max(sup, wasserstein1(traj->rho[k + m], traj->rho[k]));
            inc.push_back(sup);
        }
        const bool any_zero = std::any_of(inc.begin(), inc.end(), [](double v) { return !(v > 0.0); });
        double e = kInfinity;
        double c = 0.0;
        if (!any_zero && h_list.size() >= 2) {
            e = loglog_slope(h_list, inc);
            double lc = 0.0;
            for (std::size_t i = 0; i < inc.size(); ++i) lc += std::log(inc[i]) - e * std::log(h_list[i]);
            c = std::exp(lc / static_cast<double>(inc.size()));
        }
        double hc = 0.0;
        for (std::size_t i = 0; i < inc.size(); ++i) hc = std::max(hc, inc[i] / std::sqrt(h_list[i]));
        fit.increments.push_back(inc);
        fit.exponents.push_back(e);
        fit.fitted_constants.push_back(c);
        fit.holder_constants.push_back(hc);
        fit.min_exponent = std::min(fit.min_exponent, e);
        cmin = std::min(cmin, hc);
        cmax = std::max(cmax, hc);
    }
    if (trajectories.empty()) fit.min_exponent = 0.0;
    fit.constant_ratio = cmax > 0.0 ? cmax / cmin : 1.0;
    fit.ok = !trajectories.empty() && fit.min_exponent >= 0.4 && fit.constant_ratio <= 4.0;
    return fit;
}

EquicontinuityFit equicontinuity_diagnostic(std::vector<ConvergenceRecord>& records, const std::vector<double>& h_list) {
    std::vector<const DensityFluxTrajectory*> ptrs;
    for (const auto& r : records) ptrs.push_back(&r.snapshots);
    EquicontinuityFit fit = equicontinuity_diagnostic(ptrs, h_list);
    for (std::size_t i = 0; i < records.size(); ++i) {
        records[i].holder_exponent = fit.exponents[i];
        records[i].holder_constant = fit.holder_constants[i];
    }
    return fit;
}

TestFunction fixed_test_function(std::string name, std::function<double(double)> f) {
    return TestFunction{std::move(name), [f](const DensityFluxTrajectory& traj, std::size_t) {
                            const TorusGrid& g = traj.rho.front().grid;
                            std::vector<double> v(g.n());
                            for (std::size_t i = 0; i < g.n(); ++i) v[i] = f(g.center(i));
                            return v;
                        }};
}

std::vector<TestFunction> default_psi_bank(SweepMode mode, double alpha) {
    std::vector<TestFunction> bank;
    bank.push_back(fixed_test_function("sin2pix", [](double x) { return std::sin(kTwoPi * x); }));
    bank.push_back(fixed_test_function("cos2pix", [](double x) { return std::cos(kTwoPi * x); }));
    bank.push_back(fixed_test_function("sin4pix", [](double x) { return std::sin(2.0 * kTwoPi * x); }));
    if (mode == SweepMode::hyperbolic) return bank;
    bank.push_back(TestFunction{"neg_alpha_dlogrho", [alpha](const DensityFluxTrajectory& traj, std::size_t k) {
                                    const GridMeasure& r = traj.rho_mid[k];
                                    const double dx = r.grid.dx();
                                    const auto d = detail::spectral_derivative(r.w);
                                    std::vector<double> v(r.size());
                                    for (std::size_t i = 0; i < r.size(); ++i) {
                                        v[i] = -alpha * d[i] / std::max(r.w[i], 1e-8 * dx);
                                    }
                                    return v;
                                }});
    bank.push_back(TestFunction{"pointwise_optimum", [alpha](const DensityFluxTrajectory& traj, std::size_t k) {
                                    const GridMeasure& r = traj.rho_mid[k];
                                    const GridMeasure& w = traj.omega_mid[k];
                                    const double dx = r.grid.dx();
                                    const auto d = detail::spectral_derivative(r.w);
                                    std::vector<double> v(r.size());
                                    for (std::size_t i = 0; i < r.size(); ++i) {
                                        v[i] = -(alpha * d[i] + w.w[i]) / std::max(r.w[i], 1e-8 * dx);
                                    }
                                    return v;
                                }});
    return bank;
}

double diffusive_pairing(const DensityFluxTrajectory& traj, const TestFunction& psi, double alpha, bool limit) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    if (!limit && traj.flux.size() != traj.intervals()) {
        throw InvalidArgument("finite-parameter pairing needs stored fluxes");
    }
    const double V2 = traj.params.V * traj.params.V;
    double s = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const auto p = psi.eval(traj, k);
        const GridMeasure& r = traj.rho_mid[k];
        const GridMeasure& w = traj.omega_mid[k];
        std::vector<double> J(r.size());
        if (limit) {
            const auto d = detail::spectral_derivative(r.w);
            for (std::size_t i = 0; i < J.size(); ++i) J[i] = -0.5 * d[i];
        } else {
            for (std::size_t i = 0; i < J.size(); ++i) J[i] = traj.flux[k].jump_omega.w[i] / V2;
        }
        double a = 0.0;
        for (std::size_t i = 0; i < J.size(); ++i) {
            a += p[i] * (J[i] - w.w[i] / (2.0 * alpha)) - p[i] * p[i] * r.w[i] / (4.0 * alpha);
        }
        s += a * traj.dt(k);
    }
    return s;
}

double hyperbolic_pairing(const DensityFluxTrajectory& traj, const TestFunction& psi) {
    if (traj.flux.size() != traj.intervals()) throw InvalidArgument("hyperbolic pairing needs stored fluxes");
    double s = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        const auto p = psi.eval(traj, k);
        double a = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) a += p[i] * traj.flux[k].jump_omega.w[i];
        s += a * traj.dt(k);
    }
    return s;
}

LiminfReport liminf_pairing(const SweepResult& sweep, const std::vector<TestFunction>& bank) {
    LiminfReport rep;
    rep.note = sweep.limit_note;
    const bool diffusive = sweep.mode == SweepMode::diffusive;
    auto pair_with = [&](const DensityFluxTrajectory& traj, const TestFunction& psi, bool limit) {
        if (diffusive) return diffusive_pairing(traj, psi, sweep.alpha, limit);
        return traj.flux.empty() ? 0.0 : hyperbolic_pairing(traj, psi);
    };
    for (const auto& psi : bank) {
        rep.psi_names.push_back(psi.name);
        rep.limit_pairings.push_back(pair_with(sweep.limit_reference, psi, true));
        rep.standin_pairings.push_back(pair_with(sweep.standin, psi, true));
    }
    double min_rate = kInfinity;
    for (const auto& r : sweep.records) {
        rep.parameters.push_back(r.parameter);
        rep.rate_values.push_back(r.rate_functional);
        min_rate = std::min(min_rate, r.rate_functional);
        std::vector<double> row;
        double dist = 0.0;
        for (std::size_t p = 0; p < bank.size(); ++p) {
            const double v = diffusive ? diffusive_pairing(r.snapshots, bank[p], sweep.alpha, false)
                                       : hyperbolic_pairing(r.snapshots, bank[p]);
            row.push_back(v);
            dist = std::max(dist, std::abs(v - rep.limit_pairings[p]));
        }
        rep.pairings.push_back(std::move(row));
        rep.distance_to_limit.push_back(dist);
    }
    for (double lp : rep.limit_pairings) rep.below_rate.push_back(lp <= min_rate + rep.tolerance);
    return rep;
}

}  // namespace kacfc
