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

#include "kacfc/variational.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kacfc {
namespace {

// f log f - f + 1, with a series near f = 1 to avoid cancellation.
double ent_density(double f) {
    if (f == 0.0) return 1.0;
    const double d = f - 1.0;
    if (std::abs(d) < 1e-2) {
        double term = d * d;
        double s = 0.0;
        double sign = 1.0;
        for (int k = 2; k <= 9; ++k) {
            s += sign * term / (k * (k - 1.0));
            term *= d;
            sign = -sign;
        }
        return s;
    }
    return f * std::log(f) - f + 1.0;
}

double ent_cell(double mu, double nu) {
    if (mu < 0.0 || nu < 0.0) return kInfinity;
    if (nu == 0.0) return mu == 0.0 ? 0.0 : kInfinity;
    return nu * ent_density(mu / nu);
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool transport_matches(const KineticState& sigma, const FluxPair& j) {
    const double V = sigma.params.V;
    const double tol_p = 1e-10 * V * std::max(max_abs(sigma.plus.w), 1e-300);
    const double tol_m = 1e-10 * V * std::max(max_abs(sigma.minus.w), 1e-300);
    for (std::size_t i = 0; i < sigma.plus.size(); ++i) {
        if (std::abs(j.j1.plus.w[i] - V * sigma.plus.w[i]) > tol_p) return false;
        if (std::abs(j.j1.minus.w[i] + V * sigma.minus.w[i]) > tol_m) return false;
    }
    return true;
}

double jump_entropy(const KineticState& sigma, const FluxPair& j, double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.plus.size(); ++i) {
        s += ent_cell(j.j2.plus.w[i], lambda * sigma.plus.w[i]);
        s += ent_cell(j.j2.minus.w[i], lambda * sigma.minus.w[i]);
    }
    return s;
}

}  // namespace

double rel_entropy(const GridMeasure& mu, const GridMeasure& nu) {
    if (!(mu.grid == nu.grid)) throw InvalidArgument("grid mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += ent_cell(mu.w[i], nu.w[i]);
    return s;
}

double rel_entropy(const VelocityPair& mu, const VelocityPair& nu) {
    return rel_entropy(mu.plus, nu.plus) + rel_entropy(mu.minus, nu.minus);
}

double rel_entropy(const KineticState& mu, const KineticState& nu) {
    return rel_entropy(mu.plus, nu.plus) + rel_entropy(mu.minus, nu.minus);
}

double entropy_to_stationary(const KineticState& sigma) {
    return rel_entropy(sigma, KineticState::stationary(sigma.grid(), sigma.params));
}

double entropy_to_lebesgue(const GridMeasure& rho) { return rel_entropy(rho, GridMeasure::uniform(rho.grid)); }

double fisher_info(const KineticState& sigma) {
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.plus.size(); ++i) {
        const double d = std::sqrt(std::max(sigma.plus.w[i], 0.0)) - std::sqrt(std::max(sigma.minus.w[i], 0.0));
        s += d * d;
    }
    return s;
}

double generalized_fi(const KineticState& sigma, const KineticState& ref) {
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.plus.size(); ++i) {
        const double eta[2] = {sigma.plus.w[i], sigma.minus.w[i]};
        const double zeta[2] = {ref.plus.w[i], ref.minus.w[i]};
        double f[2];
        for (int v = 0; v < 2; ++v) {
            if (zeta[v] > 0.0) {
                f[v] = eta[v] / zeta[v];
            } else if (eta[v] == 0.0) {
                f[v] = 0.0;
            } else {
                return kInfinity;
            }
        }
        for (int v = 0; v < 2; ++v) {
            const double fr = f[1 - v];
            s += fr * zeta[v] - eta[v] - 0.5 * (std::sqrt(fr) * std::sqrt(eta[v] * zeta[v]) - eta[v]);
        }
    }
    return s;
}

TestFunctionGrid TestFunctionGrid::zeros(std::size_t n) {
    return TestFunctionGrid{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                            std::vector<double>(n, 0.0)};
}

double pairing(const TestFunctionGrid& phi, const FluxPair& j) {
    double s = 0.0;
    for (std::size_t i = 0; i < phi.phi1_plus.size(); ++i) {
        s += phi.phi1_plus[i] * j.j1.plus.w[i] + phi.phi1_minus[i] * j.j1.minus.w[i];
        s += phi.phi2_plus[i] * j.j2.plus.w[i] + phi.phi2_minus[i] * j.j2.minus.w[i];
    }
    return s;
}

double hamiltonian(const KineticState& sigma, const TestFunctionGrid& phi) {
    const double V = sigma.params.V;
    const double lam = sigma.params.lambda;
    double s = 0.0;
    for (std::size_t i = 0; i < sigma.plus.size(); ++i) {
        s += (V * phi.phi1_plus[i] + lam * std::expm1(phi.phi2_plus[i])) * sigma.plus.w[i];
        s += (-V * phi.phi1_minus[i] + lam * std::expm1(phi.phi2_minus[i])) * sigma.minus.w[i];
    }
    return s;
}

double lagrangian(const KineticState& sigma, const FluxPair& j) {
    if (!transport_matches(sigma, j)) return kInfinity;
    return jump_entropy(sigma, j, sigma.params.lambda);
}

TestFunctionGrid legendre_argmax(const KineticState& sigma, const FluxPair& j, double floor) {
    const std::size_t n = sigma.plus.size();
    TestFunctionGrid phi = TestFunctionGrid::zeros(n);
    const double lam = sigma.params.lambda;
    auto arg = [&](double jj, double s) {
        if (jj <= 0.0 || lam * s <= 0.0) return floor;
        return std::log(jj / (lam * s));
    };
    for (std::size_t i = 0; i < n; ++i) {
        phi.phi2_plus[i] = arg(j.j2.plus.w[i], sigma.plus.w[i]);
        phi.phi2_minus[i] = arg(j.j2.minus.w[i], sigma.minus.w[i]);
    }
    return phi;
}

double lagrangian_sup_form(const KineticState& sigma, const FluxPair& j) {
    if (!transport_matches(sigma, j)) return kInfinity;
    const TestFunctionGrid phi = legendre_argmax(sigma, j);
    return pairing(phi, j) - hamiltonian(sigma, phi);
}

double interval_rate(const KineticState& before, const KineticState& midpoint, const KineticState& after,
                     const FluxPair& flux, double dt, double lambda) {
    if (!transport_matches(midpoint, flux)) return kInfinity;
    const double a = jump_entropy(before, flux, lambda);
    const double b = jump_entropy(after, flux, lambda);
    return 0.5 * (a + b) * dt;
}

double rate_functional(const Trajectory& traj) {
    const double lam = traj.config.params.lambda;
    double s = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        s += interval_rate(traj.states[k], traj.midpoints[k], traj.states[k + 1], traj.fluxes[k], traj.dt(k), lam);
    }
    return s;
}

double rate_functional_rescaled(const Trajectory& traj, double alpha) {
    if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
    const double V = traj.config.params.V;
    const double lam = V * V / (2.0 * alpha);
    double s = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        s += interval_rate(traj.states[k], traj.midpoints[k], traj.states[k + 1], traj.fluxes[k], traj.dt(k), lam);
    }
    return s;
}

void RateAccumulator::operator()(const StepView& step) {
    value_ += interval_rate(step.before, step.midpoint, step.after, step.flux, step.t1 - step.t0, lambda_);
}

Trajectory mollify(const Trajectory& traj, double eps) {
    Trajectory out = traj;
    for (auto& s : out.states) s = mollify(s, eps);
    for (auto& s : out.midpoints) s = mollify(s, eps);
    for (auto& f : out.fluxes) {
        for (GridMeasure* g : {&f.j1.plus, &f.j1.minus, &f.j2.plus, &f.j2.minus}) *g = mollify(*g, eps);
    }
    return out;
}

double default_fir_tolerance(const Trajectory& traj) {
    double h = 0.0;
    for (std::size_t k = 0; k < traj.intervals(); ++k) h = std::max(h, traj.dt(k));
    return 1e-8 + 10.0 * h * h;
}

FunctionalReport fir_check(const Trajectory& traj, std::optional<double> tol_fir) {
    FunctionalReport rep;
    rep.tol_fir = tol_fir.value_or(default_fir_tolerance(traj));
    const double lam = traj.config.params.lambda;
    const double e0 = entropy_to_stationary(traj.states.front());
    if (!std::isfinite(e0)) {
        throw IllPrepared("initial datum has infinite entropy relative to the stationary measure; mollify it first");
    }
    rep.entropy_initial = e0;
    double fi_prev = fisher_info(traj.states.front());
    double fi_int = 0.0;
    double rate = 0.0;
    double e_prev = e0;
    rep.fir_slack = kInfinity;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const KineticState& s = traj.states[k];
        FunctionalRow row;
        row.t = traj.times[k];
        row.entropy = (k == 0) ? e0 : entropy_to_stationary(s);
        row.fi = (k == 0) ? fi_prev : fisher_info(s);
        if (k > 0) {
            const double h = traj.dt(k - 1);
            fi_int += 0.5 * h * (fi_prev + row.fi);
            rate += interval_rate(traj.states[k - 1], traj.midpoints[k - 1], s, traj.fluxes[k - 1], h, lam);
            if (row.entropy > e_prev + 1e-10) rep.entropy_nonincreasing = false;
        }
        row.fi_integral = fi_int;
        row.rate_cum = rate;
        row.lhs = row.entropy + lam * fi_int;
        row.rhs = e0 + rate;
        row.slack = row.rhs - row.lhs;
        rep.fir_slack = std::min(rep.fir_slack, row.slack);
        fi_prev = row.fi;
        e_prev = row.entropy;
        rep.rows.push_back(row);
    }
    rep.entropy_final = rep.rows.back().entropy;
    rep.fi_integral = fi_int;
    rep.rate_value = rate;
    rep.slack_ok = !(rep.fir_slack < -rep.tol_fir);
    return rep;
}

FunctionalReport generalized_fir(const Trajectory& traj, const Trajectory& ref) {
    if (traj.states.size() != ref.states.size()) throw InvalidArgument("reference trajectory has a different time grid");
    FunctionalReport rep;
    const double lam = traj.config.params.lambda;
    const double e0 = rel_entropy(traj.states.front(), ref.states.front());
    rep.entropy_initial = e0;
    rep.tol_fir = default_fir_tolerance(traj);
    double g_prev = generalized_fi(traj.states.front(), ref.states.front());
    double g_int = 0.0;
    double rate = 0.0;
    double e_prev = e0;
    rep.fir_slack = kInfinity;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        FunctionalRow row;
        row.t = traj.times[k];
        row.entropy = (k == 0) ? e0 : rel_entropy(traj.states[k], ref.states[k]);
        row.fi = (k == 0) ? g_prev : generalized_fi(traj.states[k], ref.states[k]);
        if (k > 0) {
            const double h = traj.dt(k - 1);
            g_int += 0.5 * h * (g_prev + row.fi);
            rate += interval_rate(traj.states[k - 1], traj.midpoints[k - 1], traj.states[k], traj.fluxes[k - 1], h,
                                  lam);
            if (row.entropy > e_prev + 1e-10) rep.entropy_nonincreasing = false;
        }
        row.fi_integral = g_int;
        row.rate_cum = rate;
        row.lhs = row.entropy + g_int;
        row.rhs = rate + e0;
        row.slack = row.rhs - row.lhs;
        rep.fir_slack = std::min(rep.fir_slack, row.slack);
        g_prev = row.fi;
        e_prev = row.entropy;
        rep.rows.push_back(row);
    }
    rep.entropy_final = rep.rows.back().entropy;
    rep.fi_integral = g_int;
    rep.rate_value = rate;
    rep.slack_ok = !(rep.fir_slack < -rep.tol_fir);
    return rep;
}

}  // namespace kacfc
