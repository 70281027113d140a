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

#include "kacfc_cli/figure1.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "kacfc/kac_solver.hpp"
#include "kacfc/variational.hpp"

namespace kacfc::cli {
namespace {

double torus_distance(double a, double b) {
    const double d = std::abs(a - b);
    return std::min(d, 1.0 - d);
}

// States of the Strang run at each requested time.
std::vector<KineticState> run_to_times(const KineticState& sigma0, double dt, const std::vector<double>& times) {
    std::map<std::size_t, std::size_t> wanted;
    std::size_t last = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double r = times[i] / dt;
        const double rr = std::round(r);
        if (std::abs(r - rr) > 1e-9 * std::max(1.0, rr)) {
            std::ostringstream os;
            os << "figure time " << times[i] << " is not a multiple of dt = " << dt;
            throw InvalidArgument(os.str());
        }
        wanted.emplace(static_cast<std::size_t>(rr), i);
        last = std::max(last, static_cast<std::size_t>(rr));
    }
    std::vector<KineticState> out(times.size(), sigma0);
    KineticState cur = sigma0;
    for (std::size_t k = 0; k <= last; ++k) {
        for (auto [it, end] = wanted.equal_range(k); it != end; ++it) out[it->second] = cur;
        if (k == last) break;
        cur = step_strang(cur, dt).state;
    }
    return out;
}

std::vector<double> rho_density(const KineticState& s) {
    std::vector<double> d(s.grid().n());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = (s.plus.w[i] + s.minus.w[i]) / s.grid().dx();
    return d;
}

KineticState symmetric_state(const GridMeasure& rho, const ModelParams& p) {
    return KineticState(p, 0.5 * rho, 0.5 * rho);
}

// Nondecreasing across the rising front at x0 and nonincreasing across the
// falling front at x0 + 1/2, checked on q cells either side of each front.
bool monotone_fronts(const std::vector<double>& d, const TorusGrid& g, double x0, std::size_t q) {
    const std::size_t n = g.n();
    const std::size_t c0 = g.cell_of(x0);
    for (std::size_t s = 0; s + 1 < 2 * q; ++s) {
        const std::size_t a = g.wrap(static_cast<long long>(c0) - static_cast<long long>(q) + static_cast<long long>(s));
        const std::size_t b = g.wrap(static_cast<long long>(a) + 1);
        if (d[b] < d[a] - 1e-12 * std::max(1.0, std::abs(d[a]))) return false;
        const std::size_t a2 = g.wrap(static_cast<long long>(a) + static_cast<long long>(n / 2));
        const std::size_t b2 = g.wrap(static_cast<long long>(a2) + 1);
        if (d[b2] > d[a2] + 1e-12 * std::max(1.0, std::abs(d[a2]))) return false;
    }
    return true;
}

}  // namespace

double mollifier_radius(double eps) { return 7.0 * std::sqrt(eps); }

Figure1Result run_figure1(const Figure1Config& config) {
    if (!(config.lambda > 0.0)) throw InvalidArgument("figure run needs lambda > 0 for the heat comparison");
    if (config.times.empty()) throw InvalidArgument("figure run needs at least one time");
    const TorusGrid g(config.n);
    const ModelParams p(config.V, config.lambda);
    const double alpha = p.alpha();
    const double dt = g.dx() / p.V;
    const double r = mollifier_radius(config.eps);

    Figure1Result res;
    res.config = config;

    const GridMeasure delta = GridMeasure::dirac(g, config.x0);
    const double c0 = g.center(g.cell_of(config.x0));
    GridMeasure step = GridMeasure::from_density(g, [&](double x) {
        const double y = x - config.x0 - std::floor(x - config.x0);
        return y < 0.5 ? 2.0 : 0.0;
    });

    const KineticState fc_delta0 = symmetric_state(delta, p);
    const KineticState fc_moll0 = mollify(fc_delta0, config.eps);
    const KineticState fc_step0 = symmetric_state(step, p);
    const auto fc_delta = run_to_times(fc_delta0, dt, config.times);
    const auto fc_moll = run_to_times(fc_moll0, dt, config.times);
    const auto fc_step = run_to_times(fc_step0, dt, config.times);

    res.fc_support_excess = -kInfinity;
    res.heat_min_density = kInfinity;
    res.initial_profiles_match = true;
    for (std::size_t i = 0; i < config.times.size(); ++i) {
        const double t = config.times[i];
        const auto heat_delta = heat_reference(delta, alpha, t);
        const auto heat_step = heat_reference(step, alpha, t);
        res.profiles.push_back({"delta", "fc", t, rho_density(fc_delta[i])});
        res.profiles.push_back({"delta", "fc_mollified", t, rho_density(fc_moll[i])});
        res.profiles.push_back({"delta", "heat", t, heat_delta.densities()});
        res.profiles.push_back({"step", "fc", t, rho_density(fc_step[i])});
        res.profiles.push_back({"step", "heat", t, heat_step.densities()});

        double outside = 0.0;
        double width = 0.0;
        for (std::size_t c = 0; c < g.n(); ++c) {
            const double d = torus_distance(g.center(c), c0);
            if (d > p.V * t + r + g.dx()) outside += fc_moll[i].plus.w[c] + fc_moll[i].minus.w[c];
            if (fc_delta[i].plus.w[c] + fc_delta[i].minus.w[c] > 0.0) width = std::max(width, 2.0 * d);
        }
        res.fc_mass_outside_cone = std::max(res.fc_mass_outside_cone, outside);
        res.fc_support_excess = std::max(res.fc_support_excess, width - (2.0 * p.V * t + 2.0 * g.dx()));
        res.fc_entropy.push_back(entropy_to_stationary(fc_moll[i]));

        if (t >= 1e-3) {
            for (const auto* h : {&heat_delta, &heat_step}) {
                for (double v : h->densities()) res.heat_min_density = std::min(res.heat_min_density, v);
            }
        }
        if (t > 0.0) {
            // The FC fronts stop interacting only within 1/2 - V t of each front.
            const double reach = std::min(0.25, 0.5 - p.V * t) / g.dx();
            const std::size_t q_fc = reach > 3.0 ? static_cast<std::size_t>(reach) - 2 : 0;
            res.step_fronts_monotone = res.step_fronts_monotone &&
                                       monotone_fronts(rho_density(fc_step[i]), g, config.x0, q_fc) &&
                                       monotone_fronts(heat_step.densities(), g, config.x0, g.n() / 4);
        } else {
            const auto d0 = delta.densities();
            const auto s0 = step.densities();
            res.initial_profiles_match = res.initial_profiles_match && rho_density(fc_delta[i]) == d0 &&
                                         rho_density(fc_step[i]) == s0;
            for (std::size_t c = 0; c < g.n(); ++c) {
                res.initial_profiles_match = res.initial_profiles_match &&
                                             std::abs(heat_delta.density(c) - d0[c]) <= 1e-9 * (1.0 + d0[c]) &&
                                             std::abs(heat_step.density(c) - s0[c]) <= 1e-9 * (1.0 + s0[c]);
            }
        }
    }
    res.finite_speed_ok = res.fc_mass_outside_cone <= 1e-10 && res.fc_support_excess <= 1e-12;
    // With no time at or after 1e-3 there is nothing to check.
    const bool any_late = std::any_of(config.times.begin(), config.times.end(), [](double t) { return t >= 1e-3; });
    res.infinite_speed_ok = !any_late || res.heat_min_density >= 1e-30;
    if (!any_late) res.heat_min_density = 0.0;
    return res;
}

std::string figure1_csv(const Figure1Result& result) {
    std::ostringstream os;
    os.precision(17);
    os << "initial,model,t,x,density\n";
    const TorusGrid g(result.config.n);
    for (const auto& pr : result.profiles) {
        for (std::size_t i = 0; i < pr.density.size(); ++i) {
            os << pr.initial << ',' << pr.model << ',' << pr.t << ',' << g.center(i) << ',' << pr.density[i] << '\n';
        }
    }
    return os.str();
}

std::string figure1_plot_script(const std::string& csv_name) {
    std::ostringstream os;
    os << "#!/usr/bin/env python3\n"
          "# Plots the profiles written by `kac figure1`.\n"
          "import csv\n"
          "import collections\n"
          "import matplotlib\n"
          "matplotlib.use(\"Agg\")\n"
          "import matplotlib.pyplot as plt\n\n"
          "data = collections.defaultdict(lambda: ([], []))\n"
          "with open(\""
       << csv_name
       << "\") as f:\n"
          "    for row in csv.DictReader(f):\n"
          "        key = (row[\"initial\"], row[\"model\"], float(row[\"t\"]))\n"
          "        data[key][0].append(float(row[\"x\"]))\n"
          "        data[key][1].append(float(row[\"density\"]))\n\n"
          "fig, axes = plt.subplots(1, 2, figsize=(11, 4))\n"
          "for ax, initial in zip(axes, [\"delta\", \"step\"]):\n"
          "    for (ini, model, t), (x, y) in sorted(data.items()):\n"
          "        if ini != initial or model == \"fc_mollified\" or t == 0.0:\n"
          "            continue\n"
          "        ax.plot(x, y, \"-\" if model == \"fc\" else \"--\", label=f\"{model} t={t:g}\")\n"
          "    ax.set_title(initial)\n"
          "    ax.set_xlabel(\"x\")\n"
          "    if initial == \"delta\":\n"
          "        ax.set_ylim(0, 12)\n"
          "    ax.legend(fontsize=7)\n"
          "fig.tight_layout()\n"
          "fig.savefig(\"figure1.png\", dpi=150)\n";
    return os.str();
}

}  // namespace kacfc::cli
