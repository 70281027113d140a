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

#include "kacfc_cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <list>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kacfc/asymptotics.hpp"
#include "kacfc/io.hpp"
#include "kacfc/kac_particles.hpp"
#include "kacfc/kac_solver.hpp"
#include "kacfc/variational.hpp"
#include "kacfc_cli/figure1.hpp"

namespace kacfc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr double kMassTolerance = 1e-10;

Schema model_keys(const std::string& V, const std::string& lambda, const std::string& n, const std::string& T) {
    return {
        {"V", KeyType::real, V, "particle speed"},
        {"lambda", KeyType::real, lambda, "velocity switching rate"},
        {"n", KeyType::count, n, "number of grid cells"},
        {"T", KeyType::real, T, "final time"},
        {"dt", KeyType::real, "0", "time step; 0 selects dx/V"},
        {"scheme", KeyType::text, "strang", "time integrator", {"strang", "spectral"}},
        {"initial", KeyType::text, "bump", "initial datum", {"bump", "tilted", "dirac", "step", "uniform"}},
        {"kappa", KeyType::real, "1", "concentration of the von Mises bump"},
        {"theta", KeyType::real, "0.5", "flux tilt omega/(V rho) of the tilted bump"},
        {"x0", KeyType::real, "0.5", "centre of the initial datum"},
        {"mollify", KeyType::real, "0", "heat-kernel variance applied to the initial datum; 0 disables"},
    };
}

Schema with(Schema base, const Schema& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

std::string fmt_num(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

ModelParams model_params(const RunConfig& cfg) {
    const double V = cfg.real("V");
    const double lambda = cfg.real("lambda");
    if (!(V > 0.0)) throw InvalidArgument("V must be positive");
    if (lambda < 0.0) throw InvalidArgument("lambda must be nonnegative");
    return ModelParams(V, lambda);
}

TorusGrid model_grid(const RunConfig& cfg) {
    const std::size_t n = cfg.count("n");
    if (n < 2) throw InvalidArgument("n must be at least 2");
    return TorusGrid(n);
}

SolverConfig solver_config(const RunConfig& cfg, const TorusGrid& grid, const ModelParams& params, std::ostream& err) {
    const double T = cfg.real("T");
    if (!(T > 0.0)) throw InvalidArgument("T must be positive");
    double dt = cfg.real("dt");
    if (dt < 0.0) throw InvalidArgument("dt must be nonnegative");
    if (dt == 0.0) dt = grid.dx() / params.V;
    const SolverConfig sc = SolverConfig::make(grid, params, dt, T, scheme_from_string(cfg.text("scheme")));
    if (sc.dt_rounded()) {
        err << "warning: dt " << fmt_num(sc.requested_dt) << " rounded to " << fmt_num(sc.dt)
            << " so that V dt is a whole number of cells\n";
    }
    return sc;
}

// Largest divisor of the step count not above the requested stride.
std::size_t effective_stride(const RunConfig& cfg, const SolverConfig& sc, std::ostream& err) {
    const std::size_t want = cfg.count("stride");
    if (want == 0) throw InvalidArgument("stride must be positive");
    const std::size_t steps = sc.n_steps();
    std::size_t s = std::min(want, std::max<std::size_t>(steps, 1));
    while (steps % s != 0) --s;
    if (s != want) err << "warning: stride " << want << " reduced to " << s << " to divide " << steps << " steps\n";
    return s;
}

void prepare_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
}

void write_config(const fs::path& dir, const RunConfig& cfg) { io::write_text(dir / "config.json", cfg.to_json() + "\n"); }

std::string indexed(const std::string& stem, std::size_t k, const std::string& ext) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_%03zu", k);
    return stem + buf + ext;
}

json sweep_checks(const SweepResult& sweep, bool& ok) {
    json j = json::array();
    ok = true;
    for (const auto& r : sweep.records) {
        const bool mass_ok = r.max_mass_drift <= kMassTolerance;
        ok = ok && mass_ok && r.cone_ok;
        j.push_back({{"parameter", r.parameter}, {"cone_ok", r.cone_ok}, {"mass_ok", mass_ok}});
    }
    return j;
}

void print_sweep(const SweepResult& sweep, const EquicontinuityFit& equi, std::ostream& out) {
    const char* pname = sweep.mode == SweepMode::diffusive ? "V" : "lambda";
    out << std::setw(10) << pname << std::setw(8) << "n" << std::setw(14) << "sup_w1_rho" << std::setw(14)
        << "dist_omega" << std::setw(14) << "rate" << std::setw(10) << "exponent" << '\n';
    for (const auto& r : sweep.records) {
        out << std::setw(10) << fmt_num(r.parameter) << std::setw(8) << r.n_cells << std::setw(14)
            << std::setprecision(4) << std::scientific << r.sup_w1_rho << std::setw(14) << r.sup_dist_omega
            << std::setw(14) << r.rate_functional << std::defaultfloat << std::setw(10) << std::setprecision(4)
            << r.holder_exponent << '\n';
    }
    out << "loglog_slope " << fmt_num(sweep.loglog_slope) << "\nerror_ratio " << fmt_num(sweep.error_ratio)
        << "\nstrictly_decreasing " << (sweep.strictly_decreasing ? "true" : "false") << "\nequicontinuity_ok "
        << (equi.ok ? "true" : "false") << '\n';
}

void finish_sweep(const RunConfig& cfg, const SweepResult& sweep, const std::vector<double>& h, std::ostream& out) {
    SweepResult s = sweep;
    const EquicontinuityFit equi = equicontinuity_diagnostic(s.records, h);
    const LiminfReport liminf = liminf_pairing(s, default_psi_bank(s.mode, s.alpha));

    const fs::path dir = cfg.text("out");
    prepare_dir(dir);
    write_config(dir, cfg);
    io::write_sweep_csv(dir / "sweep.csv", s);
    bool ok = true;
    json fit = json::parse(io::fit_json(s, &equi, &liminf));
    fit["checks"] = sweep_checks(s, ok);
    io::write_text(dir / "fit.json", fit.dump(2) + "\n");
    for (std::size_t r = 0; r < s.records.size(); ++r) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "run_%02zu", r);
        io::write_density_flux_trajectory(dir / "runs" / buf, s.records[r].snapshots);
    }
    print_sweep(s, equi, out);
    if (!ok) throw PropertyFailure("a sweep entry lost mass or left the positive cone");
}

}  // namespace

Schema solve_schema() {
    return with(model_keys("2", "0.5", "512", "1"),
                {{"stride", KeyType::count, "8", "steps per stored snapshot"},
                 {"out", KeyType::text, "kac_solve", "output directory"}});
}

Schema particles_schema() {
    Schema s = model_keys("2", "0.5", "1024", "0.5");
    // Particle runs have no time step or scheme.
    std::erase_if(s, [](const KeySpec& k) { return k.name == "dt" || k.name == "scheme" || k.name == "T"; });
    return with(s, {{"N", KeyType::count, "10000", "number of particles"},
                    {"seed", KeyType::count, "7", "random seed"},
                    {"times", KeyType::real_list, "0,0.1,0.25,0.5", "snapshot times"},
                    {"compare", KeyType::flag, "false", "tabulate W1 against the spectral solution"},
                    {"compare_N", KeyType::real_list, "1000,10000,100000", "particle counts for --compare"},
                    {"compare_seeds", KeyType::count, "20", "seeds per particle count for --compare"},
                    {"threads", KeyType::count, "0", "worker threads; 0 uses every core (KAC_THREADS caps it)"},
                    {"out", KeyType::text, "kac_particles", "output directory"}});
}

Schema fir_schema() {
    return with(model_keys("2", "0.5", "512", "1"),
                {{"stride", KeyType::count, "1", "steps per stored snapshot"},
                 {"tol", KeyType::real, "0", "slack tolerance; 0 selects 1e-8 + 10 dt^2"},
                 {"out", KeyType::text, "kac_fir", "output directory"}});
}

Schema diffusive_limits_schema() {
    return {
        {"alpha", KeyType::real, "4", "diffusivity V^2/(2 lambda) held fixed"},
        {"V", KeyType::real_list, "2,4,8,16", "increasing speeds"},
        {"kappa", KeyType::real, "0.06", "concentration of the initial bump"},
        {"T", KeyType::real, "0.0625", "final time"},
        {"snapshot_dt", KeyType::real, "0.001953125", "snapshot spacing"},
        {"cells", KeyType::count, "256", "cells at the first V; scales with V^2"},
        {"lags", KeyType::real_list, "0.001953125,0.00390625,0.0078125,0.015625", "equicontinuity lags"},
        {"threads", KeyType::count, "0", "worker threads; 0 uses every core (KAC_THREADS caps it)"},
        {"out", KeyType::text, "kac_limits_diffusive", "output directory"},
    };
}

Schema hyperbolic_limits_schema() {
    return {
        {"V", KeyType::real, "2", "speed"},
        {"lambda", KeyType::real_list, "1,0.1,0.01", "decreasing switching rates"},
        {"kappa", KeyType::real, "1", "concentration of the initial bump"},
        {"theta", KeyType::real, "0.5", "flux tilt omega/(V rho)"},
        {"T", KeyType::real, "0.5", "final time"},
        {"snapshot_dt", KeyType::real, "0.015625", "snapshot spacing"},
        {"n", KeyType::count, "256", "number of grid cells"},
        {"shift", KeyType::count, "1", "cells moved per transport step"},
        {"lags", KeyType::real_list, "0.015625,0.03125,0.0625,0.125", "equicontinuity lags"},
        {"threads", KeyType::count, "0", "worker threads; 0 uses every core (KAC_THREADS caps it)"},
        {"out", KeyType::text, "kac_limits_hyperbolic", "output directory"},
    };
}

Schema figure1_schema() {
    return {
        {"V", KeyType::real, "2", "speed"},
        {"lambda", KeyType::real, "0.5", "switching rate"},
        {"n", KeyType::count, "1000", "number of grid cells"},
        {"x0", KeyType::real, "0.5", "location of the point mass and of the step"},
        {"eps", KeyType::real, "1e-4", "mollifier variance for the entropy run"},
        {"times", KeyType::real_list, "0,0.001,0.05,0.1,0.2", "profile times"},
        {"out", KeyType::text, "kac_figure1", "output directory"},
    };
}

InitialState make_initial(const RunConfig& cfg, const TorusGrid& grid, const ModelParams& params) {
    const std::string kind = cfg.text("initial");
    const double x0 = cfg.real("x0");
    InitialState st;
    if (kind == "bump") {
        st.sigma = lift_pi(symmetric_bump(cfg.real("kappa"))(grid, params), params);
    } else if (kind == "tilted") {
        const double theta = cfg.real("theta");
        if (std::abs(theta) > 1.0) throw InvalidArgument("theta must lie in [-1, 1]");
        st.sigma = lift_pi(tilted_bump(cfg.real("kappa"), theta)(grid, params), params);
    } else if (kind == "dirac") {
        const GridMeasure half = GridMeasure::dirac(grid, x0, 0.5);
        st.sigma = KineticState(params, half, half);
        st.singular = true;
    } else if (kind == "step") {
        // Indicator of the half torus [x0, x0 + 1/2).
        GridMeasure rho = GridMeasure::from_density(grid, [x0](double x) {
            const double d = x - x0 - std::floor(x - x0);
            return d < 0.5 ? 2.0 : 0.0;
        });
        rho *= 1.0 / rho.total_mass();
        st.sigma = KineticState(params, 0.5 * rho, 0.5 * rho);
    } else {
        st.sigma = KineticState::stationary(grid, params);
    }
    const double eps = cfg.real("mollify");
    if (eps < 0.0) throw InvalidArgument("mollify must be nonnegative");
    if (eps > 0.0) {
        st.sigma = mollify(st.sigma, eps);
        st.singular = false;
    }
    return st;
}

void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ModelParams params = model_params(cfg);
    const TorusGrid grid = model_grid(cfg);
    const SolverConfig sc = solver_config(cfg, grid, params, err);
    const InitialState init = make_initial(cfg, grid, params);
    const std::size_t stride = effective_stride(cfg, sc, err);

    const Trajectory traj = solve(sc, init.sigma, stride);
    const fs::path dir = cfg.text("out");
    io::write_trajectory(dir, traj);
    write_config(dir, cfg);

    const double m0 = traj.states.front().total_mass();
    const double m1 = traj.states.back().total_mass();
    out << "steps " << sc.n_steps() << "\ndt " << fmt_num(sc.dt) << "\nsnapshots " << traj.states.size()
        << "\nmass_initial " << fmt_num(m0) << "\nmass_final " << fmt_num(m1) << "\nmass_drift "
        << fmt_num(std::abs(m1 - m0)) << "\nentropy_initial " << fmt_num(entropy_to_stationary(traj.states.front()))
        << "\nentropy_final " << fmt_num(entropy_to_stationary(traj.states.back())) << '\n';
}

void cmd_particles(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const ModelParams params = model_params(cfg);
    const TorusGrid bins = model_grid(cfg);
    const InitialState init = make_initial(cfg, bins, params);
    const std::vector<double> times = cfg.reals("times");
    for (double t : times) {
        if (t < 0.0) throw InvalidArgument("snapshot times must be nonnegative");
    }
    const std::size_t N = cfg.count("N");
    if (N == 0) throw InvalidArgument("N must be positive");

    EnsembleConfig ec;
    ec.n_particles = N;
    ec.params = params;
    ec.seed = cfg.count("seed");
    ec.snapshot_times = times;
    ec.bin_grid = bins;
    ec.threads = static_cast<unsigned>(cfg.count("threads"));

    const auto start = std::chrono::steady_clock::now();
    const auto snaps = ensemble_run(ec, init.sigma);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const fs::path dir = cfg.text("out");
    prepare_dir(dir);
    write_config(dir, cfg);
    for (std::size_t k = 0; k < snaps.size(); ++k) io::write_particle_csv(dir / indexed("snapshot", k, ".csv"), snaps[k].second);
    json meta{{"N", N},
              {"seed", ec.seed},
              {"params", {{"V", params.V}, {"lambda", params.lambda}}},
              {"bins", bins.n()},
              {"times", times},
              {"threads", worker_count(ec.threads)},
              {"wall_time_s", wall}};
    io::write_text(dir / "meta.json", meta.dump(2) + "\n");
    out << "particles " << N << "\nsnapshots " << snaps.size() << "\nwall_time_s " << fmt_num(wall) << '\n';

    if (!cfg.flag("compare")) return;
    const double t = times.back();
    const GridMeasure ref = project_pi(step_spectral(init.sigma, t)).rho;
    const std::size_t seeds = cfg.count("compare_seeds");
    if (seeds == 0) throw InvalidArgument("compare_seeds must be positive");
    std::ostringstream csv;
    csv << std::setprecision(17) << "N,seeds,t,w1_mean,w1_std\n";
    std::vector<double> Ns;
    std::vector<double> means;
    out << std::setw(10) << "N" << std::setw(16) << "w1_mean" << '\n';
    for (double Nd : cfg.reals("compare_N")) {
        if (!(Nd >= 1.0) || Nd != std::floor(Nd)) throw InvalidArgument("compare_N entries must be positive integers");
        EnsembleConfig cc = ec;
        cc.n_particles = static_cast<std::size_t>(Nd);
        cc.snapshot_times = {t};
        double sum = 0.0;
        double sum2 = 0.0;
        for (std::size_t s = 0; s < seeds; ++s) {
            cc.seed = ec.seed + s;
            const double w = wasserstein1(project_pi(ensemble_run(cc, init.sigma).front().second).rho, ref);
            sum += w;
            sum2 += w * w;
        }
        const double mean = sum / static_cast<double>(seeds);
        const double var = std::max(0.0, sum2 / static_cast<double>(seeds) - mean * mean);
        csv << cc.n_particles << ',' << seeds << ',' << t << ',' << mean << ',' << std::sqrt(var) << '\n';
        Ns.push_back(Nd);
        means.push_back(mean);
        out << std::setw(10) << cc.n_particles << std::setw(16) << std::setprecision(6) << mean << '\n';
    }
    io::write_text(dir / "compare.csv", csv.str());
    if (Ns.size() >= 2) out << "slope " << fmt_num(loglog_slope(Ns, means)) << '\n';
}

void cmd_fir(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const ModelParams params = model_params(cfg);
    const TorusGrid grid = model_grid(cfg);
    const InitialState init = make_initial(cfg, grid, params);
    if (init.singular) {
        throw IllPrepared("ill-prepared initial datum: a point mass is not absolutely continuous and has infinite "
                          "entropy; pass --mollify with a positive variance");
    }
    const SolverConfig sc = solver_config(cfg, grid, params, err);
    const std::size_t stride = effective_stride(cfg, sc, err);
    const Trajectory traj = solve(sc, init.sigma, stride);
    const double tol = cfg.real("tol");
    if (tol < 0.0) throw InvalidArgument("tol must be nonnegative");
    const FunctionalReport rep = tol > 0.0 ? fir_check(traj, tol) : fir_check(traj);

    const fs::path dir = cfg.text("out");
    prepare_dir(dir);
    write_config(dir, cfg);
    io::write_report_csv(dir / "report.csv", rep);
    io::write_text(dir / "report.json", io::report_json(rep));
    out << "entropy_initial " << fmt_num(rep.entropy_initial) << "\nentropy_final " << fmt_num(rep.entropy_final)
        << "\nrate " << fmt_num(rep.rate_value) << "\nfi_integral " << fmt_num(rep.fi_integral) << "\nmin_slack "
        << fmt_num(rep.fir_slack) << "\ntolerance " << fmt_num(rep.tol_fir) << '\n';
    if (!rep.slack_ok) throw PropertyFailure("slack " + fmt_num(rep.fir_slack) + " below -" + fmt_num(rep.tol_fir));
    if (!rep.entropy_nonincreasing) throw PropertyFailure("entropy increased along the trajectory");
}

void cmd_limits_diffusive(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const double alpha = cfg.real("alpha");
    SweepSpec spec = diffusive_sweep_spec(alpha, cfg.reals("V"), diffusive_bump(cfg.real("kappa"), alpha),
                                          cfg.real("T"), cfg.real("snapshot_dt"), cfg.count("cells"));
    spec.threads = static_cast<unsigned>(cfg.count("threads"));
    finish_sweep(cfg, run_diffusive_sweep(spec), cfg.reals("lags"), out);
}

void cmd_limits_hyperbolic(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const double theta = cfg.real("theta");
    if (std::abs(theta) > 1.0) throw InvalidArgument("theta must lie in [-1, 1]");
    SweepSpec spec = hyperbolic_sweep_spec(cfg.real("V"), cfg.reals("lambda"), tilted_bump(cfg.real("kappa"), theta),
                                           cfg.real("T"), cfg.real("snapshot_dt"), cfg.count("n"), cfg.count("shift"));
    spec.threads = static_cast<unsigned>(cfg.count("threads"));
    finish_sweep(cfg, run_hyperbolic_sweep(spec), cfg.reals("lags"), out);
}

void cmd_figure1(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    Figure1Config fc;
    fc.V = cfg.real("V");
    fc.lambda = cfg.real("lambda");
    fc.n = cfg.count("n");
    fc.x0 = cfg.real("x0");
    fc.eps = cfg.real("eps");
    fc.times = cfg.reals("times");
    const Figure1Result r = run_figure1(fc);

    const fs::path dir = cfg.text("out");
    prepare_dir(dir);
    write_config(dir, cfg);
    io::write_text(dir / "figure1.csv", figure1_csv(r));
    io::write_text(dir / "plot_figure1.py", figure1_plot_script("figure1.csv"));
    json j{{"fc_mass_outside_cone", r.fc_mass_outside_cone},
           {"fc_support_excess", r.fc_support_excess},
           {"heat_min_density", r.heat_min_density},
           {"fc_entropy", r.fc_entropy},
           {"times", fc.times},
           {"finite_speed_ok", r.finite_speed_ok},
           {"infinite_speed_ok", r.infinite_speed_ok},
           {"initial_profiles_match", r.initial_profiles_match},
           {"step_fronts_monotone", r.step_fronts_monotone}};
    io::write_text(dir / "figure1.json", j.dump(2) + "\n");
    out << "fc_mass_outside_cone " << fmt_num(r.fc_mass_outside_cone) << "\nfc_support_excess "
        << fmt_num(r.fc_support_excess) << "\nheat_min_density " << fmt_num(r.heat_min_density) << '\n';
    if (!r.finite_speed_ok) throw PropertyFailure("mass of the FC run escaped the light cone");
    if (!r.infinite_speed_ok) throw PropertyFailure("heat density vanished somewhere for t > 0");
    if (!r.initial_profiles_match) throw PropertyFailure("t = 0 profiles differ from the initial data");
    if (!r.step_fronts_monotone) throw PropertyFailure("step profiles are not monotone fronts");
}

namespace {

using Command = std::function<void(const RunConfig&, std::ostream&, std::ostream&)>;

// One subcommand with a CLI11 option per schema key.
struct Bound {
    CLI::App* app = nullptr;
    Schema schema;
    Command run;
    std::map<std::string, std::string> values;
    std::map<std::string, bool> flags;
    std::string config_file;
};

void bind(Bound& b) {
    b.app->add_option("--config", b.config_file, "key = value file; flags override its entries")
        ->check(CLI::ExistingFile);
    for (const auto& k : b.schema) {
        const std::string desc = k.help + " [" + k.default_value + "]";
        if (k.type == KeyType::flag) {
            b.app->add_flag("--" + k.name, b.flags[k.name], desc);
        } else {
            b.app->add_option("--" + k.name, b.values[k.name], desc);
        }
    }
}

RunConfig resolve(const Bound& b) {
    RunConfig cfg(b.schema);
    if (!b.config_file.empty()) cfg.load_file(b.config_file);
    for (const auto& k : b.schema) {
        if (b.app->count("--" + k.name) == 0) continue;
        cfg.set(k.name, k.type == KeyType::flag ? "true" : b.values.at(k.name));
    }
    return cfg;
}

void error_json(std::ostream& err, const std::string& code, const std::string& message) {
    err << json{{"error", code}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kac process and Fourier-Cattaneo toolkit", "kac"};
    app.require_subcommand(1);
    std::list<Bound> cmds;
    auto add = [&](CLI::App* parent, const std::string& name, const std::string& desc, Schema schema, Command run) {
        cmds.push_back(Bound{parent->add_subcommand(name, desc), std::move(schema), std::move(run), {}, {}, {}});
        bind(cmds.back());
    };
    add(&app, "solve", "deterministic Kac solve with trajectory output", solve_schema(), cmd_solve);
    add(&app, "particles", "event-driven particle ensemble", particles_schema(), cmd_particles);
    add(&app, "fir", "entropy, Fisher information and rate balance along a solve", fir_schema(), cmd_fir);
    CLI::App* limits = app.add_subcommand("limits", "parameter sweeps towards the heat or wave limit");
    limits->require_subcommand(1);
    add(limits, "diffusive", "V to infinity with alpha fixed", diffusive_limits_schema(), cmd_limits_diffusive);
    add(limits, "hyperbolic", "lambda to zero with V fixed", hyperbolic_limits_schema(), cmd_limits_hyperbolic);
    add(&app, "figure1", "heat against FC profiles from point-mass and step data", figure1_schema(), cmd_figure1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        error_json(err, "UsageError", e.what());
        return kExitUsage;
    }

    for (const auto& b : cmds) {
        if (!b.app->parsed()) continue;
        try {
            b.run(resolve(b), out, err);
            return kExitOk;
        } catch (const UsageError& e) {
            error_json(err, "UsageError", e.what());
            return kExitUsage;
        } catch (const InvalidArgument& e) {
            error_json(err, e.code(), e.what());
            return kExitUsage;
        } catch (const IllPrepared& e) {
            error_json(err, e.code(), e.what());
            return kExitIllPrepared;
        } catch (const PropertyFailure& e) {
            error_json(err, "PropertyFailure", e.what());
            return kExitProperty;
        } catch (const Error& e) {
            error_json(err, e.code(), e.what());
            return kExitError;
        } catch (const std::exception& e) {
            error_json(err, "InternalError", e.what());
            return kExitError;
        }
    }
    error_json(err, "UsageError", "no command given");
    return kExitUsage;
}

}  // namespace kacfc::cli
