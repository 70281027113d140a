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

#include "kacfc/io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace kacfc::io {
namespace {

using nlohmann::json;

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) {
        return v;
    } else {
        std::uint64_t r = 0;
        for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
        return r;
    }
}

void put_u64(std::ostream& os, std::uint64_t v) {
    v = to_le(v);
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw IoError("truncated binary record");
    return to_le(v);
}

void put_f64(std::ostream& os, double d) { put_u64(os, std::bit_cast<std::uint64_t>(d)); }
double get_f64(std::istream& is) { return std::bit_cast<double>(get_u64(is)); }

std::ofstream open_out(const fs::path& path, bool binary) {
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << std::setprecision(17);
    return f;
}

std::ifstream open_in(const fs::path& path, bool binary) {
    std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
    if (!f) throw IoError("cannot open " + path.string());
    return f;
}

void put_header(std::ostream& os, const json& j) {
    const std::string s = j.dump();
    put_u64(os, s.size());
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

json get_header(std::istream& is) {
    const std::uint64_t len = get_u64(is);
    if (len > (1u << 20)) throw IoError("implausible header length");
    std::string s(len, '\0');
    if (!is.read(s.data(), static_cast<std::streamsize>(len))) throw IoError("truncated header");
    try {
        return json::parse(s);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad header: ") + e.what());
    }
}

json params_json(const ModelParams& p) { return json{{"V", p.V}, {"lambda", p.lambda}}; }

ModelParams params_from(const json& j) {
    try {
        return ModelParams(j.at("V").get<double>(), j.at("lambda").get<double>());
    } catch (const json::exception& e) {
        throw IoError(std::string("bad params header: ") + e.what());
    }
}

std::string indexed(const char* stem, std::size_t k) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_%06zu.bin", stem, k);
    return buf;
}

// JSON has no infinity; non-finite values are written as null.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

void write_measure_csv(std::ostream& os, const GridMeasure& mu) {
    os << "x,mass\n";
    for (std::size_t i = 0; i < mu.size(); ++i) os << mu.grid.center(i) << ',' << mu.w[i] << '\n';
}

void write_measure_csv(const fs::path& path, const GridMeasure& mu) {
    auto f = open_out(path, false);
    write_measure_csv(f, mu);
}

GridMeasure read_measure_csv(const fs::path& path) {
    auto f = open_in(path, false);
    std::string line;
    if (!std::getline(f, line) || line != "x,mass") throw IoError(path.string() + ": expected header x,mass");
    std::vector<double> w;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IoError(path.string() + ": malformed row");
        try {
            w.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw IoError(path.string() + ": malformed number");
        }
    }
    const TorusGrid g(w.size());
    return GridMeasure(g, std::move(w));
}

void write_measure_record(std::ostream& os, const GridMeasure& mu) {
    put_u64(os, mu.size());
    for (double v : mu.w) put_f64(os, v);
}

GridMeasure read_measure_record(std::istream& is) {
    const std::uint64_t n = get_u64(is);
    if (n < 2 || n > (std::uint64_t{1} << 32)) throw IoError("implausible cell count in binary record");
    std::vector<double> w(n);
    for (auto& v : w) v = get_f64(is);
    return GridMeasure(TorusGrid(n), std::move(w));
}

void write_measure_bin(const fs::path& path, const GridMeasure& mu) {
    auto f = open_out(path, true);
    write_measure_record(f, mu);
}

GridMeasure read_measure_bin(const fs::path& path) {
    auto f = open_in(path, true);
    return read_measure_record(f);
}

void write_state_bin(const fs::path& path, const KineticState& sigma) {
    auto f = open_out(path, true);
    put_header(f, json{{"kind", "state"}, {"params", params_json(sigma.params)}});
    write_measure_record(f, sigma.plus);
    write_measure_record(f, sigma.minus);
}

KineticState read_state_bin(const fs::path& path) {
    auto f = open_in(path, true);
    const json h = get_header(f);
    const ModelParams p = params_from(h.value("params", json::object()));
    GridMeasure plus = read_measure_record(f);
    GridMeasure minus = read_measure_record(f);
    return KineticState(p, std::move(plus), std::move(minus));
}

void write_flux_bin(const fs::path& path, const FluxPair& j, const ModelParams& params) {
    auto f = open_out(path, true);
    put_header(f, json{{"kind", "flux"}, {"params", params_json(params)}});
    write_measure_record(f, j.j1.plus);
    write_measure_record(f, j.j1.minus);
    write_measure_record(f, j.j2.plus);
    write_measure_record(f, j.j2.minus);
}

FluxPair read_flux_bin(const fs::path& path) {
    auto f = open_in(path, true);
    get_header(f);
    FluxPair j;
    j.j1.plus = read_measure_record(f);
    j.j1.minus = read_measure_record(f);
    j.j2.plus = read_measure_record(f);
    j.j2.minus = read_measure_record(f);
    return j;
}

std::string meta_json(const SolverConfig& config, std::size_t snapshots) {
    json j{{"n_cells", config.grid.n()},
           {"params", params_json(config.params)},
           {"dt", config.dt},
           {"requested_dt", config.requested_dt},
           {"dt_rounded", config.dt_rounded()},
           {"t_end", config.t_end},
           {"scheme", to_string(config.scheme)},
           {"snapshots", snapshots}};
    return j.dump(2) + "\n";
}

void write_trajectory(const fs::path& dir, const Trajectory& traj) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    json meta = json::parse(meta_json(traj.config, traj.states.size()));
    meta["times"] = traj.times;
    write_text(dir / "meta.json", meta.dump(2) + "\n");
    for (std::size_t k = 0; k < traj.states.size(); ++k) write_state_bin(dir / indexed("state", k), traj.states[k]);
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        write_flux_bin(dir / indexed("flux", k), traj.fluxes[k], traj.config.params);
        write_state_bin(dir / indexed("mid", k), traj.midpoints[k]);
    }
    auto f = open_out(dir / "summary.csv", false);
    f << "t,mass,entropy,fi\n";
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        const auto& s = traj.states[k];
        f << traj.times[k] << ',' << s.total_mass() << ',' << entropy_to_stationary(s) << ',' << fisher_info(s)
          << '\n';
    }
}

Trajectory read_trajectory(const fs::path& dir) {
    auto f = open_in(dir / "meta.json", false);
    json meta;
    try {
        meta = json::parse(f);
    } catch (const json::exception& e) {
        throw IoError(std::string("bad meta.json: ") + e.what());
    }
    Trajectory traj;
    try {
        traj.config.grid = TorusGrid(meta.at("n_cells").get<std::size_t>());
        traj.config.params = params_from(meta.at("params"));
        traj.config.dt = meta.at("dt").get<double>();
        traj.config.requested_dt = meta.value("requested_dt", traj.config.dt);
        traj.config.t_end = meta.at("t_end").get<double>();
        traj.config.scheme = scheme_from_string(meta.at("scheme").get<std::string>());
        traj.times = meta.at("times").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw IoError(std::string("bad meta.json: ") + e.what());
    }
    for (std::size_t k = 0; k < traj.times.size(); ++k) traj.states.push_back(read_state_bin(dir / indexed("state", k)));
    for (std::size_t k = 0; k + 1 < traj.times.size(); ++k) {
        traj.fluxes.push_back(read_flux_bin(dir / indexed("flux", k)));
        traj.midpoints.push_back(read_state_bin(dir / indexed("mid", k)));
    }
    return traj;
}

void write_density_flux_trajectory(const fs::path& dir, const DensityFluxTrajectory& traj) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    json meta{{"params", params_json(traj.params)}, {"times", traj.times}};
    if (!traj.rho.empty()) meta["n_cells"] = traj.rho.front().size();
    write_text(dir / "meta.json", meta.dump(2) + "\n");
    for (std::size_t k = 0; k < traj.rho.size(); ++k) {
        write_measure_bin(dir / indexed("rho", k), traj.rho[k]);
        write_measure_bin(dir / indexed("omega", k), traj.omega[k]);
    }
    for (std::size_t k = 0; k < traj.intervals(); ++k) {
        write_measure_bin(dir / indexed("rho_mid", k), traj.rho_mid[k]);
        write_measure_bin(dir / indexed("omega_mid", k), traj.omega_mid[k]);
    }
}

void write_particle_csv(const fs::path& path, const KineticState& sigma) {
    auto f = open_out(path, false);
    f << "x,plus_mass,minus_mass\n";
    const TorusGrid& g = sigma.grid();
    for (std::size_t i = 0; i < g.n(); ++i) {
        f << g.center(i) << ',' << sigma.plus.w[i] << ',' << sigma.minus.w[i] << '\n';
    }
}

void write_report_csv(const fs::path& path, const FunctionalReport& rep) {
    auto f = open_out(path, false);
    f << "t,entropy,fi,fi_integral,rate_cum,lhs,rhs,slack\n";
    for (const auto& r : rep.rows) {
        f << r.t << ',' << r.entropy << ',' << r.fi << ',' << r.fi_integral << ',' << r.rate_cum << ',' << r.lhs
          << ',' << r.rhs << ',' << r.slack << '\n';
    }
}

std::string report_json(const FunctionalReport& rep) {
    json j{{"entropy_initial", num(rep.entropy_initial)},
           {"entropy_final", num(rep.entropy_final)},
           {"fi_integral", num(rep.fi_integral)},
           {"rate_value", num(rep.rate_value)},
           {"fir_slack", num(rep.fir_slack)},
           {"tol_fir", num(rep.tol_fir)},
           {"slack_ok", rep.slack_ok},
           {"entropy_nonincreasing", rep.entropy_nonincreasing}};
    return j.dump(2) + "\n";
}

void write_sweep_csv(const fs::path& path, const SweepResult& sweep) {
    auto f = open_out(path, false);
    f << "parameter,V,lambda,n_cells,dt,sup_w1_rho,sup_dist_omega,derived_flux_tv,jump_tv,jump_tv_bound,"
         "rate_functional,max_mass_drift,min_cell_mass,cone_ok,holder_exponent,holder_constant\n";
    for (const auto& r : sweep.records) {
        f << r.parameter << ',' << r.V << ',' << r.lambda << ',' << r.n_cells << ',' << r.dt << ',' << r.sup_w1_rho
          << ',' << r.sup_dist_omega << ',' << r.derived_flux_tv << ',' << r.jump_tv << ',' << r.jump_tv_bound << ','
          << r.rate_functional << ',' << r.max_mass_drift << ',' << r.min_cell_mass << ',' << (r.cone_ok ? 1 : 0)
          << ',' << r.holder_exponent << ',' << r.holder_constant << '\n';
    }
}

std::string fit_json(const SweepResult& sweep, const EquicontinuityFit* equi, const LiminfReport* liminf) {
    json j{{"mode", to_string(sweep.mode)},
           {"strictly_decreasing", sweep.strictly_decreasing},
           {"error_ratio", num(sweep.error_ratio)},
           {"loglog_slope", num(sweep.loglog_slope)},
           {"limit_note", sweep.limit_note},
           {"rates_note", "slopes and ratios are empirical; no rates are claimed for either limit"}};
    if (sweep.mode == SweepMode::diffusive) {
        j["alpha"] = sweep.alpha;
    } else {
        j["V"] = sweep.V;
    }
    if (equi) {
        json e{{"h", equi->h},
               {"min_exponent", num(equi->min_exponent)},
               {"constant_ratio", num(equi->constant_ratio)},
               {"ok", equi->ok}};
        json ex = json::array(), hc = json::array(), fc = json::array();
        for (std::size_t i = 0; i < equi->exponents.size(); ++i) {
            ex.push_back(num(equi->exponents[i]));
            hc.push_back(num(equi->holder_constants[i]));
            fc.push_back(num(equi->fitted_constants[i]));
        }
        e["exponents"] = ex;
        e["holder_constants"] = hc;
        e["fitted_constants"] = fc;
        j["equicontinuity"] = e;
    }
    if (liminf) {
        json l{{"psi", liminf->psi_names},
               {"parameters", liminf->parameters},
               {"pairings", liminf->pairings},
               {"limit_pairings", liminf->limit_pairings},
               {"standin_pairings", liminf->standin_pairings},
               {"rate_values", liminf->rate_values},
               {"distance_to_limit", liminf->distance_to_limit},
               {"below_rate", liminf->below_rate},
               {"note", liminf->note}};
        j["liminf"] = l;
    }
    return j.dump(2) + "\n";
}

void write_text(const fs::path& path, const std::string& text) {
    auto f = open_out(path, false);
    f << text;
    if (!f) throw IoError("write failed: " + path.string());
}

}  // namespace kacfc::io
