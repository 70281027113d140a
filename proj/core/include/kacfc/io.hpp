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

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "kacfc/asymptotics.hpp"
#include "kacfc/kac_solver.hpp"
#include "kacfc/variational.hpp"

namespace kacfc::io {

namespace fs = std::filesystem;

// CSV with header `x,mass`, one row per cell.
void write_measure_csv(std::ostream& os, const GridMeasure& mu);
void write_measure_csv(const fs::path& path, const GridMeasure& mu);
GridMeasure read_measure_csv(const fs::path& path);

// Binary record: n as little-endian u64 followed by n little-endian f64 masses.
void write_measure_record(std::ostream& os, const GridMeasure& mu);
GridMeasure read_measure_record(std::istream& is);
void write_measure_bin(const fs::path& path, const GridMeasure& mu);
GridMeasure read_measure_bin(const fs::path& path);

// State file: u64 header length, JSON header with V and lambda, then the plus
// and minus records.
void write_state_bin(const fs::path& path, const KineticState& sigma);
KineticState read_state_bin(const fs::path& path);

// Flux file: JSON header, then j1+, j1-, j2+, j2- records.
void write_flux_bin(const fs::path& path, const FluxPair& j, const ModelParams& params);
FluxPair read_flux_bin(const fs::path& path);

// Trajectory directory: meta.json, state_%06d.bin, flux_%06d.bin,
// mid_%06d.bin and summary.csv (t, mass, entropy, fi).
void write_trajectory(const fs::path& dir, const Trajectory& traj);
Trajectory read_trajectory(const fs::path& dir);
std::string meta_json(const SolverConfig& config, std::size_t snapshots);

// Density-flux trajectory directory: meta.json, rho_%06d.bin, omega_%06d.bin,
// rho_mid_%06d.bin and omega_mid_%06d.bin.
void write_density_flux_trajectory(const fs::path& dir, const DensityFluxTrajectory& traj);

// Particle snapshot CSV with header `x,plus_mass,minus_mass`.
void write_particle_csv(const fs::path& path, const KineticState& sigma);

// Report CSV with header `t,entropy,fi,fi_integral,rate_cum,lhs,rhs,slack`.
void write_report_csv(const fs::path& path, const FunctionalReport& rep);
std::string report_json(const FunctionalReport& rep);

// One row per record.
void write_sweep_csv(const fs::path& path, const SweepResult& sweep);
std::string fit_json(const SweepResult& sweep, const EquicontinuityFit* equi, const LiminfReport* liminf);

void write_text(const fs::path& path, const std::string& text);

}  // namespace kacfc::io
