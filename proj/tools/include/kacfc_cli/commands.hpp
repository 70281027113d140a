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

#include <iosfwd>
#include <stdexcept>

#include "kacfc/torus_measures.hpp"
#include "kacfc_cli/config.hpp"

namespace kacfc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitIllPrepared = 2;
inline constexpr int kExitProperty = 3;
inline constexpr int kExitUsage = 64;

// A checked property of a finished run did not hold; maps to exit status 3.
class PropertyFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Schema solve_schema();
Schema particles_schema();
Schema fir_schema();
Schema diffusive_limits_schema();
Schema hyperbolic_limits_schema();
Schema figure1_schema();

// Initial state described by the keys initial, kappa, theta, x0 and mollify.
// A point mass without mollification is flagged as singular.
struct InitialState {
    KineticState sigma;
    bool singular = false;
};
InitialState make_initial(const RunConfig& cfg, const TorusGrid& grid, const ModelParams& params);

// Each command writes its artifacts to cfg.text("out") and a short summary to
// `out`; failures propagate as exceptions.
void cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_particles(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_fir(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_limits_diffusive(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_limits_hyperbolic(const RunConfig& cfg, std::ostream& out, std::ostream& err);
void cmd_figure1(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv, dispatches, and maps failures to exit statuses with an error
// JSON object on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kacfc::cli
