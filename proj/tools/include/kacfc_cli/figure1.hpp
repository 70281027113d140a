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

#include <string>
#include <vector>

#include "kacfc/torus_measures.hpp"

namespace kacfc::cli {

struct Figure1Config {
    double V = 2.0;
    double lambda = 0.5;
    std::size_t n = 1000;
    double x0 = 0.5;
    // Mollifier variance for the entropy-level run started near a point mass.
    double eps = 1e-4;
    std::vector<double> times{0.0, 0.001, 0.05, 0.1, 0.2};
};

struct Figure1Profile {
    std::string initial;  // "delta" or "step"
    std::string model;    // "fc", "fc_mollified" or "heat"
    double t = 0.0;
    std::vector<double> density;
};

struct Figure1Result {
    Figure1Config config;
    std::vector<Figure1Profile> profiles;
    // Largest mass of the mollified run outside the widened light cone.
    double fc_mass_outside_cone = 0.0;
    // Largest support width of the exact point-mass run minus 2 V t + 2 dx.
    double fc_support_excess = 0.0;
    // Smallest heat density over all cells and all t >= 1e-3.
    double heat_min_density = 0.0;
    // Entropy of the mollified run against the stationary measure, per time.
    std::vector<double> fc_entropy;
    bool step_fronts_monotone = true;
    bool finite_speed_ok = false;
    bool infinite_speed_ok = false;
    bool initial_profiles_match = false;
};

// Half-width added to the light cone for the mollified start: 7 sqrt(eps).
double mollifier_radius(double eps);

Figure1Result run_figure1(const Figure1Config& config);

// Long-format CSV: initial,model,t,x,density.
std::string figure1_csv(const Figure1Result& result);
// Standalone matplotlib script reading the CSV.
std::string figure1_plot_script(const std::string& csv_name);

}  // namespace kacfc::cli
