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

#include "fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace kacfc::detail {
namespace {

struct Plans {
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per size and kept for the process.
const Plans& plans_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, Plans> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::vector<double> r(n);
    std::vector<cplx> c(n / 2 + 1);
    auto* cr = reinterpret_cast<fftw_complex*>(c.data());
    const int ni = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    Plans p;
    p.forward = fftw_plan_dft_r2c_1d(ni, r.data(), cr, flags);
    p.backward = fftw_plan_dft_c2r_1d(ni, cr, r.data(), flags | FFTW_DESTROY_INPUT);
    return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<cplx> rfft(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> in(x);
    std::vector<cplx> out(n / 2 + 1);
    fftw_execute_dft_r2c(plans_for(n).forward, in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> irfft(const std::vector<cplx>& c, std::size_t n) {
    std::vector<cplx> in(c);
    std::vector<double> out(n);
    fftw_execute_dft_c2r(plans_for(n).backward, reinterpret_cast<fftw_complex*>(in.data()),
                         out.data());
    const double s = 1.0 / static_cast<double>(n);
    for (auto& v : out) v *= s;
    return out;
}

std::vector<double> spectral_derivative(const std::vector<double>& x) {
    const std::size_t n = x.size();
    auto c = rfft(x);
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (2 * k == n) {
            c[k] = 0.0;
            continue;
        }
        c[k] *= cplx(0.0, 2.0 * std::numbers::pi * static_cast<double>(k));
    }
    return irfft(c, n);
}

std::vector<double> spectral_shift(const std::vector<double>& x, double d) {
    const std::size_t n = x.size();
    auto c = rfft(x);
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double phase = -2.0 * std::numbers::pi * static_cast<double>(k) * d;
        c[k] *= std::polar(1.0, phase);
    }
    return irfft(c, n);
}

}  // namespace kacfc::detail
