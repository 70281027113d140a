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

#include <complex>
#include <vector>

namespace kacfc::detail {

using cplx = std::complex<double>;

// Real-to-half-complex forward transform, n/2 + 1 coefficients, unnormalised.
std::vector<cplx> rfft(const std::vector<double>& x);
// Inverse of rfft including the 1/n normalisation.
std::vector<double> irfft(const std::vector<cplx>& c, std::size_t n);

// Signed integer wavenumber of coefficient k of a length-n transform.
inline double wavenumber(std::size_t k, std::size_t n) {
    return (2 * k <= n) ? static_cast<double>(k) : static_cast<double>(k) - static_cast<double>(n);
}

// Spectral derivative of cell data (used for residual checks on smooth data).
std::vector<double> spectral_derivative(const std::vector<double>& x);

// Translation by a real distance d on the unit torus via a Fourier phase shift.
std::vector<double> spectral_shift(const std::vector<double>& x, double d);

}  // namespace kacfc::detail
