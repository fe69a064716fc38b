// Copyright 2026 The specq authors
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

#include <vector>

#include "specq/lattice.hpp"

namespace specq {

// All transforms share one convention: the forward transform uses
// omega = exp(+2*pi*i/N) and every 1-D pass is scaled by 1/sqrt(N), so
// forward and inverse are unitary and the QFT circuit matches bin-for-bin.

/// In-place radix-2 decimation-in-time FFT, natural-order output.
/// Length must be a power of two.
void fft_inplace(std::vector<cplx>& a, bool inverse);

/// d-dimensional FFT over the lattice layout (axis 1 most significant).
std::vector<cplx> fft_nd(const std::vector<cplx>& values, const GridSpec& grid, bool inverse);

/// Same transform computed through dense per-axis DFT matrices (the
/// Kronecker application path). Kept separate from fft_nd so the two
/// routes can be compared against each other.
std::vector<cplx> dft_nd(const std::vector<cplx>& values, const GridSpec& grid, bool inverse);

}  // namespace specq
