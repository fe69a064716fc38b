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

#include "specq/fft.hpp"

#include <cmath>
#include <numbers>

namespace specq {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Applies a 1-D transform to every line along `axis` of the flat array.
template <typename LineFn>
void for_each_line(std::vector<cplx>& data, const GridSpec& grid, int axis, LineFn&& fn) {
    const int N = grid.points_per_dim();
    const std::size_t total = grid.size();
    // axis `a` (0-based) has stride N^(d-1-a) in the flat layout.
    std::size_t stride = 1;
    for (int a = grid.d - 1; a > axis; --a) stride *= N;
    std::vector<cplx> line(N);
    const std::size_t block = stride * N;
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int j = 0; j < N; ++j) line[j] = data[base + off + stride * j];
            fn(line);
            for (int j = 0; j < N; ++j) data[base + off + stride * j] = line[j];
        }
    }
}

}  // namespace

void fft_inplace(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw ValidationError("FFT length must be a power of two");
    if (n == 1) return;

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    const double sign = inverse ? -1.0 : 1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 2.0 * kPi / static_cast<double>(len);
        const cplx wlen{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            cplx w{1.0, 0.0};
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }

    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (cplx& x : a) x *= scale;
}

std::vector<cplx> fft_nd(const std::vector<cplx>& values, const GridSpec& grid, bool inverse) {
    if (values.size() != grid.size()) throw ShapeError("fft_nd: value count mismatch");
    std::vector<cplx> data = values;
    for (int axis = 0; axis < grid.d; ++axis) {
        for_each_line(data, grid, axis, [&](std::vector<cplx>& line) { fft_inplace(line, inverse); });
    }
    return data;
}

std::vector<cplx> dft_nd(const std::vector<cplx>& values, const GridSpec& grid, bool inverse) {
    if (values.size() != grid.size()) throw ShapeError("dft_nd: value count mismatch");
    const int N = grid.points_per_dim();
    const double sign = inverse ? -1.0 : 1.0;
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    // Dense N x N transform matrix, row-major.
    std::vector<cplx> F(static_cast<std::size_t>(N) * N);
    for (int k = 0; k < N; ++k) {
        for (int j = 0; j < N; ++j) {
            const double ang = sign * 2.0 * kPi * static_cast<double>(k) * j / N;
            F[static_cast<std::size_t>(k) * N + j] = scale * cplx{std::cos(ang), std::sin(ang)};
        }
    }
    std::vector<cplx> data = values;
    std::vector<cplx> out(N);
    for (int axis = 0; axis < grid.d; ++axis) {
        for_each_line(data, grid, axis, [&](std::vector<cplx>& line) {
            for (int k = 0; k < N; ++k) {
                cplx acc{0.0, 0.0};
                const cplx* row = &F[static_cast<std::size_t>(k) * N];
                for (int j = 0; j < N; ++j) acc += row[j] * line[j];
                out[k] = acc;
            }
            line = out;
        });
    }
    return data;
}

}  // namespace specq
