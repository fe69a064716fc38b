// Shared test oracles, independent of the library's transform and encoding
// implementations: everything here is direct summation over definitions.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "specq/lattice.hpp"

namespace specq::testing {

using specq::cplx;

// Direct-summation unitary DFT with omega = exp(+2*pi*i/N) (sign = +1 for
// the forward direction, -1 for the inverse).
inline std::vector<cplx> naive_dft_1d(const std::vector<cplx>& in, int sign) {
    const std::size_t N = in.size();
    std::vector<cplx> out(N, cplx{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < N; ++j) {
            const double ang =
                sign * 2.0 * std::numbers::pi * static_cast<double>(k * j % N) / N;
            out[k] += in[j] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[k] *= scale;
    }
    return out;
}

// d-dimensional version via direct summation over all pairs of multi-indices.
inline std::vector<cplx> naive_dft_nd(const std::vector<cplx>& in, const GridSpec& grid,
                                      int sign) {
    const int N = grid.points_per_dim();
    const std::size_t total = grid.size();
    std::vector<cplx> out(total, cplx{0.0, 0.0});
    const double scale = 1.0 / std::sqrt(static_cast<double>(total));
    for (std::size_t k = 0; k < total; ++k) {
        const auto km = unflatten_index(k, grid);
        for (std::size_t j = 0; j < total; ++j) {
            const auto jm = unflatten_index(j, grid);
            long dot = 0;
            for (int i = 0; i < grid.d; ++i) dot += static_cast<long>(km[i]) * jm[i];
            const double ang = sign * 2.0 * std::numbers::pi * static_cast<double>(dot % N) / N;
            out[k] += in[j] * cplx{std::cos(ang), std::sin(ang)};
        }
        out[k] *= scale;
    }
    return out;
}

// Dense N x N unitary DFT matrix F[j,k] = omega^{jk}/sqrt(N), row-major.
inline std::vector<cplx> dft_matrix(int N) {
    std::vector<cplx> F(static_cast<std::size_t>(N) * N);
    const double scale = 1.0 / std::sqrt(static_cast<double>(N));
    for (int j = 0; j < N; ++j) {
        for (int k = 0; k < N; ++k) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(j) * k / N;
            F[static_cast<std::size_t>(j) * N + k] = scale * cplx{std::cos(ang), std::sin(ang)};
        }
    }
    return F;
}

inline std::vector<cplx> kron(const std::vector<cplx>& A, std::size_t na,
                              const std::vector<cplx>& B, std::size_t nb) {
    std::vector<cplx> out(na * nb * na * nb);
    for (std::size_t i = 0; i < na; ++i) {
        for (std::size_t j = 0; j < na; ++j) {
            for (std::size_t k = 0; k < nb; ++k) {
                for (std::size_t l = 0; l < nb; ++l) {
                    out[(i * nb + k) * (na * nb) + (j * nb + l)] = A[i * na + j] * B[k * nb + l];
                }
            }
        }
    }
    return out;
}

inline double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline std::vector<cplx> random_complex(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::vector<cplx> v(n);
    for (cplx& x : v) x = cplx{uni(rng), uni(rng)};
    return v;
}

// Real-valued zero-mean random field.
inline Field random_real_zero_mean_field(const GridSpec& grid, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    Field f(grid);
    double sum = 0.0;
    for (cplx& v : f.values) {
        const double x = uni(rng);
        v = cplx{x, 0.0};
        sum += x;
    }
    const double mean = sum / static_cast<double>(f.values.size());
    for (cplx& v : f.values) v -= mean;
    return f;
}

}  // namespace specq::testing
