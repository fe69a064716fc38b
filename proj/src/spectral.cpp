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

#include "specq/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace specq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Walks every mode of the grid, handing the callback the flat index and the
// signed/unsigned wavenumbers of each axis.
template <typename Fn>
void for_each_mode(const GridSpec& grid, FrequencyConvention conv, Fn&& fn) {
    const int N = grid.points_per_dim();
    std::vector<int> bins(grid.d, 0);
    std::vector<int> k(grid.d, 0);
    for (int i = 0; i < grid.d; ++i) k[i] = wavenumber(0, N, conv);
    for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        fn(flat, k);
        for (int i = grid.d - 1; i >= 0; --i) {
            if (++bins[i] < N) {
                k[i] = wavenumber(bins[i], N, conv);
                break;
            }
            bins[i] = 0;
            k[i] = wavenumber(0, N, conv);
        }
    }
}

// A-weighted quadratic form sum_ij A_ij (2 pi k_i)(2 pi k_j). Under the
// signed convention the Nyquist mode k = -N/2 has no +N/2 partner, so the
// first-derivative factors entering the cross terms are zeroed there; the
// pure second-derivative terms keep k^2. This keeps the operator conjugate
// symmetric, hence real-to-real.
double quad_form(const CoefficientMatrix& A, const std::vector<int>& k, int N,
                 FrequencyConvention conv) {
    const int nyquist = -N / 2;
    double q = 0.0;
    for (int i = 0; i < A.dim(); ++i) {
        q += A(i, i) * (kTwoPi * k[i]) * (kTwoPi * k[i]);
        for (int j = 0; j < A.dim(); ++j) {
            if (j == i) continue;
            const double ki =
                (conv == FrequencyConvention::Signed && k[i] == nyquist) ? 0.0 : k[i];
            const double kj =
                (conv == FrequencyConvention::Signed && k[j] == nyquist) ? 0.0 : k[j];
            q += A(i, j) * (kTwoPi * ki) * (kTwoPi * kj);
        }
    }
    return q;
}

void finalize_filter_stats(SpectralFilter& filter) {
    double min_mag = std::abs(filter.diag[0]);
    double max_mag = min_mag;
    for (const cplx& v : filter.diag) {
        const double m = std::abs(v);
        min_mag = std::min(min_mag, m);
        max_mag = std::max(max_mag, m);
    }
    filter.cond = max_mag / min_mag;
    filter.min_denom = 1.0 / max_mag;
    filter.max_denom = 1.0 / min_mag;
}

std::vector<cplx> apply_diag(const std::vector<cplx>& diag, const std::vector<cplx>& v) {
    std::vector<cplx> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = diag[i] * v[i];
    return out;
}

void check_grids(const SpectralFilter& filter, const Field& f) {
    if (!(f.grid == filter.grid)) throw ShapeError("field grid does not match filter grid");
}

void check_elliptic_zero_mean(const SpectralFilter& filter, const Field& f) {
    if (filter.kind == FilterKind::Elliptic) {
        if (std::abs(f.mean()) > 1e-10) {
            throw ValidationError("elliptic solve requires a zero-mean source");
        }
    }
}

}  // namespace

int wavenumber(int j, int N, FrequencyConvention conv) {
    if (conv == FrequencyConvention::Unsigned) return j;
    return j < N / 2 ? j : j - N;
}

CoefficientMatrix::CoefficientMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 1) {
        throw ValidationError("coefficient matrix must be square and nonempty");
    }
    for (int i = 0; i < m_.rows(); ++i) {
        for (int j = 0; j < i; ++j) {
            if (std::abs(m_(i, j) - m_(j, i)) > 1e-12) {
                throw ValidationError("coefficient matrix must be symmetric");
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw ValidationError("coefficient matrix must be positive definite");
    }
}

CoefficientMatrix CoefficientMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int d = static_cast<int>(rows.size());
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(rows[i].size()) != d) {
            throw ValidationError("coefficient matrix rows must have equal length");
        }
        for (int j = 0; j < d; ++j) m(i, j) = rows[i][j];
    }
    return CoefficientMatrix(std::move(m));
}

CoefficientMatrix CoefficientMatrix::identity(int d) {
    return CoefficientMatrix(Eigen::MatrixXd::Identity(d, d));
}

CoefficientMatrix CoefficientMatrix::diagonal(const std::vector<double>& diag) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return CoefficientMatrix(std::move(m));
}

double CoefficientMatrix::condition_number() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m_);
    return es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
}

std::string to_string(FilterKind kind) {
    switch (kind) {
        case FilterKind::Elliptic: return "elliptic";
        case FilterKind::Helmholtz: return "helmholtz";
        case FilterKind::Diffusion: return "diffusion";
    }
    return "?";
}

std::vector<cplx> derivative_diagonal(int n, FrequencyConvention conv) {
    if (n < 1) throw ValidationError("derivative_diagonal requires n >= 1");
    const int N = 1 << n;
    std::vector<cplx> diag(N);
    for (int j = 0; j < N; ++j) {
        diag[j] = cplx{0.0, kTwoPi * wavenumber(j, N, conv)};
    }
    return diag;
}

SpectralFilter filter_elliptic(const CoefficientMatrix& A, const GridSpec& grid,
                               FrequencyConvention conv) {
    if (A.dim() != grid.d) throw ShapeError("coefficient matrix dimension does not match grid");
    SpectralFilter filter;
    filter.grid = grid;
    filter.kind = FilterKind::Elliptic;
    filter.convention = conv;
    filter.A = A;
    filter.diag.resize(grid.size());
    for_each_mode(grid, conv, [&](std::size_t flat, const std::vector<int>& k) {
        bool zero_mode = true;
        for (int ki : k) zero_mode = zero_mode && (ki == 0);
        // D(k_i) D(k_j) = (2 pi i k_i)(2 pi i k_j) = -(2 pi k_i)(2 pi k_j)
        double denom = -quad_form(A, k, grid.points_per_dim(), conv) + (zero_mode ? 1.0 : 0.0);
        if (denom == 0.0) throw SingularFilterError("singular elliptic denominator");
        filter.diag[flat] = cplx{1.0 / denom, 0.0};
    });
    finalize_filter_stats(filter);
    return filter;
}

SpectralFilter filter_helmholtz(double lambda, const GridSpec& grid, FrequencyConvention conv) {
    if (lambda <= 0.0) throw ValidationError("helmholtz requires lambda > 0");
    SpectralFilter filter;
    filter.grid = grid;
    filter.kind = FilterKind::Helmholtz;
    filter.convention = conv;
    filter.lambda = lambda;
    filter.diag.resize(grid.size());
    const double lam2 = lambda * lambda;
    for_each_mode(grid, conv, [&](std::size_t flat, const std::vector<int>& k) {
        double sumsq = 0.0;
        for (int ki : k) sumsq += (kTwoPi * ki) * (kTwoPi * ki);
        const double denom = -sumsq + lam2;
        if (std::abs(denom) < 1e-12 * lam2) {
            throw SingularFilterError("helmholtz resonance: lambda^2 coincides with a mode");
        }
        filter.diag[flat] = cplx{1.0 / denom, 0.0};
    });
    finalize_filter_stats(filter);
    return filter;
}

SpectralFilter filter_diffusion(const CoefficientMatrix& A, double dt, const GridSpec& grid,
                                FrequencyConvention conv) {
    if (A.dim() != grid.d) throw ShapeError("coefficient matrix dimension does not match grid");
    if (dt <= 0.0) throw ValidationError("diffusion requires dt > 0");
    SpectralFilter filter;
    filter.grid = grid;
    filter.kind = FilterKind::Diffusion;
    filter.convention = conv;
    filter.A = A;
    filter.dt = dt;
    filter.diag.resize(grid.size());
    for_each_mode(grid, conv, [&](std::size_t flat, const std::vector<int>& k) {
        // 1 - dt * sum A_ij D(k_i) D(k_j) = 1 + dt * quad_form
        const double denom = 1.0 + dt * quad_form(A, k, grid.points_per_dim(), conv);
        filter.diag[flat] = cplx{1.0 / denom, 0.0};
    });
    finalize_filter_stats(filter);
    return filter;
}

Field solve_classical(const SpectralFilter& filter, const Field& f) {
    check_grids(filter, f);
    check_elliptic_zero_mean(filter, f);
    auto fhat = dft_nd(f.values, f.grid, false);
    auto uhat = apply_diag(filter.diag, fhat);
    return Field(f.grid, dft_nd(uhat, f.grid, true));
}

Field fft_reference_solve(const SpectralFilter& filter, const Field& f) {
    check_grids(filter, f);
    check_elliptic_zero_mean(filter, f);
    auto fhat = fft_nd(f.values, f.grid, false);
    auto uhat = apply_diag(filter.diag, fhat);
    return Field(f.grid, fft_nd(uhat, f.grid, true));
}

Field step_implicit(const SpectralFilter& filter, const Field& u_n, const Field& f, double dt) {
    if (filter.kind != FilterKind::Diffusion) {
        throw ValidationError("step_implicit requires a diffusion filter");
    }
    if (filter.dt != dt) throw ValidationError("step_implicit dt does not match filter dt");
    check_grids(filter, u_n);
    check_grids(filter, f);
    auto uhat = dft_nd(u_n.values, u_n.grid, false);
    auto fhat = dft_nd(f.values, f.grid, false);
    for (std::size_t i = 0; i < uhat.size(); ++i) {
        uhat[i] = filter.diag[i] * (uhat[i] - dt * fhat[i]);
    }
    return Field(u_n.grid, dft_nd(uhat, u_n.grid, true));
}

DiffusionTrajectory run_diffusion(const SpectralFilter& filter, const Field& u0, const Field& f,
                                  int steps) {
    if (steps < 1) throw ValidationError("run_diffusion requires steps >= 1");
    if (!filter.A) throw ValidationError("diffusion filter is missing its coefficient matrix");
    DiffusionTrajectory traj;
    traj.dt = filter.dt;
    traj.steps = steps;
    traj.states.reserve(steps + 1);
    traj.energies.reserve(steps + 1);
    traj.states.push_back(u0);
    traj.energies.push_back(energy(u0, f, *filter.A));
    for (int t = 0; t < steps; ++t) {
        traj.states.push_back(step_implicit(filter, traj.states.back(), f, filter.dt));
        traj.energies.push_back(energy(traj.states.back(), f, *filter.A));
    }
    return traj;
}

double energy(const Field& u, const Field& f, const CoefficientMatrix& A) {
    if (!(u.grid == f.grid)) throw ShapeError("energy: field grids do not match");
    if (A.dim() != u.grid.d) throw ShapeError("energy: coefficient matrix dimension mismatch");
    const auto uhat = fft_nd(u.values, u.grid, false);
    const auto fhat = fft_nd(f.values, f.grid, false);
    // Physical wavenumbers are always the signed ones.
    double e = 0.0;
    for_each_mode(u.grid, FrequencyConvention::Signed,
                  [&](std::size_t flat, const std::vector<int>& k) {
                      e += 0.5 * quad_form(A, k, u.grid.points_per_dim(), FrequencyConvention::Signed) * std::norm(uhat[flat]);
                      e += (fhat[flat] * std::conj(uhat[flat])).real();
                  });
    return e / static_cast<double>(u.grid.size());
}

double relative_error(const Field& u, const Field& u_ref) {
    if (!(u.grid == u_ref.grid)) throw ShapeError("relative_error: grids do not match");
    const double ref_norm = u_ref.norm();
    if (ref_norm == 0.0) throw DegenerateReferenceError("relative_error: zero reference norm");
    double s = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) s += std::norm(u.values[i] - u_ref.values[i]);
    return std::sqrt(s) / ref_norm;
}

double condition_number(const SpectralFilter& filter) { return filter.cond; }

void export_filter_csv(const SpectralFilter& filter, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    for (int i = 0; i < filter.grid.d; ++i) out << "k" << (i + 1) << ",";
    out << "re,im,abs_denom\n";
    const int N = filter.grid.points_per_dim();
    char buf[96];
    for_each_mode(filter.grid, filter.convention, [&](std::size_t flat, const std::vector<int>& k) {
        (void)N;
        for (int ki : k) out << ki << ",";
        const cplx v = filter.diag[flat];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", v.real(), v.imag(),
                      1.0 / std::abs(v));
        out << buf;
    });
}

void export_energy_csv(const DiffusionTrajectory& traj, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "step,energy\n";
    char buf[48];
    for (std::size_t t = 0; t < traj.energies.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", t, traj.energies[t]);
        out << buf;
    }
}

}  // namespace specq
