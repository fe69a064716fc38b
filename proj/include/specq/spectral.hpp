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

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "specq/fft.hpp"
#include "specq/lattice.hpp"

namespace specq {

/// How a per-dimension bin index j maps to a wavenumber.
/// Signed: k = j for j < N/2, else j - N (default).
/// Unsigned: k = j.
enum class FrequencyConvention { Signed, Unsigned };

int wavenumber(int j, int N, FrequencyConvention conv);

/// Symmetric positive-definite coefficient matrix for the second-order
/// operator. Validated at construction.
class CoefficientMatrix {
  public:
    explicit CoefficientMatrix(Eigen::MatrixXd m);

    static CoefficientMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static CoefficientMatrix identity(int d);
    static CoefficientMatrix diagonal(const std::vector<double>& diag);

    int dim() const { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXd& matrix() const { return m_; }

    /// Eigenvalue ratio lambda_max / lambda_min.
    double condition_number() const;

  private:
    Eigen::MatrixXd m_;
};

enum class FilterKind { Elliptic, Helmholtz, Diffusion };

std::string to_string(FilterKind kind);

/// Diagonal operator in frequency space, one entry per lattice mode.
/// min_denom/max_denom are min/max |1/diag| over modes (the m and M fed to
/// the block-encoding pipeline); cond = max|diag| / min|diag|.
struct SpectralFilter {
    GridSpec grid;
    FilterKind kind = FilterKind::Elliptic;
    FrequencyConvention convention = FrequencyConvention::Signed;
    std::vector<cplx> diag;
    double cond = 1.0;
    double min_denom = 1.0;
    double max_denom = 1.0;
    std::optional<CoefficientMatrix> A;
    double lambda = 0.0;
    double dt = 0.0;
};

/// Entry j of the 1-D derivative diagonal: 2*pi*i*k_j.
std::vector<cplx> derivative_diagonal(int n, FrequencyConvention conv);

SpectralFilter filter_elliptic(const CoefficientMatrix& A, const GridSpec& grid,
                               FrequencyConvention conv = FrequencyConvention::Signed);
SpectralFilter filter_helmholtz(double lambda, const GridSpec& grid,
                                FrequencyConvention conv = FrequencyConvention::Signed);
SpectralFilter filter_diffusion(const CoefficientMatrix& A, double dt, const GridSpec& grid,
                                FrequencyConvention conv = FrequencyConvention::Signed);

/// inverse-DFT( diag ⊙ DFT(f) ) through the dense per-axis DFT path.
Field solve_classical(const SpectralFilter& filter, const Field& f);

/// Same operator applied through the radix-2 FFT path (the reference
/// solution u_true).
Field fft_reference_solve(const SpectralFilter& filter, const Field& f);

/// One implicit Euler step: inverse-DFT( diag ⊙ (DFT(u_n) - dt*DFT(f)) ).
Field step_implicit(const SpectralFilter& filter, const Field& u_n, const Field& f, double dt);

struct DiffusionTrajectory {
    std::vector<Field> states;     // u_0 .. u_T
    std::vector<double> energies;  // E(u_0) .. E(u_T)
    double dt = 0.0;
    int steps = 0;
};

DiffusionTrajectory run_diffusion(const SpectralFilter& filter, const Field& u0, const Field& f,
                                  int steps);

/// Energy of the gradient flow, computed spectrally via Parseval:
/// E = (1/N^d) * sum_k [ 1/2 * sum_ij A_ij (2*pi*k_i)(2*pi*k_j) |u_hat(k)|^2
///                       + Re(f_hat(k) * conj(u_hat(k))) ].
double energy(const Field& u, const Field& f, const CoefficientMatrix& A);

/// Discrete relative L2 error ||u - u_ref|| / ||u_ref||.
double relative_error(const Field& u, const Field& u_ref);

double condition_number(const SpectralFilter& filter);

void export_filter_csv(const SpectralFilter& filter, const std::string& path);
void export_energy_csv(const DiffusionTrajectory& traj, const std::string& path);

}  // namespace specq
