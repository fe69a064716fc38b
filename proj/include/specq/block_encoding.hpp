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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specq/spectral.hpp"
#include "specq/statevector.hpp"

namespace specq {

/// Sign bit plus t-bit fixed-point magnitude of a value in (-1, 1).
struct BinaryAngle {
    int sign = 0;       // 0 positive, 1 negative
    std::uint64_t bits = 0;  // theta_{t-1} .. theta_0
    int t = 1;

    double magnitude() const;          // sum theta_k 2^{-(t-k)}
    double value() const;              // signed
};

/// Truncation toward zero of |v| to t fractional bits.
BinaryAngle encode_angle(double v, int t);

/// Circuit on t+2 qubits realizing
///   |theta>|0>  ->  |theta> (-1)^s (cos(pi*theta)|0> + sin(pi*theta)|1>).
/// Layout: qubit 0 = rotation ancilla, qubit 1 = sign, qubits 2..t+1 =
/// theta_{t-1}..theta_0. Built as Z on the sign qubit followed by the
/// controlled-Ry cascade with halving angles.
Circuit u_theta_circuit(int t);

/// Ancilla amplitudes (|0> branch, |1> branch) produced by u_theta_circuit
/// on a basis angle. Dense circuit simulation for small t; for larger t the
/// gate cascade is composed directly on the invariant 2-dimensional
/// subspace, which is the same linear map.
std::array<cplx, 2> u_theta_branch(const BinaryAngle& angle);

/// Fixed-point parameters of the inverse-diagonal encoding.
struct EncodingParams {
    double M = 1.0;      // max |denominator|
    double m = 1.0;      // min |denominator|
    double kappa = 1.0;  // M / m
    double c = 0.0;      // sqrt(pi^2 - 1) / pi
    double k = 0.0;      // c / kappa
    double eps = 0.0;
    int t = 1;
    int t_prime = 1;
    bool t_clamped = false;
};

/// t = ceil(log2(pi*M/eps)) clamped to >= 1; t' = t + ceil(log2 kappa).
EncodingParams encoding_params(double M, double m, double eps);
/// Same parameters derived from a bit count: eps = pi*M*2^-t.
EncodingParams encoding_params_from_bits(double M, double m, int t);

enum class EncodingPath { IdealDilation, Arithmetic };

/// One-ancilla block encoding of a diagonal operator. The ancilla is qubit 0
/// and the encoded block sits in the ancilla-|0> corner, mode by mode:
///   [[ a_i, sqrt(1-|a_i|^2) ], [ sqrt(1-|a_i|^2), -conj(a_i) ]].
struct BlockEncoding {
    int target_qubits = 1;
    double alpha = 1.0;
    int ancilla_count = 1;
    double eps_bound = 0.0;
    EncodingPath path = EncodingPath::IdealDilation;
    std::vector<cplx> block_diag;  // a_i = encoded top-left diagonal
    std::optional<EncodingParams> params;

    int qubits() const { return target_qubits + 1; }
    void apply_in_place(QubitState& state) const;
    QubitState apply(QubitState state) const;
    /// Dense (2^(target_qubits+1))^2 matrix; guarded against large sizes.
    std::vector<cplx> dense_unitary() const;
};

/// 2x2 dilation of a scalar with |a| <= 1:
/// [[a, sqrt(1-|a|^2)], [sqrt(1-|a|^2), -conj(a)]].
std::array<cplx, 4> dilation2(cplx a);

/// Exact one-ancilla dilation of the filter diagonal scaled by alpha.
BlockEncoding ideal_dilation(const SpectralFilter& filter, double alpha);

struct ModeRecord {
    std::uint64_t mode = 0;
    double denom = 0.0;
    double exact_inverse = 0.0;
    double encoded = 0.0;    // amplitude sign(denom) * sin(pi * theta_t)
    double abs_error = 0.0;  // |alpha_eff * encoded - 1/denom|
    double bound = 0.0;      // pi * M * 2^-t
};

struct ArithmeticEncoding {
    BlockEncoding encoding;
    EncodingParams params;
    std::vector<ModeRecord> modes;
    double alpha_eff = 0.0;    // minimax fit of alpha over the truncated pipeline
    double alpha_exact = 0.0;  // same fit with untruncated arithmetic; -> 1/(c*m)
    double max_abs_error = 0.0;
};

/// Emulated fixed-point pipeline: O_D writes the t'-bit truncation of
/// |D_ii|/M plus sign, B computes the t-bit truncation of
/// g(x) = (1/pi) * arcsin(k/x), U_theta rotates the ancilla, then B and O_D
/// are uncomputed (register restoration is asserted exactly).
ArithmeticEncoding arithmetic_pipeline(std::span<const double> denoms, double eps);
ArithmeticEncoding arithmetic_pipeline_bits(std::span<const double> denoms, int t);

/// The filter's per-mode denominators 1/diag, which must be real.
std::vector<double> filter_denominators(const SpectralFilter& filter);

/// Dispatches on path. For the arithmetic path t_override > 0 fixes the bit
/// count directly (eps is then ignored).
BlockEncoding encode_filter(const SpectralFilter& filter, EncodingPath path, double eps,
                            int t_override = 0);

struct EncodingResources {
    int t = 0;
    int t_prime = 0;
    int transient_ancillas = 0;   // t'+1, restored by uncomputation
    int persistent_ancillas = 1;  // the rotation ancilla
    int u_theta_gates = 0;        // t controlled rotations + 1 Z (exact count)
    int qft_gates_per_register = 0;  // n(n+1)/2, swaps excluded
    bool u_theta_exact = true;
    bool oracle_counts_modeled = true;  // O_D / B are emulated, not synthesized
};

EncodingResources resource_estimate(const EncodingParams& params, const GridSpec& grid);

void export_mode_report_csv(const std::vector<ModeRecord>& modes, const std::string& path);

}  // namespace specq
