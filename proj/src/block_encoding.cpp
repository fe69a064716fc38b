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

#include "specq/block_encoding.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace specq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kBitCeiling = 40;      // beyond this, double truncation is meaningless
constexpr int kDenseTheta = 10;      // dense u_theta simulation up to this t
constexpr int kDenseEncoding = 11;   // dense_unitary guard (qubits)

double truncate_bits(double x, int bits) {
    return std::ldexp(std::floor(std::ldexp(x, bits)), -bits);
}

// Minimax scale fit: the alpha minimizing max_i |alpha*enc_i - inv_i|.
// h(alpha) is convex piecewise-linear, so a ternary search suffices. Modes
// whose amplitude truncated to zero carry no scale information and only add
// a constant to h, so they are excluded from the bracket.
double fit_alpha(const std::vector<double>& enc, const std::vector<double>& inv) {
    double lo = 0.0, hi = 0.0;
    bool first = true;
    for (std::size_t i = 0; i < enc.size(); ++i) {
        if (enc[i] == 0.0) continue;
        const double r = inv[i] / enc[i];
        if (first) {
            lo = hi = r;
            first = false;
        } else {
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
    }
    if (first) return 1.0;
    lo *= 0.5;
    hi *= 2.0;
    auto h = [&](double a) {
        double worst = 0.0;
        for (std::size_t i = 0; i < enc.size(); ++i) {
            worst = std::max(worst, std::abs(a * enc[i] - inv[i]));
        }
        return worst;
    };
    for (int it = 0; it < 300; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (h(m1) < h(m2)) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double BinaryAngle::magnitude() const { return std::ldexp(static_cast<double>(bits), -t); }

double BinaryAngle::value() const { return sign ? -magnitude() : magnitude(); }

BinaryAngle encode_angle(double v, int t) {
    if (t < 1 || t > 62) throw ValidationError("encode_angle requires 1 <= t <= 62");
    if (!(std::abs(v) < 1.0)) throw RangeError("encode_angle requires |v| < 1");
    BinaryAngle a;
    a.sign = v < 0.0 ? 1 : 0;
    a.t = t;
    const double scaled = std::ldexp(std::abs(v), t);
    std::uint64_t bits = static_cast<std::uint64_t>(std::floor(scaled));
    const std::uint64_t cap = (std::uint64_t{1} << t) - 1;
    a.bits = std::min(bits, cap);
    return a;
}

Circuit u_theta_circuit(int t) {
    if (t < 1) throw ValidationError("u_theta_circuit requires t >= 1");
    Circuit c(t + 2, "u_theta_t" + std::to_string(t));
    c.z(1);
    for (int j = 0; j < t; ++j) {
        // control qubit 2+j holds theta_{t-1-j}
        c.cry(2 + j, 0, kPi / static_cast<double>(std::size_t{1} << j));
    }
    return c;
}

std::array<cplx, 2> u_theta_branch(const BinaryAngle& angle) {
    const int t = angle.t;
    if (t <= kDenseTheta) {
        const Circuit circ = u_theta_circuit(t);
        const std::size_t index =
            (static_cast<std::size_t>(angle.sign) << t) | static_cast<std::size_t>(angle.bits);
        QubitState s = apply(circ, QubitState::basis(t + 2, index));
        const std::size_t ancilla_mask = std::size_t{1} << (t + 1);
        return {s.amps[index], s.amps[index | ancilla_mask]};
    }
    // Same cascade composed on the ancilla's invariant 2-dim subspace.
    double a0 = 1.0, a1 = 0.0;
    for (int j = 0; j < t; ++j) {
        if (!(angle.bits >> (t - 1 - j) & 1)) continue;
        const double half = 0.5 * kPi / static_cast<double>(std::size_t{1} << j);
        const double c = std::cos(half), s = std::sin(half);
        const double n0 = c * a0 - s * a1;
        const double n1 = s * a0 + c * a1;
        a0 = n0;
        a1 = n1;
    }
    const double phase = angle.sign ? -1.0 : 1.0;
    return {cplx{phase * a0, 0.0}, cplx{phase * a1, 0.0}};
}

EncodingParams encoding_params(double M, double m, double eps) {
    if (!(M > 0.0) || !(m > 0.0) || M < m) throw ValidationError("encoding params need M >= m > 0");
    if (!(eps > 0.0)) throw ValidationError("encoding params need eps > 0");
    EncodingParams p;
    p.M = M;
    p.m = m;
    p.kappa = M / m;
    p.c = std::sqrt(kPi * kPi - 1.0) / kPi;
    p.k = p.c / p.kappa;
    p.eps = eps;
    const int t_raw = static_cast<int>(std::ceil(std::log2(kPi * M / eps)));
    p.t = std::max(1, t_raw);
    p.t_clamped = t_raw < 1;
    if (p.t > kBitCeiling) {
        throw PrecisionCeilingError("requested precision needs t=" + std::to_string(p.t) +
                                    " bits, above the ceiling of " + std::to_string(kBitCeiling));
    }
    p.t_prime = p.t + static_cast<int>(std::ceil(std::log2(p.kappa)));
    return p;
}

EncodingParams encoding_params_from_bits(double M, double m, int t) {
    if (t < 1 || t > kBitCeiling) {
        throw PrecisionCeilingError("bit count must lie in [1, " + std::to_string(kBitCeiling) +
                                    "]");
    }
    if (!(M > 0.0) || !(m > 0.0) || M < m) throw ValidationError("encoding params need M >= m > 0");
    EncodingParams p;
    p.M = M;
    p.m = m;
    p.kappa = M / m;
    p.c = std::sqrt(kPi * kPi - 1.0) / kPi;
    p.k = p.c / p.kappa;
    p.eps = kPi * M * std::ldexp(1.0, -t);
    p.t = t;
    p.t_prime = t + static_cast<int>(std::ceil(std::log2(p.kappa)));
    return p;
}

void BlockEncoding::apply_in_place(QubitState& state) const {
    if (state.q != qubits()) throw ShapeError("block encoding qubit count mismatch");
    const std::size_t half = std::size_t{1} << target_qubits;
    for (std::size_t i = 0; i < half; ++i) {
        const cplx a = block_diag[i];
        const double g = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
        const cplx v0 = state.amps[i];
        const cplx v1 = state.amps[i + half];
        state.amps[i] = a * v0 + g * v1;
        state.amps[i + half] = g * v0 - std::conj(a) * v1;
    }
}

QubitState BlockEncoding::apply(QubitState state) const {
    apply_in_place(state);
    return state;
}

std::vector<cplx> BlockEncoding::dense_unitary() const {
    if (qubits() > kDenseEncoding) {
        throw ValidationError("dense block-encoding unitary limited to " +
                              std::to_string(kDenseEncoding) + " qubits");
    }
    const std::size_t half = std::size_t{1} << target_qubits;
    const std::size_t dim = half * 2;
    std::vector<cplx> U(dim * dim, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < half; ++i) {
        const auto b = dilation2(block_diag[i]);
        U[i * dim + i] = b[0];
        U[i * dim + (i + half)] = b[1];
        U[(i + half) * dim + i] = b[2];
        U[(i + half) * dim + (i + half)] = b[3];
    }
    return U;
}

std::array<cplx, 4> dilation2(cplx a) {
    if (std::abs(a) > 1.0 + 1e-12) throw NormalizationError("dilation2 requires |a| <= 1");
    const double g = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
    return {a, cplx{g, 0.0}, cplx{g, 0.0}, -std::conj(a)};
}

BlockEncoding ideal_dilation(const SpectralFilter& filter, double alpha) {
    double max_mag = 0.0;
    for (const cplx& v : filter.diag) max_mag = std::max(max_mag, std::abs(v));
    if (alpha < max_mag * (1.0 - 1e-14)) {
        throw NormalizationError("ideal dilation requires alpha >= max |diag|");
    }
    BlockEncoding enc;
    enc.target_qubits = filter.grid.register_bits();
    enc.alpha = alpha;
    enc.eps_bound = 1e-14;
    enc.path = EncodingPath::IdealDilation;
    enc.block_diag.resize(filter.diag.size());
    for (std::size_t i = 0; i < filter.diag.size(); ++i) {
        cplx a = filter.diag[i] / alpha;
        if (std::abs(a) > 1.0) a /= std::abs(a);  // clip roundoff above the unit circle
        enc.block_diag[i] = a;
    }
    return enc;
}

namespace {

ArithmeticEncoding run_pipeline(std::span<const double> denoms, const EncodingParams& params) {
    const std::size_t n = denoms.size();
    if (n == 0) throw ValidationError("arithmetic pipeline needs at least one mode");

    ArithmeticEncoding result;
    result.params = params;
    result.modes.resize(n);

    std::vector<double> enc(n), enc_exact(n), inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = denoms[i];
        if (d == 0.0 || !std::isfinite(d)) throw ValidationError("denominators must be nonzero");
        const int sgn = d < 0.0 ? 1 : 0;
        const double x = std::abs(d) / params.M;

        // O_D: t'-bit truncation of |D_ii|/M into the oracle register.
        const double x_tr = truncate_bits(x, params.t_prime);
        if (x_tr > 1.0 || x_tr < 1.0 / params.kappa - std::ldexp(1.0, -params.t_prime)) {
            throw OracleDomainError("oracle input outside [1/kappa - 2^-t', 1]");
        }

        // B: t-bit truncation of g(x) = (1/pi) arcsin(k/x).
        const double ratio = std::min(params.k / x_tr, 1.0);
        const double g_val = std::asin(ratio) / kPi;
        const BinaryAngle angle = encode_angle(sgn ? -g_val : g_val, params.t);

        // U_theta on the basis angle.
        const auto branch = u_theta_branch(angle);
        enc[i] = branch[1].real();

        // B^dag, O_D^dag: recomputing the same classical values restores both
        // registers; assert the restoration exactly.
        const double x_tr_uncompute = truncate_bits(x, params.t_prime);
        const BinaryAngle angle_uncompute = encode_angle(sgn ? -g_val : g_val, params.t);
        if (x_tr_uncompute != x_tr || angle_uncompute.bits != angle.bits ||
            angle_uncompute.sign != angle.sign) {
            throw ValidationError("uncomputation failed to restore a register");
        }

        // Untruncated pipeline amplitude: sin(pi * g(x)) = k/x exactly.
        enc_exact[i] = (sgn ? -1.0 : 1.0) * (params.k / x);
        inv[i] = 1.0 / d;
    }

    result.alpha_eff = fit_alpha(enc, inv);
    result.alpha_exact = fit_alpha(enc_exact, inv);

    const double bound = kPi * params.M * std::ldexp(1.0, -params.t);
    for (std::size_t i = 0; i < n; ++i) {
        ModeRecord& rec = result.modes[i];
        rec.mode = i;
        rec.denom = denoms[i];
        rec.exact_inverse = inv[i];
        rec.encoded = enc[i];
        rec.abs_error = std::abs(result.alpha_eff * enc[i] - inv[i]);
        rec.bound = bound;
        result.max_abs_error = std::max(result.max_abs_error, rec.abs_error);
    }

    int target_qubits = 0;
    while ((std::size_t{1} << target_qubits) < n) ++target_qubits;
    if ((std::size_t{1} << target_qubits) != n) {
        throw ValidationError("arithmetic pipeline needs a power-of-two mode count");
    }

    BlockEncoding& be = result.encoding;
    be.target_qubits = std::max(target_qubits, 1);
    be.alpha = result.alpha_eff;
    be.eps_bound = result.max_abs_error * (1.0 + 1e-12) + 1e-15;
    be.path = EncodingPath::Arithmetic;
    be.params = params;
    be.block_diag.assign(std::size_t{1} << be.target_qubits, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) be.block_diag[i] = cplx{enc[i], 0.0};
    return result;
}

EncodingParams params_for_denoms(std::span<const double> denoms, double eps, int t_override) {
    double M = 0.0, m = 0.0;
    bool first = true;
    for (double d : denoms) {
        const double mag = std::abs(d);
        if (mag == 0.0 || !std::isfinite(mag)) {
            throw ValidationError("denominators must be nonzero and finite");
        }
        if (first) {
            M = m = mag;
            first = false;
        } else {
            M = std::max(M, mag);
            m = std::min(m, mag);
        }
    }
    return t_override > 0 ? encoding_params_from_bits(M, m, t_override)
                          : encoding_params(M, m, eps);
}

}  // namespace

ArithmeticEncoding arithmetic_pipeline(std::span<const double> denoms, double eps) {
    return run_pipeline(denoms, params_for_denoms(denoms, eps, 0));
}

ArithmeticEncoding arithmetic_pipeline_bits(std::span<const double> denoms, int t) {
    return run_pipeline(denoms, params_for_denoms(denoms, 0.0, t));
}

std::vector<double> filter_denominators(const SpectralFilter& filter) {
    std::vector<double> denoms(filter.diag.size());
    for (std::size_t i = 0; i < filter.diag.size(); ++i) {
        const cplx inv = 1.0 / filter.diag[i];
        if (std::abs(inv.imag()) > 1e-12 * std::abs(inv)) {
            throw ValidationError("arithmetic path requires a real filter diagonal");
        }
        denoms[i] = inv.real();
    }
    return denoms;
}

BlockEncoding encode_filter(const SpectralFilter& filter, EncodingPath path, double eps,
                            int t_override) {
    if (path == EncodingPath::IdealDilation) {
        double max_mag = 0.0;
        for (const cplx& v : filter.diag) max_mag = std::max(max_mag, std::abs(v));
        return ideal_dilation(filter, max_mag);
    }
    const std::vector<double> denoms = filter_denominators(filter);
    ArithmeticEncoding arith = t_override > 0 ? arithmetic_pipeline_bits(denoms, t_override)
                                              : arithmetic_pipeline(denoms, eps);
    return std::move(arith.encoding);
}

EncodingResources resource_estimate(const EncodingParams& params, const GridSpec& grid) {
    EncodingResources r;
    r.t = params.t;
    r.t_prime = params.t_prime;
    r.transient_ancillas = params.t_prime + 1;
    r.persistent_ancillas = 1;
    r.u_theta_gates = params.t + 1;  // t controlled rotations + 1 Z
    r.qft_gates_per_register = grid.n * (grid.n + 1) / 2;
    return r;
}

void export_mode_report_csv(const std::vector<ModeRecord>& modes, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << "mode,denom,exact_inverse,encoded,abs_error,bound\n";
    char buf[160];
    for (const ModeRecord& r : modes) {
        std::snprintf(buf, sizeof buf, "%llu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<unsigned long long>(r.mode), r.denom, r.exact_inverse,
                      r.encoded, r.abs_error, r.bound);
        out << buf;
    }
}

}  // namespace specq
