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

#include "specq/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace specq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kDenseCeiling = 11;  // dense_unitary guard: 2^11 x 2^11

void check_qubit(int q, int idx, const char* what) {
    if (idx < 0 || idx >= q) {
        throw ValidationError(std::string(what) + " qubit index out of range");
    }
}

// Qubit i is the most significant bit: mask = 1 << (q - 1 - i).
std::size_t qubit_mask(int q, int i) { return std::size_t{1} << (q - 1 - i); }

void apply_1q(std::vector<cplx>& amps, std::size_t mask, cplx u00, cplx u01, cplx u10, cplx u11,
              std::size_t control_mask = 0) {
    const std::size_t dim = amps.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & mask) continue;
        if ((i & control_mask) != control_mask) continue;
        const std::size_t j = i | mask;
        const cplx a = amps[i];
        const cplx b = amps[j];
        amps[i] = u00 * a + u01 * b;
        amps[j] = u10 * a + u11 * b;
    }
}

void validate_unitary_block(const std::vector<int>& targets, const std::vector<cplx>& matrix) {
    if (targets.empty()) throw ValidationError("UnitaryBlock needs at least one target");
    const std::size_t dim = std::size_t{1} << targets.size();
    if (matrix.size() != dim * dim) {
        throw ValidationError("UnitaryBlock matrix size does not match target count");
    }
    // ||U^dag U - I||_max <= 1e-12
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            cplx acc{0.0, 0.0};
            for (std::size_t k = 0; k < dim; ++k) {
                acc += std::conj(matrix[k * dim + i]) * matrix[k * dim + j];
            }
            const cplx expect = (i == j) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
            if (std::abs(acc - expect) > 1e-12) {
                throw ValidationError("UnitaryBlock matrix is not unitary");
            }
        }
    }
}

std::vector<int> involved_qubits(const Gate& g) {
    std::vector<int> qs;
    switch (g.kind) {
        case GateKind::UnitaryBlock: qs = g.targets; break;
        case GateKind::Swap: qs = {g.target, g.control}; break;
        case GateKind::ControlledPhase:
        case GateKind::ControlledRy: qs = {g.target, g.control}; break;
        default: qs = {g.target}; break;
    }
    return qs;
}

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::PhaseShift: return "P";
        case GateKind::ControlledPhase: return "CP";
        case GateKind::Swap: return "SWAP";
        case GateKind::Ry: return "RY";
        case GateKind::ControlledRy: return "CRY";
        case GateKind::Z: return "Z";
        case GateKind::X: return "X";
        case GateKind::UnitaryBlock: return "UNITARY";
    }
    return "?";
}

}  // namespace

QubitState QubitState::zero(int q) { return basis(q, 0); }

QubitState QubitState::basis(int q, std::size_t index) {
    if (q < 1 || q > 30) throw ValidationError("qubit count out of range");
    QubitState s;
    s.q = q;
    s.amps.assign(std::size_t{1} << q, cplx{0.0, 0.0});
    if (index >= s.amps.size()) throw IndexError("basis index out of range");
    s.amps[index] = cplx{1.0, 0.0};
    return s;
}

double QubitState::norm() const {
    double s = 0.0;
    for (const cplx& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

Circuit& Circuit::h(int t) {
    check_qubit(q, t, "H");
    gates.push_back({GateKind::H, t, -1, 0.0, {}, nullptr});
    return *this;
}

Circuit& Circuit::phase(int t, double angle) {
    check_qubit(q, t, "P");
    gates.push_back({GateKind::PhaseShift, t, -1, angle, {}, nullptr});
    return *this;
}

Circuit& Circuit::cphase(int control, int t, double angle) {
    check_qubit(q, t, "CP target");
    check_qubit(q, control, "CP control");
    if (control == t) throw ValidationError("CP control equals target");
    gates.push_back({GateKind::ControlledPhase, t, control, angle, {}, nullptr});
    return *this;
}

Circuit& Circuit::swap(int a, int b) {
    check_qubit(q, a, "SWAP");
    check_qubit(q, b, "SWAP");
    if (a == b) throw ValidationError("SWAP qubits must differ");
    gates.push_back({GateKind::Swap, a, b, 0.0, {}, nullptr});
    return *this;
}

Circuit& Circuit::ry(int t, double angle) {
    check_qubit(q, t, "RY");
    gates.push_back({GateKind::Ry, t, -1, angle, {}, nullptr});
    return *this;
}

Circuit& Circuit::cry(int control, int t, double angle) {
    check_qubit(q, t, "CRY target");
    check_qubit(q, control, "CRY control");
    if (control == t) throw ValidationError("CRY control equals target");
    gates.push_back({GateKind::ControlledRy, t, control, angle, {}, nullptr});
    return *this;
}

Circuit& Circuit::z(int t) {
    check_qubit(q, t, "Z");
    gates.push_back({GateKind::Z, t, -1, 0.0, {}, nullptr});
    return *this;
}

Circuit& Circuit::x(int t) {
    check_qubit(q, t, "X");
    gates.push_back({GateKind::X, t, -1, 0.0, {}, nullptr});
    return *this;
}

Circuit& Circuit::unitary(std::vector<int> targets, std::vector<cplx> matrix) {
    for (int t : targets) check_qubit(q, t, "UNITARY");
    validate_unitary_block(targets, matrix);
    Gate g;
    g.kind = GateKind::UnitaryBlock;
    g.targets = std::move(targets);
    g.matrix = std::make_shared<const std::vector<cplx>>(std::move(matrix));
    gates.push_back(std::move(g));
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit inv(q, label.empty() ? "" : label + "_dag");
    inv.gates.reserve(gates.size());
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::PhaseShift:
            case GateKind::ControlledPhase:
            case GateKind::Ry:
            case GateKind::ControlledRy: g.angle = -g.angle; break;
            case GateKind::UnitaryBlock: {
                const auto& m = *g.matrix;
                const std::size_t dim = std::size_t{1} << g.targets.size();
                std::vector<cplx> adj(dim * dim);
                for (std::size_t r = 0; r < dim; ++r) {
                    for (std::size_t c = 0; c < dim; ++c) adj[c * dim + r] = std::conj(m[r * dim + c]);
                }
                g.matrix = std::make_shared<const std::vector<cplx>>(std::move(adj));
                break;
            }
            default: break;  // H, Z, X, Swap are self-inverse
        }
        inv.gates.push_back(std::move(g));
    }
    return inv;
}

Circuit Circuit::embedded(int new_q, int offset) const {
    if (offset < 0 || offset + q > new_q) throw ValidationError("embedded: window out of range");
    Circuit out(new_q, label);
    out.gates.reserve(gates.size());
    for (Gate g : gates) {
        if (g.target >= 0) g.target += offset;
        if (g.control >= 0) g.control += offset;
        for (int& t : g.targets) t += offset;
        out.gates.push_back(std::move(g));
    }
    return out;
}

std::string Circuit::to_text() const {
    std::ostringstream os;
    char buf[64];
    for (const Gate& g : gates) {
        os << kind_name(g.kind);
        switch (g.kind) {
            case GateKind::H:
            case GateKind::Z:
            case GateKind::X: os << ' ' << g.target; break;
            case GateKind::PhaseShift:
            case GateKind::Ry:
                std::snprintf(buf, sizeof buf, " %d %.17g", g.target, g.angle);
                os << buf;
                break;
            case GateKind::ControlledPhase:
            case GateKind::ControlledRy:
                std::snprintf(buf, sizeof buf, " %d %d %.17g", g.target, g.control, g.angle);
                os << buf;
                break;
            case GateKind::Swap: os << ' ' << g.target << ' ' << g.control; break;
            case GateKind::UnitaryBlock:
                for (int t : g.targets) os << ' ' << t;
                break;
        }
        os << '\n';
    }
    return os.str();
}

QubitState apply_gate(const Gate& gate, QubitState state) {
    const int q = state.q;
    auto& amps = state.amps;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (gate.kind) {
        case GateKind::H:
            apply_1q(amps, qubit_mask(q, gate.target), inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2);
            break;
        case GateKind::PhaseShift: {
            const cplx ph{std::cos(gate.angle), std::sin(gate.angle)};
            const std::size_t mask = qubit_mask(q, gate.target);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & mask) amps[i] *= ph;
            }
            break;
        }
        case GateKind::ControlledPhase: {
            const cplx ph{std::cos(gate.angle), std::sin(gate.angle)};
            const std::size_t both = qubit_mask(q, gate.target) | qubit_mask(q, gate.control);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if ((i & both) == both) amps[i] *= ph;
            }
            break;
        }
        case GateKind::Swap: {
            const std::size_t ma = qubit_mask(q, gate.target);
            const std::size_t mb = qubit_mask(q, gate.control);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if ((i & ma) && !(i & mb)) std::swap(amps[i], amps[(i ^ ma) | mb]);
            }
            break;
        }
        case GateKind::Ry: {
            const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
            apply_1q(amps, qubit_mask(q, gate.target), c, -s, s, c);
            break;
        }
        case GateKind::ControlledRy: {
            const double c = std::cos(gate.angle / 2.0), s = std::sin(gate.angle / 2.0);
            apply_1q(amps, qubit_mask(q, gate.target), c, -s, s, c,
                     qubit_mask(q, gate.control));
            break;
        }
        case GateKind::Z: {
            const std::size_t mask = qubit_mask(q, gate.target);
            for (std::size_t i = 0; i < amps.size(); ++i) {
                if (i & mask) amps[i] = -amps[i];
            }
            break;
        }
        case GateKind::X:
            apply_1q(amps, qubit_mask(q, gate.target), 0.0, 1.0, 1.0, 0.0);
            break;
        case GateKind::UnitaryBlock: {
            const int m = static_cast<int>(gate.targets.size());
            const std::size_t bdim = std::size_t{1} << m;
            std::vector<std::size_t> masks(m);
            std::size_t all = 0;
            for (int i = 0; i < m; ++i) {
                masks[i] = qubit_mask(q, gate.targets[i]);
                all |= masks[i];
            }
            const auto& U = *gate.matrix;
            std::vector<cplx> in(bdim), out(bdim);
            std::vector<std::size_t> addr(bdim);
            for (std::size_t c = 0; c < bdim; ++c) {
                std::size_t a = 0;
                for (int i = 0; i < m; ++i) {
                    if (c & (std::size_t{1} << (m - 1 - i))) a |= masks[i];
                }
                addr[c] = a;
            }
            for (std::size_t base = 0; base < amps.size(); ++base) {
                if (base & all) continue;
                for (std::size_t c = 0; c < bdim; ++c) in[c] = amps[base | addr[c]];
                for (std::size_t r = 0; r < bdim; ++r) {
                    cplx acc{0.0, 0.0};
                    const cplx* row = &U[r * bdim];
                    for (std::size_t c = 0; c < bdim; ++c) acc += row[c] * in[c];
                    out[r] = acc;
                }
                for (std::size_t r = 0; r < bdim; ++r) amps[base | addr[r]] = out[r];
            }
            break;
        }
    }
    return state;
}

QubitState apply(const Circuit& circuit, QubitState state) {
    apply_in_place(circuit, state);
    return state;
}

void apply_in_place(const Circuit& circuit, QubitState& state) {
    if (state.dim() != (std::size_t{1} << circuit.q)) {
        throw ShapeError("state dimension does not match circuit qubit count");
    }
    for (const Gate& g : circuit.gates) {
        state = apply_gate(g, std::move(state));
    }
}

Circuit qft_circuit(int n) {
    if (n < 1) throw ValidationError("qft_circuit requires n >= 1");
    Circuit c(n, "qft_n" + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        c.h(i);
        for (int k = i + 1; k < n; ++k) {
            c.cphase(k, i, kPi / static_cast<double>(std::size_t{1} << (k - i)));
        }
    }
    for (int i = 0; i < n / 2; ++i) c.swap(i, n - 1 - i);
    return c;
}

Circuit qft_tensor_circuit(int n, int d) {
    if (n < 1 || d < 1) throw ValidationError("qft_tensor_circuit requires n, d >= 1");
    Circuit c(n * d, "qft_n" + std::to_string(n) + "_d" + std::to_string(d));
    const Circuit single = qft_circuit(n);
    for (int r = 0; r < d; ++r) {
        for (Gate g : single.gates) {
            if (g.target >= 0) g.target += r * n;
            if (g.control >= 0) g.control += r * n;
            c.gates.push_back(std::move(g));
        }
    }
    return c;
}

PreparedState prepare_amplitude_state(const Field& f) {
    const double nrm = f.norm();
    if (nrm == 0.0) throw DegenerateInputError("cannot amplitude-encode the zero field");
    QubitState s;
    s.q = f.grid.register_bits();
    s.amps.resize(f.values.size());
    for (std::size_t i = 0; i < f.values.size(); ++i) s.amps[i] = f.values[i] / nrm;
    return PreparedState{std::move(s), nrm};
}

ResourceReport resources(const Circuit& circuit) {
    ResourceReport r;
    std::vector<int> layer(circuit.q, 0);
    for (const Gate& g : circuit.gates) {
        ++r.gate_counts[kind_name(g.kind)];
        ++r.total_gates;
        int lay = 0;
        const auto qs = involved_qubits(g);
        for (int qb : qs) lay = std::max(lay, layer[qb]);
        ++lay;
        for (int qb : qs) layer[qb] = lay;
        r.depth = std::max(r.depth, lay);
    }
    return r;
}

std::vector<cplx> dense_unitary(const Circuit& circuit) {
    if (circuit.q > kDenseCeiling) {
        throw ValidationError("dense_unitary limited to " + std::to_string(kDenseCeiling) +
                              " qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.q;
    std::vector<cplx> U(dim * dim);
    for (std::size_t col = 0; col < dim; ++col) {
        QubitState s = apply(circuit, QubitState::basis(circuit.q, col));
        for (std::size_t row = 0; row < dim; ++row) U[row * dim + col] = s.amps[row];
    }
    return U;
}

}  // namespace specq
