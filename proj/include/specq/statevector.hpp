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

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "specq/lattice.hpp"

namespace specq {

// Bit convention: qubit 0 is the circuit-top qubit and the most significant
// bit of the basis index, so a register prepared from a Field keeps the
// Field's flat layout (axis 1 most significant).

/// Dense state over q qubits.
struct QubitState {
    int q = 0;
    std::vector<cplx> amps;

    static QubitState zero(int q);
    static QubitState basis(int q, std::size_t index);

    std::size_t dim() const { return std::size_t{1} << q; }
    double norm() const;
};

enum class GateKind { H, PhaseShift, ControlledPhase, Swap, Ry, ControlledRy, Z, X, UnitaryBlock };

struct Gate {
    GateKind kind = GateKind::H;
    int target = -1;
    int control = -1;   // second qubit for Swap
    double angle = 0.0;
    std::vector<int> targets;                      // UnitaryBlock only
    std::shared_ptr<const std::vector<cplx>> matrix;  // UnitaryBlock only, row-major
};

struct Circuit {
    int q = 0;
    std::string label;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int q_, std::string label_ = "") : q(q_), label(std::move(label_)) {}

    Circuit& h(int t);
    Circuit& phase(int t, double angle);
    Circuit& cphase(int control, int t, double angle);
    Circuit& swap(int a, int b);
    Circuit& ry(int t, double angle);
    Circuit& cry(int control, int t, double angle);
    Circuit& z(int t);
    Circuit& x(int t);
    /// Dense unitary on the listed qubits (targets[0] = most significant bit
    /// of the block row index). Validated unitary at insertion.
    Circuit& unitary(std::vector<int> targets, std::vector<cplx> matrix);

    Circuit inverse() const;
    /// Same gates re-targeted at qubits [offset, offset + q) of a wider circuit.
    Circuit embedded(int new_q, int offset) const;
    std::string to_text() const;
};

QubitState apply_gate(const Gate& gate, QubitState state);
QubitState apply(const Circuit& circuit, QubitState state);
void apply_in_place(const Circuit& circuit, QubitState& state);

/// Standard QFT synthesis: H + controlled-phase ladder + final swap layer.
/// Dense matrix equals F_N with omega = exp(+2*pi*i/N), natural bit order.
Circuit qft_circuit(int n);

/// d parallel QFTs on disjoint n-qubit registers.
Circuit qft_tensor_circuit(int n, int d);

struct PreparedState {
    QubitState state;
    double scale;  // ||f|| removed by normalization
};

/// Amplitude encoding of a field on d*n qubits.
PreparedState prepare_amplitude_state(const Field& f);

struct ResourceReport {
    std::map<std::string, int> gate_counts;
    int total_gates = 0;
    int depth = 0;  // greedy layering, disjoint qubits share a layer
    int ancilla_count = 0;
};

ResourceReport resources(const Circuit& circuit);

/// Column-by-column dense matrix of the circuit (2^q x 2^q, row-major).
/// Intended for tests; guarded against large q.
std::vector<cplx> dense_unitary(const Circuit& circuit);

}  // namespace specq
