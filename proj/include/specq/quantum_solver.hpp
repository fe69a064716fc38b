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

#include <utility>
#include <vector>

#include "specq/block_encoding.hpp"
#include "specq/spectral.hpp"
#include "specq/statevector.hpp"

namespace specq {

// Full pipeline: |0> ⊗ |f>/||f||  ->  QFT^(⊗d)  ->  encoded filter  ->
// inverse QFT^(⊗d)  ->  post-select ancilla |0>  ->  rescale by alpha*||f||.
// The ancilla is the circuit-top qubit (qubit 0).

struct QuantumSolveResult {
    Field u_quant;            // physically rescaled solution
    double success_prob = 0;  // squared norm of the ancilla-|0> branch
    double source_norm = 0;   // ||f|| undone by the rescaling
    double alpha = 0;         // encoding normalization undone by the rescaling
    ResourceReport resources;
};

/// Unnormalized ancilla-|0> branch and its squared norm.
std::pair<std::vector<cplx>, double> postselect_ancilla0(const QubitState& state);

QuantumSolveResult solve_quantum(const SpectralFilter& filter, const Field& f, EncodingPath path,
                                 double eps = 1e-8, int t_override = 0);

/// Applies an already-built encoding (used by the diffusion driver, which
/// reuses one encoding across all steps).
QuantumSolveResult solve_quantum_with_encoding(const SpectralFilter& filter,
                                               const BlockEncoding& encoding, const Field& f);

struct QuantumDiffusionRun {
    DiffusionTrajectory trajectory;
    std::vector<double> success_probs;  // one per step
    ResourceReport resources;
};

/// Implicit Euler driver with classical state update between steps: at each
/// step the field u_n - dt*f is re-prepared and pushed through the quantum
/// filter application. Extracting the state this way costs an exponential
/// number of samples on hardware; here the simulator reads the amplitudes.
QuantumDiffusionRun run_diffusion_quantum(const SpectralFilter& filter, const Field& u0,
                                          const Field& f, int steps, EncodingPath path,
                                          double eps = 1e-8, int t_override = 0);

}  // namespace specq
