// Copyright 2026 The qdm developers.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Model layouts expanded into gate programs.
 *
 * EEQDM pairs qubit i with qubit i + n/2 through a Bell stage and trains a
 * PQC on the first half plus the ancilla; the QDDM baseline trains the PQC
 * on every data qubit plus the ancilla. The ancilla is always the
 * highest-index qubit and carries the fixed time/label embedding rotations.
 */
#pragma once

#include <optional>
#include <vector>

#include "qdm/errors.hpp"
#include "qdm/gates.hpp"

namespace qdm {

enum class Layout { EEQDM, QDDM };

inline constexpr int kNumClasses = 10;

struct CircuitSpec {
    Layout layout = Layout::EEQDM;
    int data_qubits = 8; // n, even for EEQDM
    int depth = 1;       // L, number of strongly entangling layers
    bool has_time_embedding = true;

    int total_qubits() const { return data_qubits + 1; }
    int ancilla() const { return data_qubits; }
};

/// Throws ConfigError when the spec violates layout constraints.
void validate(const CircuitSpec &spec);

/// 3L(n/2 + 1) for EEQDM, 3L(n + 1) for QDDM.
int param_count(const CircuitSpec &spec);

/// Qubits the PQC acts on, in ring order (ancilla last).
std::vector<int> acted_qubits(const CircuitSpec &spec);

/// H on 0..n/2-1 then CNOT(i -> i + n/2). EEQDM only.
std::vector<GateOp> build_entanglement_stage(const CircuitSpec &spec);

/// depth layers of per-qubit RZ,RY,RZ triples followed by ring CNOTs over
/// the acted set; angle slots run layer-major, qubit-minor, three per qubit.
std::vector<GateOp> build_pqc_stage(const CircuitSpec &spec);

double time_embedding_angle(int t, int total_timesteps);
double label_embedding_angle(int label);

/// Fixed embeddings, then the entanglement stage (EEQDM), then the PQC.
/// Embedding rotations carry fixed angles and own no trainable slot.
std::vector<GateOp> build_full_program(const CircuitSpec &spec, int t,
                                       int total_timesteps,
                                       std::optional<int> label = std::nullopt);

} // namespace qdm
