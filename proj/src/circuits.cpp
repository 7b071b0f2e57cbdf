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

#include "qdm/circuits.hpp"

#include <numbers>

namespace qdm {

void validate(const CircuitSpec &spec) {
    if (spec.data_qubits < 2) {
        throw ConfigError("data_qubits must be at least 2");
    }
    if (spec.layout == Layout::EEQDM && spec.data_qubits % 2 != 0) {
        throw ConfigError("EEQDM requires an even data-qubit count");
    }
    if (spec.depth < 1) {
        throw ConfigError("depth must be at least 1");
    }
}

int param_count(const CircuitSpec &spec) {
    validate(spec);
    const int acted = spec.layout == Layout::EEQDM ? spec.data_qubits / 2 + 1
                                                   : spec.data_qubits + 1;
    return 3 * spec.depth * acted;
}

std::vector<int> acted_qubits(const CircuitSpec &spec) {
    validate(spec);
    const int half = spec.layout == Layout::EEQDM ? spec.data_qubits / 2
                                                  : spec.data_qubits;
    std::vector<int> qubits;
    qubits.reserve(static_cast<std::size_t>(half) + 1);
    for (int q = 0; q < half; ++q) {
        qubits.push_back(q);
    }
    qubits.push_back(spec.ancilla());
    return qubits;
}

std::vector<GateOp> build_entanglement_stage(const CircuitSpec &spec) {
    validate(spec);
    if (spec.layout != Layout::EEQDM) {
        throw ConfigError("entanglement stage is defined for EEQDM only");
    }
    const int half = spec.data_qubits / 2;
    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(spec.data_qubits));
    for (int i = 0; i < half; ++i) {
        gates.push_back(GateOp::h(i));
    }
    for (int i = 0; i < half; ++i) {
        gates.push_back(GateOp::cnot(i, i + half));
    }
    return gates;
}

std::vector<GateOp> build_pqc_stage(const CircuitSpec &spec) {
    const std::vector<int> acted = acted_qubits(spec);
    const int width = static_cast<int>(acted.size());
    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(spec.depth) *
                  static_cast<std::size_t>(4 * width));
    int slot = 0;
    for (int layer = 0; layer < spec.depth; ++layer) {
        for (int q : acted) {
            gates.push_back(GateOp::rz(q, slot++));
            gates.push_back(GateOp::ry(q, slot++));
            gates.push_back(GateOp::rz(q, slot++));
        }
        if (width >= 2) {
            for (int j = 0; j < width; ++j) {
                gates.push_back(GateOp::cnot(acted[j], acted[(j + 1) % width]));
            }
        }
    }
    return gates;
}

double time_embedding_angle(int t, int total_timesteps) {
    return std::numbers::pi * static_cast<double>(t) /
           static_cast<double>(total_timesteps);
}

double label_embedding_angle(int label) {
    return 2.0 * std::numbers::pi * static_cast<double>(label) /
           static_cast<double>(kNumClasses);
}

std::vector<GateOp> build_full_program(const CircuitSpec &spec, int t,
                                       int total_timesteps,
                                       std::optional<int> label) {
    validate(spec);
    if (total_timesteps < 1) {
        throw ConfigError("total_timesteps must be at least 1");
    }
    if (t < 1 || t > total_timesteps) {
        throw ConfigError("timestep out of range");
    }
    if (label && (*label < 0 || *label >= kNumClasses)) {
        throw ConfigError("label out of range");
    }
    std::vector<GateOp> gates;
    if (spec.has_time_embedding) {
        gates.push_back(
            GateOp::ry_fixed(spec.ancilla(), time_embedding_angle(t, total_timesteps)));
    }
    if (label) {
        gates.push_back(GateOp::ry_fixed(spec.ancilla(), label_embedding_angle(*label)));
    }
    if (spec.layout == Layout::EEQDM) {
        const std::vector<GateOp> stage = build_entanglement_stage(spec);
        gates.insert(gates.end(), stage.begin(), stage.end());
    }
    const std::vector<GateOp> pqc = build_pqc_stage(spec);
    gates.insert(gates.end(), pqc.begin(), pqc.end());
    return gates;
}

} // namespace qdm
