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
 * Gate program representation and exact unitary application.
 *
 * Gates update disjoint amplitude pairs with stride 2^target; no gate ever
 * materialises a full matrix. The dense-matrix route lives in the test
 * support code only.
 */
#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "qdm/state_vector.hpp"

namespace qdm {

enum class GateKind { H, CNOT, RX, RY, RZ };

/// One gate of a program. Rotation gates either reference a trainable
/// angle slot or carry a fixed embedding angle (angle_slot < 0).
struct GateOp {
    GateKind kind = GateKind::H;
    int target = 0;
    int control = -1;    // CNOT only
    int angle_slot = -1; // index into the angle vector; -1 = fixed angle
    double fixed_angle = 0.0;

    bool has_control() const { return control >= 0; }
    bool is_rotation() const {
        return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ;
    }
    bool is_trainable() const { return angle_slot >= 0; }

    static GateOp h(int target) { return {GateKind::H, target}; }
    static GateOp cnot(int control, int target) {
        return {GateKind::CNOT, target, control};
    }
    static GateOp rx(int target, int slot) { return {GateKind::RX, target, -1, slot}; }
    static GateOp ry(int target, int slot) { return {GateKind::RY, target, -1, slot}; }
    static GateOp rz(int target, int slot) { return {GateKind::RZ, target, -1, slot}; }
    static GateOp ry_fixed(int target, double angle) {
        return {GateKind::RY, target, -1, -1, angle};
    }
};

namespace detail {

template <typename Scalar>
void check_qubit(const StateVector<Scalar> &state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits) {
        throw StructuralError("gate qubit index out of range");
    }
}

/// In-place 2x2 unitary on `target`; touches each amplitude pair once.
template <typename Scalar>
void apply_two_amplitude_unitary(StateVector<Scalar> &state, int target,
                                 std::complex<Scalar> u00, std::complex<Scalar> u01,
                                 std::complex<Scalar> u10, std::complex<Scalar> u11) {
    const std::size_t stride = std::size_t{1} << target;
    const std::size_t dim = state.dim();
    auto &amp = state.amplitudes;
    for (std::size_t block = 0; block < dim; block += 2 * stride) {
        for (std::size_t low = block; low < block + stride; ++low) {
            const auto a = amp[static_cast<Eigen::Index>(low)];
            const auto b = amp[static_cast<Eigen::Index>(low + stride)];
            amp[static_cast<Eigen::Index>(low)] = u00 * a + u01 * b;
            amp[static_cast<Eigen::Index>(low + stride)] = u10 * a + u11 * b;
        }
    }
}

template <typename Scalar>
void apply_cnot(StateVector<Scalar> &state, int control, int target) {
    const std::size_t cmask = std::size_t{1} << control;
    const std::size_t tmask = std::size_t{1} << target;
    const std::size_t dim = state.dim();
    auto &amp = state.amplitudes;
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cmask) != 0 && (i & tmask) == 0) {
            std::swap(amp[static_cast<Eigen::Index>(i)],
                      amp[static_cast<Eigen::Index>(i | tmask)]);
        }
    }
}

} // namespace detail

/// Angle a gate resolves to against a parameter vector.
template <typename Scalar>
Scalar gate_angle(const GateOp &gate, const RealVector<Scalar> &angles) {
    if (!gate.is_rotation()) {
        return Scalar{0};
    }
    if (gate.angle_slot < 0) {
        return static_cast<Scalar>(gate.fixed_angle);
    }
    if (gate.angle_slot >= angles.size()) {
        throw StructuralError("angle slot exceeds parameter vector length");
    }
    return angles[gate.angle_slot];
}

template <typename Scalar>
void apply_gate_in_place(StateVector<Scalar> &state, const GateOp &gate,
                         const RealVector<Scalar> &angles) {
    using Complex = std::complex<Scalar>;
    detail::check_qubit(state, gate.target);
    switch (gate.kind) {
    case GateKind::H: {
        const Scalar s = Scalar{1} / std::sqrt(Scalar{2});
        detail::apply_two_amplitude_unitary<Scalar>(state, gate.target, Complex{s, 0},
                                                    Complex{s, 0}, Complex{s, 0},
                                                    Complex{-s, 0});
        break;
    }
    case GateKind::CNOT: {
        if (!gate.has_control()) {
            throw StructuralError("CNOT requires a control qubit");
        }
        detail::check_qubit(state, gate.control);
        if (gate.control == gate.target) {
            throw StructuralError("CNOT control and target must differ");
        }
        detail::apply_cnot(state, gate.control, gate.target);
        break;
    }
    case GateKind::RX: {
        const Scalar half = gate_angle<Scalar>(gate, angles) / Scalar{2};
        const Scalar c = std::cos(half);
        const Scalar s = std::sin(half);
        detail::apply_two_amplitude_unitary<Scalar>(state, gate.target, Complex{c, 0},
                                                    Complex{0, -s}, Complex{0, -s},
                                                    Complex{c, 0});
        break;
    }
    case GateKind::RY: {
        const Scalar half = gate_angle<Scalar>(gate, angles) / Scalar{2};
        const Scalar c = std::cos(half);
        const Scalar s = std::sin(half);
        detail::apply_two_amplitude_unitary<Scalar>(state, gate.target, Complex{c, 0},
                                                    Complex{-s, 0}, Complex{s, 0},
                                                    Complex{c, 0});
        break;
    }
    case GateKind::RZ: {
        const Scalar half = gate_angle<Scalar>(gate, angles) / Scalar{2};
        const Complex phase0{std::cos(half), -std::sin(half)};
        const Complex phase1{std::cos(half), std::sin(half)};
        detail::apply_two_amplitude_unitary<Scalar>(state, gate.target, phase0,
                                                    Complex{0, 0}, Complex{0, 0},
                                                    phase1);
        break;
    }
    }
}

/// Inverse gate: H and CNOT are self-inverse, rotations negate the angle.
template <typename Scalar>
void apply_gate_inverse_in_place(StateVector<Scalar> &state, const GateOp &gate,
                                 const RealVector<Scalar> &angles) {
    if (!gate.is_rotation()) {
        apply_gate_in_place(state, gate, angles);
        return;
    }
    GateOp inverse = gate;
    inverse.fixed_angle = -gate_angle<Scalar>(gate, angles);
    inverse.angle_slot = -1;
    apply_gate_in_place(state, inverse, angles);
}

template <typename Scalar>
StateVector<Scalar> apply_gate(StateVector<Scalar> state, const GateOp &gate,
                               const RealVector<Scalar> &angles) {
    apply_gate_in_place(state, gate, angles);
    return state;
}

template <typename Scalar>
void apply_circuit_in_place(StateVector<Scalar> &state, std::span<const GateOp> gates,
                            const RealVector<Scalar> &angles) {
    for (const GateOp &gate : gates) {
        apply_gate_in_place(state, gate, angles);
    }
}

template <typename Scalar>
StateVector<Scalar> apply_circuit(StateVector<Scalar> state, std::span<const GateOp> gates,
                                  const RealVector<Scalar> &angles) {
    apply_circuit_in_place(state, gates, angles);
    return state;
}

enum class Pauli { X, Y, Z };

/// Generator of each rotation kind, used by the reverse differentiation pass.
inline Pauli rotation_generator(GateKind kind) {
    switch (kind) {
    case GateKind::RX:
        return Pauli::X;
    case GateKind::RY:
        return Pauli::Y;
    case GateKind::RZ:
        return Pauli::Z;
    default:
        throw StructuralError("gate kind has no rotation generator");
    }
}

template <typename Scalar>
void apply_pauli_in_place(StateVector<Scalar> &state, Pauli pauli, int target) {
    using Complex = std::complex<Scalar>;
    detail::check_qubit(state, target);
    switch (pauli) {
    case Pauli::X:
        detail::apply_two_amplitude_unitary<Scalar>(state, target, Complex{0, 0},
                                                    Complex{1, 0}, Complex{1, 0},
                                                    Complex{0, 0});
        break;
    case Pauli::Y:
        detail::apply_two_amplitude_unitary<Scalar>(state, target, Complex{0, 0},
                                                    Complex{0, -1}, Complex{0, 1},
                                                    Complex{0, 0});
        break;
    case Pauli::Z:
        detail::apply_two_amplitude_unitary<Scalar>(state, target, Complex{1, 0},
                                                    Complex{0, 0}, Complex{0, 0},
                                                    Complex{-1, 0});
        break;
    }
}

/// Probabilities of the `keep_qubits` sub-register, remaining qubits traced
/// out. Output index bit p carries the value of keep_qubits[p].
template <typename Scalar>
RealVector<Scalar> marginal_probabilities(const StateVector<Scalar> &state,
                                          std::span<const int> keep_qubits) {
    std::size_t seen = 0;
    for (int qubit : keep_qubits) {
        detail::check_qubit(state, qubit);
        const std::size_t bit = std::size_t{1} << qubit;
        if (seen & bit) {
            throw StructuralError("duplicate qubit index in marginal");
        }
        seen |= bit;
    }
    const std::size_t kept = keep_qubits.size();
    RealVector<Scalar> probs = RealVector<Scalar>::Zero(std::ptrdiff_t{1} << kept);
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        std::size_t out = 0;
        for (std::size_t p = 0; p < kept; ++p) {
            out |= ((i >> keep_qubits[p]) & 1u) << p;
        }
        probs[static_cast<Eigen::Index>(out)] +=
            std::norm(state.amplitudes[static_cast<Eigen::Index>(i)]);
    }
    return probs;
}

} // namespace qdm
