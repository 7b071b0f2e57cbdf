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

#include "qdm/adjoint.hpp"

#include <cmath>
#include <vector>

#include "qdm/gates.hpp"

namespace qdm {

namespace {

// Floor inside d(sqrt)/dp only; the loss itself uses the exact sqrt.
constexpr double kGradientProbFloor = 1e-12;

struct DecodedLoss {
    double loss = 0.0;
    Eigen::VectorXd probs;  // data-register marginal, full 2^data length
    Eigen::VectorXd pixels; // sqrt(probs) truncated to the target length
};

DecodedLoss decode_and_score(const StateVector<double> &state,
                             const ImageTensor &target) {
    const Eigen::Index npix = target.pixels.size();
    const int data_qubits = state.num_qubits - 1;
    if (data_qubits < 1 || (Eigen::Index{1} << data_qubits) < npix) {
        throw StructuralError("state too small for the target image");
    }
    std::vector<int> keep(static_cast<std::size_t>(data_qubits));
    for (int q = 0; q < data_qubits; ++q) {
        keep[static_cast<std::size_t>(q)] = q;
    }
    DecodedLoss result;
    result.probs = marginal_probabilities(state, keep);
    result.pixels = result.probs.head(npix).cwiseSqrt();
    result.loss =
        (result.pixels - target.pixels).squaredNorm() / static_cast<double>(npix);
    return result;
}

} // namespace

double program_loss(std::span<const GateOp> program, const Eigen::VectorXd &angles,
                    const StateVector<double> &initial_state,
                    const ImageTensor &target) {
    StateVector<double> psi = initial_state;
    apply_circuit_in_place(psi, program, angles);
    return decode_and_score(psi, target).loss;
}

LossGradient program_loss_and_gradient(std::span<const GateOp> program,
                                       int num_param_slots,
                                       const Eigen::VectorXd &angles,
                                       const StateVector<double> &initial_state,
                                       const ImageTensor &target) {
    if (angles.size() != num_param_slots) {
        throw StructuralError("angle vector length does not match slot count");
    }
    StateVector<double> psi = initial_state;
    apply_circuit_in_place(psi, program, angles);
    const DecodedLoss decoded = decode_and_score(psi, target);

    // lambda_j = dL/d(conj(psi_j)) at the final state: each amplitude is
    // weighted by the residual of the pixel its data bits select.
    const Eigen::Index npix = target.pixels.size();
    const double npix_inv = 1.0 / static_cast<double>(npix);
    const std::size_t data_mask = (std::size_t{1} << (psi.num_qubits - 1)) - 1;
    StateVector<double> lambda;
    lambda.num_qubits = psi.num_qubits;
    lambda.amplitudes.resize(psi.amplitudes.size());
    for (Eigen::Index j = 0; j < psi.amplitudes.size(); ++j) {
        const auto i = static_cast<Eigen::Index>(static_cast<std::size_t>(j) & data_mask);
        if (i < npix) {
            const double weight = (decoded.pixels[i] - target.pixels[i]) * npix_inv /
                                  std::sqrt(decoded.probs[i] + kGradientProbFloor);
            lambda.amplitudes[j] = psi.amplitudes[j] * weight;
        } else {
            lambda.amplitudes[j] = 0.0;
        }
    }

    LossGradient result;
    result.loss = decoded.loss;
    result.grad = Eigen::VectorXd::Zero(num_param_slots);
    // Reverse sweep: at gate k, psi holds the state after k and lambda is
    // pulled back through every later gate; dL/dtheta_k = Im <lambda|P|psi>.
    for (std::size_t k = program.size(); k-- > 0;) {
        const GateOp &gate = program[k];
        if (gate.is_trainable()) {
            StateVector<double> sigma = psi;
            apply_pauli_in_place(sigma, rotation_generator(gate.kind), gate.target);
            result.grad[gate.angle_slot] +=
                std::imag(lambda.amplitudes.dot(sigma.amplitudes));
        }
        apply_gate_inverse_in_place(psi, gate, angles);
        apply_gate_inverse_in_place(lambda, gate, angles);
    }
    return result;
}

LossGradient loss_and_gradient(const CircuitSpec &spec, const Eigen::VectorXd &angles,
                               const ImageTensor &input, const ImageTensor &target,
                               int t, int total_timesteps, std::optional<int> label) {
    if (input.width != target.width || input.height != target.height) {
        throw StructuralError("input and target shapes differ");
    }
    const std::vector<GateOp> program = build_full_program(spec, t, total_timesteps, label);
    const StateVector<double> state =
        amplitude_encode_copy(input, spec.total_qubits());
    return program_loss_and_gradient(program, param_count(spec), angles, state, target);
}

} // namespace qdm
