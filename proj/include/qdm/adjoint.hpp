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
 * Analytic loss gradients via one forward and one reverse sweep through the
 * gate program (adjoint method, O(gates * 2^n) total).
 */
#pragma once

#include <optional>
#include <span>

#include "qdm/circuits.hpp"
#include "qdm/encoding.hpp"

namespace qdm {

struct LossGradient {
    double loss = 0.0;
    Eigen::VectorXd grad;
};

/// Mean-squared-error loss between the decoded program output and target,
/// differentiated with respect to every trainable angle slot. input must be
/// unit-norm and target lives in the same unit-norm pixel space. The
/// 1/sqrt(p) decode factor is floored at sqrt(p + 1e-12) inside the
/// gradient only.
LossGradient loss_and_gradient(const CircuitSpec &spec, const Eigen::VectorXd &angles,
                               const ImageTensor &input, const ImageTensor &target,
                               int t, int total_timesteps,
                               std::optional<int> label = std::nullopt);

/// Same evaluation for a prebuilt program; exposed for oracle tests that
/// drive ad-hoc gate lists.
LossGradient program_loss_and_gradient(std::span<const GateOp> program,
                                       int num_param_slots,
                                       const Eigen::VectorXd &angles,
                                       const StateVector<double> &initial_state,
                                       const ImageTensor &target);

/// Loss only, following the exact arithmetic of loss_and_gradient.
double program_loss(std::span<const GateOp> program, const Eigen::VectorXd &angles,
                    const StateVector<double> &initial_state,
                    const ImageTensor &target);

} // namespace qdm
