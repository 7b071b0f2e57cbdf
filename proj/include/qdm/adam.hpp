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
 * Adam optimizer with bias correction.
 */
#pragma once

#include <Eigen/Core>

#include "qdm/errors.hpp"

namespace qdm {

struct AdamState {
    int step = 0;
    double learning_rate = 0.1;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    Eigen::VectorXd first_moment;
    Eigen::VectorXd second_moment;

    static AdamState init(Eigen::Index dim, double learning_rate) {
        AdamState state;
        state.learning_rate = learning_rate;
        state.first_moment = Eigen::VectorXd::Zero(dim);
        state.second_moment = Eigen::VectorXd::Zero(dim);
        return state;
    }
};

/// One Adam update: moments decay toward the gradient, bias-corrected
/// estimates drive the parameter step. Throws StructuralError on length
/// mismatch.
void adam_step(AdamState &state, Eigen::VectorXd &params, const Eigen::VectorXd &grad);

} // namespace qdm
