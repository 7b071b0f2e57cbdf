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

#include "qdm/adam.hpp"

#include <cmath>

namespace qdm {

void adam_step(AdamState &state, Eigen::VectorXd &params, const Eigen::VectorXd &grad) {
    if (params.size() != grad.size() || params.size() != state.first_moment.size() ||
        params.size() != state.second_moment.size()) {
        throw StructuralError("adam parameter/gradient/moment lengths differ");
    }
    state.step += 1;
    state.first_moment = state.beta1 * state.first_moment + (1.0 - state.beta1) * grad;
    state.second_moment = state.beta2 * state.second_moment +
                          (1.0 - state.beta2) * grad.cwiseProduct(grad);
    const double correction1 = 1.0 - std::pow(state.beta1, state.step);
    const double correction2 = 1.0 - std::pow(state.beta2, state.step);
    const Eigen::VectorXd m_hat = state.first_moment / correction1;
    const Eigen::VectorXd v_hat = state.second_moment / correction2;
    params.array() -= state.learning_rate * m_hat.array() /
                      (v_hat.array().sqrt() + state.epsilon);
}

} // namespace qdm
