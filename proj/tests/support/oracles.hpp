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
 * Brute-force reference implementations used only by tests. Everything here
 * recomputes results through a route independent of the library kernels:
 * dense Kronecker products instead of pairwise amplitude updates, explicit
 * basis-state summation instead of strided marginals, finite differences and
 * parameter shifts instead of the adjoint sweep, and extended-precision
 * eigensolves for the Frechet matrix square root.
 */
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qdm/adjoint.hpp"
#include "qdm/encoding.hpp"
#include "qdm/gates.hpp"
#include "qdm/metrics.hpp"
#include "qdm/rng.hpp"
#include "qdm/state_vector.hpp"

namespace qdm::test {

using ComplexMatrixd = ComplexMatrix<double>;

/// Kronecker product, row-major convention: (A kron B)(ia*rb+ib, ja*cb+jb).
ComplexMatrixd kron(const ComplexMatrixd &a, const ComplexMatrixd &b);

/// Dense 2^n x 2^n matrix of the whole circuit via Kronecker expansion.
/// Refuses num_qubits > 5 (exponential by design).
ComplexMatrixd circuit_unitary_oracle(std::span<const GateOp> gates,
                                      const Eigen::VectorXd &angles, int num_qubits);

/// Marginal distribution over keep_qubits by summing |amp|^2 over every
/// basis state of the register, one at a time.
Eigen::VectorXd marginal_oracle(const StateVector<double> &state,
                                std::span<const int> keep_qubits);

/// Central finite differences of program_loss, step h per slot.
Eigen::VectorXd fd_gradient(std::span<const GateOp> program, int num_param_slots,
                            const Eigen::VectorXd &angles,
                            const StateVector<double> &initial_state,
                            const ImageTensor &target, double h = 1e-5);

/// Parameter-shift gradient: dp_i/dtheta from +-pi/2 shifts (exact for
/// Pauli-generated rotations), chained through the analytic dL/dp_i.
Eigen::VectorXd parameter_shift_gradient(std::span<const GateOp> program,
                                         int num_param_slots,
                                         const Eigen::VectorXd &angles,
                                         const StateVector<double> &initial_state,
                                         const ImageTensor &target);

/// Frechet distance recomputed in long double with the square root taken on
/// the generated-side symmetrization sqrt(Sg) Sr sqrt(Sg), no ridge.
double frechet_oracle(const FeatureStats &real_stats, const FeatureStats &gen_stats);

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic p-value.
KsResult two_sample_ks(std::vector<double> a, std::vector<double> b);

/// Uniformly random unit-norm state on num_qubits qubits.
StateVector<double> random_state(RngStream &rng, int num_qubits);

/// Image with pixels drawn uniform from [lo, hi).
ImageTensor random_image(RngStream &rng, int width, int height, double lo = 0.0,
                         double hi = 1.0);

/// Random gate list over num_qubits with depth layers; rotation angles take
/// consecutive slots, returned count in *num_slots.
std::vector<GateOp> random_program(RngStream &rng, int num_qubits, int depth,
                                   int *num_slots);

} // namespace qdm::test
