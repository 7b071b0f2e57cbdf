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

#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "qdm/errors.hpp"

namespace qdm::test {

namespace {

using Complex = std::complex<double>;

ComplexMatrixd identity(Eigen::Index dim) {
    return ComplexMatrixd::Identity(dim, dim);
}

// 2x2 matrix of a single-qubit gate, angles resolved like the kernel does.
ComplexMatrixd single_qubit_matrix(const GateOp &gate, const Eigen::VectorXd &angles) {
    ComplexMatrixd m(2, 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (gate.kind) {
    case GateKind::H:
        m << Complex{inv_sqrt2, 0}, Complex{inv_sqrt2, 0}, Complex{inv_sqrt2, 0},
            Complex{-inv_sqrt2, 0};
        return m;
    case GateKind::RX: {
        const double theta = gate_angle<double>(gate, angles);
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        m << Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0};
        return m;
    }
    case GateKind::RY: {
        const double theta = gate_angle<double>(gate, angles);
        const double c = std::cos(theta / 2.0);
        const double s = std::sin(theta / 2.0);
        m << Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0};
        return m;
    }
    case GateKind::RZ: {
        const double theta = gate_angle<double>(gate, angles);
        m << std::exp(Complex{0, -theta / 2.0}), Complex{0, 0}, Complex{0, 0},
            std::exp(Complex{0, theta / 2.0});
        return m;
    }
    case GateKind::CNOT:
        break;
    }
    throw StructuralError("not a single-qubit gate");
}

// Full-register matrix of one gate. Qubit 0 is the least-significant index
// bit, so the target factor sits at the low end of the Kronecker chain.
ComplexMatrixd gate_matrix(const GateOp &gate, const Eigen::VectorXd &angles,
                           int num_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    if (gate.kind == GateKind::CNOT) {
        ComplexMatrixd m = ComplexMatrixd::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            Eigen::Index j = i;
            if ((i >> gate.control) & 1) {
                j = i ^ (Eigen::Index{1} << gate.target);
            }
            m(j, i) = Complex{1, 0};
        }
        return m;
    }
    const Eigen::Index low = Eigen::Index{1} << gate.target;
    const Eigen::Index high = dim / (2 * low);
    return kron(identity(high), kron(single_qubit_matrix(gate, angles), identity(low)));
}

// dL/dp for the decode-then-MSE pipeline, matching the production floor.
Eigen::VectorXd loss_prob_partials(const Eigen::VectorXd &probs,
                                   const ImageTensor &target) {
    const Eigen::Index npix = target.pixels.size();
    Eigen::VectorXd partials = Eigen::VectorXd::Zero(probs.size());
    for (Eigen::Index i = 0; i < npix; ++i) {
        const double r = std::sqrt(probs[i]);
        partials[i] = (r - target.pixels[i]) /
                      (static_cast<double>(npix) * std::sqrt(probs[i] + 1e-12));
    }
    return partials;
}

Eigen::VectorXd program_probs(std::span<const GateOp> program,
                              const Eigen::VectorXd &angles,
                              const StateVector<double> &initial_state) {
    StateVector<double> state = initial_state;
    apply_circuit_in_place(state, program, angles);
    std::vector<int> keep(static_cast<std::size_t>(state.num_qubits - 1));
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = static_cast<int>(i);
    }
    return marginal_probabilities(state, keep);
}

using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

LongMatrix psd_sqrt_long(const LongMatrix &m) {
    Eigen::SelfAdjointEigenSolver<LongMatrix> solver(m);
    LongVector roots = solver.eigenvalues().cwiseMax(LongVector::Zero(m.rows()));
    roots = roots.cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() * solver.eigenvectors().transpose();
}

} // namespace

ComplexMatrixd kron(const ComplexMatrixd &a, const ComplexMatrixd &b) {
    ComplexMatrixd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

ComplexMatrixd circuit_unitary_oracle(std::span<const GateOp> gates,
                                      const Eigen::VectorXd &angles, int num_qubits) {
    if (num_qubits > 5) {
        throw StructuralError("dense oracle refuses more than 5 qubits");
    }
    if (num_qubits < 1) {
        throw StructuralError("dense oracle needs at least 1 qubit");
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    ComplexMatrixd product = identity(dim);
    for (const GateOp &gate : gates) {
        product = gate_matrix(gate, angles, num_qubits) * product;
    }
    return product;
}

Eigen::VectorXd marginal_oracle(const StateVector<double> &state,
                                std::span<const int> keep_qubits) {
    Eigen::VectorXd probs =
        Eigen::VectorXd::Zero(Eigen::Index{1} << keep_qubits.size());
    for (std::size_t basis = 0; basis < state.dim(); ++basis) {
        std::size_t pattern = 0;
        for (std::size_t k = 0; k < keep_qubits.size(); ++k) {
            pattern |= ((basis >> keep_qubits[k]) & 1u) << k;
        }
        probs[static_cast<Eigen::Index>(pattern)] += std::norm(state.amplitudes[basis]);
    }
    return probs;
}

Eigen::VectorXd fd_gradient(std::span<const GateOp> program, int num_param_slots,
                            const Eigen::VectorXd &angles,
                            const StateVector<double> &initial_state,
                            const ImageTensor &target, double h) {
    Eigen::VectorXd grad(num_param_slots);
    for (int s = 0; s < num_param_slots; ++s) {
        Eigen::VectorXd shifted = angles;
        shifted[s] = angles[s] + h;
        const double up = program_loss(program, shifted, initial_state, target);
        shifted[s] = angles[s] - h;
        const double down = program_loss(program, shifted, initial_state, target);
        grad[s] = (up - down) / (2.0 * h);
    }
    return grad;
}

Eigen::VectorXd parameter_shift_gradient(std::span<const GateOp> program,
                                         int num_param_slots,
                                         const Eigen::VectorXd &angles,
                                         const StateVector<double> &initial_state,
                                         const ImageTensor &target) {
    const Eigen::VectorXd probs = program_probs(program, angles, initial_state);
    const Eigen::VectorXd partials = loss_prob_partials(probs, target);
    const double half_pi = std::acos(0.0);
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(num_param_slots);
    for (int s = 0; s < num_param_slots; ++s) {
        Eigen::VectorXd shifted = angles;
        shifted[s] = angles[s] + half_pi;
        const Eigen::VectorXd up = program_probs(program, shifted, initial_state);
        shifted[s] = angles[s] - half_pi;
        const Eigen::VectorXd down = program_probs(program, shifted, initial_state);
        grad[s] = partials.dot((up - down) / 2.0);
    }
    return grad;
}

double frechet_oracle(const FeatureStats &real_stats, const FeatureStats &gen_stats) {
    const LongMatrix sr = real_stats.covariance.cast<long double>();
    const LongMatrix sg = gen_stats.covariance.cast<long double>();
    const LongVector diff =
        (real_stats.mean - gen_stats.mean).cast<long double>();
    const LongMatrix root_g = psd_sqrt_long(sg);
    const LongMatrix inner = psd_sqrt_long(root_g * sr * root_g);
    const long double value =
        diff.squaredNorm() + (sr + sg).trace() - 2.0L * inner.trace();
    return static_cast<double>(std::max(value, 0.0L));
}

KsResult two_sample_ks(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0;
    std::size_t ib = 0;
    while (ia < a.size() && ib < b.size()) {
        if (a[ia] <= b[ib]) {
            ++ia;
        } else {
            ++ib;
        }
        d = std::max(d, std::abs(static_cast<double>(ia) / na -
                                 static_cast<double>(ib) / nb));
    }
    const double ne = na * nb / (na + nb);
    const double lambda = (std::sqrt(ne) + 0.12 + 0.11 / std::sqrt(ne)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = 2.0 * std::exp(-2.0 * k * k * lambda * lambda);
        p += (k % 2 == 1) ? term : -term;
    }
    return {d, std::clamp(p, 0.0, 1.0)};
}

StateVector<double> random_state(RngStream &rng, int num_qubits) {
    StateVector<double> state(num_qubits);
    for (std::size_t i = 0; i < state.dim(); ++i) {
        state.amplitudes[i] = Complex{rng.gaussian(), rng.gaussian()};
    }
    state.amplitudes /= state.amplitudes.norm();
    return state;
}

ImageTensor random_image(RngStream &rng, int width, int height, double lo, double hi) {
    ImageTensor image;
    image.width = width;
    image.height = height;
    image.pixels.resize(Eigen::Index{width} * height);
    for (Eigen::Index i = 0; i < image.pixels.size(); ++i) {
        image.pixels[i] = lo + (hi - lo) * rng.uniform();
    }
    return image;
}

std::vector<GateOp> random_program(RngStream &rng, int num_qubits, int depth,
                                   int *num_slots) {
    std::vector<GateOp> program;
    int slots = 0;
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < num_qubits; ++q) {
            switch (rng.uniform_int(5)) {
            case 0:
                program.push_back(GateOp::h(q));
                break;
            case 1:
                if (num_qubits > 1) {
                    int other = static_cast<int>(rng.uniform_int(
                        static_cast<std::uint64_t>(num_qubits - 1)));
                    if (other >= q) {
                        ++other;
                    }
                    program.push_back(GateOp::cnot(q, other));
                }
                break;
            case 2:
                program.push_back(GateOp::rx(q, slots++));
                break;
            case 3:
                program.push_back(GateOp::ry(q, slots++));
                break;
            default:
                program.push_back(GateOp::rz(q, slots++));
                break;
            }
        }
    }
    *num_slots = slots;
    return program;
}

} // namespace qdm::test
