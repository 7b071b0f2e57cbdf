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
 * Dense statevector of a qubit register. Qubit 0 is the least-significant
 * bit of the basis-state index throughout the library.
 */
#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "qdm/errors.hpp"

namespace qdm {

template <typename Scalar> using RealVector = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <typename Scalar>
using ComplexVector = Eigen::Vector<std::complex<Scalar>, Eigen::Dynamic>;
template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double> struct StateVector {
    using Complex = std::complex<Scalar>;
    using Amplitudes = ComplexVector<Scalar>;

    int num_qubits = 0;
    Amplitudes amplitudes;

    StateVector() = default;

    /// Ground state |0...0> on `qubits` qubits.
    explicit StateVector(int qubits)
        : num_qubits(qubits),
          amplitudes(Amplitudes::Zero(std::size_t{1} << check_qubits(qubits))) {
        amplitudes[0] = Complex{1, 0};
    }

    StateVector(int qubits, Amplitudes amps)
        : num_qubits(qubits), amplitudes(std::move(amps)) {
        check_qubits(qubits);
        if (amplitudes.size() != Eigen::Index(std::size_t{1} << qubits)) {
            throw StructuralError("amplitude array length must be 2^num_qubits");
        }
    }

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes.size()); }

  private:
    static int check_qubits(int qubits) {
        if (qubits < 1 || qubits > 30) {
            throw StructuralError("num_qubits must be in [1, 30]");
        }
        return qubits;
    }
};

/// Basis state |index> on `num_qubits` qubits.
template <typename Scalar = double>
StateVector<Scalar> basis_state(int num_qubits, std::size_t index) {
    StateVector<Scalar> state(num_qubits);
    if (index >= state.dim()) {
        throw StructuralError("basis-state index exceeds register dimension");
    }
    state.amplitudes[0] = std::complex<Scalar>{0, 0};
    state.amplitudes[static_cast<Eigen::Index>(index)] = std::complex<Scalar>{1, 0};
    return state;
}

template <typename Scalar> Scalar state_norm(const StateVector<Scalar> &state) {
    return state.amplitudes.norm();
}

/// |<a|b>|^2 of two states on the same register.
template <typename Scalar>
Scalar fidelity(const StateVector<Scalar> &a, const StateVector<Scalar> &b) {
    if (a.num_qubits != b.num_qubits) {
        throw StructuralError("fidelity requires equal register sizes");
    }
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

} // namespace qdm
