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

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "qdm/encoding.hpp"
#include "qdm/errors.hpp"
#include "qdm/gates.hpp"
#include "support/oracles.hpp"

using namespace qdm;

namespace {

ImageTensor make_image(int width, int height, std::initializer_list<double> values) {
    ImageTensor image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const double v : values) {
        image.pixels[i++] = v;
    }
    return image;
}

} // namespace

TEST_CASE("image validation enforces shape and pixel domain") {
    CHECK_NOTHROW(validate(make_image(2, 1, {0.25, 0.5})));
    CHECK_THROWS_AS(validate(make_image(2, 2, {0.1, 0.2})), EncodingError);
    CHECK_THROWS_AS(validate(make_image(2, 1, {-0.1, 0.5})), EncodingError);
    CHECK_THROWS_AS(
        validate(make_image(2, 1, {std::numeric_limits<double>::quiet_NaN(), 0.0})),
        EncodingError);
    CHECK_THROWS_AS(validate(make_image(0, 1, {})), EncodingError);
}

TEST_CASE("data qubit count is the ceiling log of the pixel count") {
    CHECK(data_qubits_for(64) == 6);
    CHECK(data_qubits_for(256) == 8);
    CHECK(data_qubits_for(1024) == 10);
    CHECK(data_qubits_for(1) == 0);
    CHECK(data_qubits_for(3) == 2);
}

TEST_CASE("unit-norm pair encodes unchanged") {
    ImageTensor image = make_image(2, 1, {0.6, 0.8});
    const auto state = amplitude_encode(image, 2);
    CHECK(image.norm_scale == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(state.num_qubits == 2);
    CHECK(state.amplitudes[0].real() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(state.amplitudes[1].real() == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(std::abs(state.amplitudes[2]) == 0.0);
    CHECK(std::abs(state.amplitudes[3]) == 0.0);
    CHECK(std::abs(state_norm(state) - 1.0) <= 1e-12);
}

TEST_CASE("constant image encodes uniformly and records its norm") {
    const double c = 0.3;
    ImageTensor image = make_image(2, 2, {c, c, c, c});
    const auto state = amplitude_encode(image, 3);
    CHECK(image.norm_scale == doctest::Approx(2.0 * c).epsilon(1e-12));
    for (int i = 0; i < 4; ++i) {
        CHECK(state.amplitudes[i].real() == doctest::Approx(0.5).epsilon(1e-12));
    }
    // Ancilla |0>: upper half of the register is empty.
    for (int i = 4; i < 8; ++i) {
        CHECK(std::abs(state.amplitudes[i]) == 0.0);
    }
}

TEST_CASE("a 16x16 image needs eight data qubits plus the ancilla") {
    RngStream rng(3);
    ImageTensor image = test::random_image(rng, 16, 16, 0.01, 1.0);
    const int total = data_qubits_for(image.size()) + 1;
    CHECK(total == 9);
    const auto state = amplitude_encode(image, total);
    CHECK(state.num_qubits == 9);
}

TEST_CASE("encode rejects zero images and undersized registers") {
    ImageTensor zero = make_image(2, 1, {0.0, 0.0});
    CHECK_THROWS_AS(amplitude_encode(zero, 2), EncodingError);
    ImageTensor wide = make_image(4, 2, {1, 1, 1, 1, 1, 1, 1, 1});
    // Eight pixels need three data qubits; two total leaves only two.
    CHECK_THROWS_AS(amplitude_encode(wide, 3), EncodingError);
}

TEST_CASE("decode is the exact inverse of encode for nonnegative images") {
    RngStream rng(17);
    ImageTensor image = test::random_image(rng, 3, 2, 0.0, 1.0);
    const Eigen::VectorXd normalized = image.pixels / image.pixels.norm();
    const auto state = amplitude_encode(image, data_qubits_for(image.size()) + 1);
    const ImageTensor decoded = decode_state(state, 3, 2);
    CHECK(decoded.width == 3);
    CHECK(decoded.height == 2);
    CHECK((decoded.pixels - normalized).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("decode reads sqrt marginals with the ancilla traced out") {
    // Data state (|00>+|11>)/sqrt(2) with ancilla |0>, shape 4x1.
    StateVector<double> state(3);
    state.amplitudes.setZero();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    state.amplitudes[0] = {inv_sqrt2, 0.0};
    state.amplitudes[3] = {inv_sqrt2, 0.0};
    const ImageTensor decoded = decode_state(state, 4, 1);
    CHECK(decoded.pixels[0] == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(decoded.pixels[1] == 0.0);
    CHECK(decoded.pixels[2] == 0.0);
    CHECK(decoded.pixels[3] == doctest::Approx(inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("decode after a random circuit matches the marginal oracle") {
    RngStream rng(23);
    ImageTensor image = test::random_image(rng, 4, 2, 0.01, 1.0);
    const int total = data_qubits_for(image.size()) + 1;
    auto state = amplitude_encode(image, total);

    int slots = 0;
    const auto program = test::random_program(rng, total, 3, &slots);
    Eigen::VectorXd angles(slots);
    rng.fill_gaussian(angles);
    apply_circuit_in_place(state, program, angles);

    const ImageTensor decoded = decode_state(state, 4, 2);
    const std::vector<int> keep = {0, 1, 2};
    const Eigen::VectorXd probs = test::marginal_oracle(state, keep);
    for (Eigen::Index i = 0; i < decoded.pixels.size(); ++i) {
        CHECK(decoded.pixels[i] ==
              doctest::Approx(std::sqrt(probs[i])).epsilon(1e-12));
    }
    CHECK(decoded.pixels.norm() <= 1.0 + 1e-9);
}

TEST_CASE("decode requires enough data qubits for the shape") {
    StateVector<double> state(3);
    CHECK_THROWS_AS(decode_state(state, 4, 2), StructuralError);
}

TEST_CASE("grayscale conversion applies the luma weights") {
    const std::array<std::uint8_t, 3> white = {255, 255, 255};
    const std::array<std::uint8_t, 3> black = {0, 0, 0};
    const std::array<std::uint8_t, 3> red = {255, 0, 0};
    const std::vector<std::array<std::uint8_t, 3>> pixels = {white, black, red};
    const ImageTensor image = grayscale_convert(pixels, 3, 1);
    CHECK(image.pixels[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(image.pixels[1] == 0.0);
    CHECK(image.pixels[2] == doctest::Approx(0.299).epsilon(1e-12));
}

TEST_CASE("round trip holds for every nonzero image") {
    RngStream rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const int width = 1 + static_cast<int>(rng.uniform_int(5));
        const int height = 1 + static_cast<int>(rng.uniform_int(5));
        ImageTensor image = test::random_image(rng, width, height, 0.0, 1.0);
        image.pixels[0] += 0.01;
        const Eigen::VectorXd normalized = image.pixels / image.pixels.norm();
        const auto state =
            amplitude_encode(image, data_qubits_for(image.size()) + 1);
        const ImageTensor decoded = decode_state(state, width, height);
        CHECK((decoded.pixels - normalized).cwiseAbs().maxCoeff() <= 1e-12);
    }
}
