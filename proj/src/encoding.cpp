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

#include "qdm/encoding.hpp"

#include <cmath>
#include <vector>

#include "qdm/gates.hpp"

namespace qdm {

void validate(const ImageTensor &image) {
    if (image.width <= 0 || image.height <= 0) {
        throw EncodingError("image dimensions must be positive");
    }
    if (image.pixels.size() !=
        static_cast<Eigen::Index>(image.width) * image.height) {
        throw EncodingError("pixel count does not match width*height");
    }
    for (Eigen::Index i = 0; i < image.pixels.size(); ++i) {
        if (!std::isfinite(image.pixels[i]) || image.pixels[i] < 0.0) {
            throw EncodingError("pixel values must be finite and nonnegative");
        }
    }
}

int data_qubits_for(Eigen::Index pixel_count) {
    if (pixel_count < 1) {
        throw EncodingError("pixel count must be positive");
    }
    int qubits = 0;
    while ((Eigen::Index{1} << qubits) < pixel_count) {
        ++qubits;
    }
    return qubits;
}

StateVector<double> amplitude_encode(ImageTensor &image, int total_qubits) {
    validate(image);
    if (total_qubits < 2) {
        throw EncodingError("encoding needs at least one data qubit plus ancilla");
    }
    const Eigen::Index capacity = Eigen::Index{1} << (total_qubits - 1);
    if (image.pixels.size() > capacity) {
        throw EncodingError("image exceeds data-register capacity");
    }
    const double norm = image.pixels.norm();
    if (norm == 0.0) {
        throw EncodingError("cannot encode an all-zero image");
    }
    image.norm_scale = norm;
    StateVector<double> state(total_qubits);
    state.amplitudes.setZero();
    for (Eigen::Index i = 0; i < image.pixels.size(); ++i) {
        state.amplitudes[i] = std::complex<double>(image.pixels[i] / norm, 0.0);
    }
    return state;
}

StateVector<double> amplitude_encode_copy(ImageTensor image, int total_qubits) {
    return amplitude_encode(image, total_qubits);
}

ImageTensor decode_state(const StateVector<double> &state, int width, int height) {
    if (width <= 0 || height <= 0) {
        throw StructuralError("decode shape must be positive");
    }
    const Eigen::Index pixel_count = static_cast<Eigen::Index>(width) * height;
    const int data_qubits = state.num_qubits - 1;
    if (data_qubits < 1 || (Eigen::Index{1} << data_qubits) < pixel_count) {
        throw StructuralError("state too small for requested decode shape");
    }
    std::vector<int> keep(static_cast<std::size_t>(data_qubits));
    for (int q = 0; q < data_qubits; ++q) {
        keep[static_cast<std::size_t>(q)] = q;
    }
    const RealVector<double> probs = marginal_probabilities(state, keep);
    ImageTensor image;
    image.width = width;
    image.height = height;
    image.pixels = probs.head(pixel_count).cwiseSqrt();
    return image;
}

ImageTensor grayscale_convert(std::span<const std::array<std::uint8_t, 3>> rgb_pixels,
                              int width, int height) {
    if (rgb_pixels.empty()) {
        throw EncodingError("grayscale conversion needs at least one pixel");
    }
    if (static_cast<std::size_t>(width) * static_cast<std::size_t>(height) !=
        rgb_pixels.size()) {
        throw EncodingError("rgb pixel count does not match width*height");
    }
    ImageTensor image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<Eigen::Index>(rgb_pixels.size()));
    for (std::size_t i = 0; i < rgb_pixels.size(); ++i) {
        const auto &[r, g, b] = rgb_pixels[i];
        image.pixels[static_cast<Eigen::Index>(i)] =
            (0.299 * r + 0.587 * g + 0.114 * b) / 255.0;
    }
    return image;
}

} // namespace qdm
