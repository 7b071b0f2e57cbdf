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
 * Classical/quantum bridge: amplitude encoding in, sqrt-probability
 * decoding out.
 *
 * Encoding assigns amplitudes directly instead of synthesizing a state
 * preparation circuit; the resulting state is identical. The ancilla is the
 * highest-index qubit, stays |0> at encode time, and is traced out at
 * decode time.
 */
#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "qdm/errors.hpp"
#include "qdm/state_vector.hpp"

namespace qdm {

/// Row-major grayscale image with pixel values in [0, 1]. norm_scale keeps
/// the L2 norm removed by the most recent normalization.
struct ImageTensor {
    int width = 0;
    int height = 0;
    RealVector<double> pixels;
    double norm_scale = 1.0;

    Eigen::Index size() const { return pixels.size(); }
};

/// Throws EncodingError unless pixels match width*height and every entry is
/// finite and nonnegative.
void validate(const ImageTensor &image);

/// Smallest qubit count whose amplitude space holds pixel_count values.
int data_qubits_for(Eigen::Index pixel_count);

/// Zero-pads pixels to 2^(total_qubits-1), divides by their L2 norm and
/// leaves the ancilla |0>. The removed norm is written to image.norm_scale.
StateVector<double> amplitude_encode(ImageTensor &image, int total_qubits);

/// amplitude_encode for callers that do not keep the normalization scale.
StateVector<double> amplitude_encode_copy(ImageTensor image, int total_qubits);

/// Pixel i = sqrt of the data-register marginal probability of basis state
/// i, ancilla traced out, truncated to width*height entries.
ImageTensor decode_state(const StateVector<double> &state, int width, int height);

/// Luma conversion (0.299 r + 0.587 g + 0.114 b) / 255 per pixel.
ImageTensor grayscale_convert(std::span<const std::array<std::uint8_t, 3>> rgb_pixels,
                              int width, int height);

} // namespace qdm
