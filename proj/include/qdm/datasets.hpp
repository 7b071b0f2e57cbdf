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
 * Binary dataset parsers (IDX and CIFAR-10 batches) and deterministic
 * preprocessing into fixed-resolution grayscale tensors.
 *
 * Parsers validate byte layouts exhaustively and throw FormatError on any
 * malformed input; they never read ahead of a validated length.
 */
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qdm/encoding.hpp"
#include "qdm/errors.hpp"

namespace qdm {

enum class Source { MNIST, CIFAR10 };

struct IdxImages {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels; // count*rows*cols bytes, row-major
};

struct IdxLabels {
    int count = 0;
    std::vector<std::uint8_t> labels;
};

using IdxFile = std::variant<IdxImages, IdxLabels>;

/// Big-endian IDX container: magic 0x00000803 for images (count, rows,
/// cols dimensions) or 0x00000801 for labels (count); the payload length
/// must match the header exactly.
IdxFile parse_idx(std::span<const std::uint8_t> bytes);

struct CifarRecord {
    std::uint8_t label = 0;
    std::vector<std::uint8_t> planes; // 1024 R, 1024 G, 1024 B, row-major
};

/// 3073-byte records: label byte then three planar 32x32 channels.
std::vector<CifarRecord> parse_cifar10_batch(std::span<const std::uint8_t> bytes);

struct DatasetSlice {
    std::vector<ImageTensor> images;
    std::vector<int> labels;
    Source source = Source::MNIST;
    int resolution = 8;
};

/// One IDX image as a [0,1] tensor (byte / 255).
ImageTensor idx_image_tensor(const IdxImages &images, int index);

/// One CIFAR record, grayscale converted, as a 32x32 tensor.
ImageTensor cifar_image_tensor(const CifarRecord &record);

ImageTensor center_pad(const ImageTensor &image, int width, int height);

/// Block-average reduction; 28x28 sources are center-padded to 32x32
/// first so every supported target divides evenly.
ImageTensor downsample(const ImageTensor &image, int target_resolution);

/// Keeps only records with the given digit label, order preserved.
DatasetSlice class_filter(const DatasetSlice &slice, int digit);

/// Whole file into memory; ConfigError when unreadable.
std::vector<std::uint8_t> read_file_bytes(const std::string &path);

/// Parses an IDX image/label file pair into a preprocessed slice. digit < 0
/// keeps all classes; subset_size <= 0 keeps all records. The filter runs
/// before the subset cut.
DatasetSlice load_mnist(const std::string &images_path, const std::string &labels_path,
                        int resolution, int subset_size, int digit);

/// Same contract for CIFAR-10 batch files, grayscale converted.
DatasetSlice load_cifar10(const std::vector<std::string> &batch_paths, int resolution,
                          int subset_size, int digit);

} // namespace qdm
