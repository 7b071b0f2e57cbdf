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

#include "qdm/datasets.hpp"

#include <array>
#include <fstream>
#include <limits>

namespace qdm {

namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;
constexpr std::size_t kCifarRecordBytes = 3073;
constexpr std::size_t kCifarPlaneBytes = 1024;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

} // namespace

IdxFile parse_idx(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) {
        throw FormatError("IDX data shorter than its magic number");
    }
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic == kIdxImageMagic) {
        if (bytes.size() < 16) {
            throw FormatError("IDX image header truncated");
        }
        const std::uint64_t count = read_be32(bytes, 4);
        const std::uint64_t rows = read_be32(bytes, 8);
        const std::uint64_t cols = read_be32(bytes, 12);
        // Overflow-checked expected payload; an overflowing product can
        // never match a real buffer length.
        const std::uint64_t payload = bytes.size() - 16;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
        if (rows != 0 && cols > limit / rows) {
            throw FormatError("IDX image payload length mismatch");
        }
        const std::uint64_t pixels_per_image = rows * cols;
        if (pixels_per_image != 0 && count > limit / pixels_per_image) {
            throw FormatError("IDX image payload length mismatch");
        }
        if (count * pixels_per_image != payload) {
            throw FormatError("IDX image payload length mismatch");
        }
        if (count > static_cast<std::uint64_t>(std::numeric_limits<int>::max()) ||
            rows > 4096 || cols > 4096) {
            throw FormatError("IDX image dimensions out of supported range");
        }
        IdxImages images;
        images.count = static_cast<int>(count);
        images.rows = static_cast<int>(rows);
        images.cols = static_cast<int>(cols);
        images.pixels.assign(bytes.begin() + 16, bytes.end());
        return images;
    }
    if (magic == kIdxLabelMagic) {
        if (bytes.size() < 8) {
            throw FormatError("IDX label header truncated");
        }
        const std::uint64_t count = read_be32(bytes, 4);
        if (count != bytes.size() - 8) {
            throw FormatError("IDX label payload length mismatch");
        }
        IdxLabels labels;
        labels.count = static_cast<int>(count);
        labels.labels.assign(bytes.begin() + 8, bytes.end());
        return labels;
    }
    throw FormatError("unrecognized IDX magic number");
}

std::vector<CifarRecord> parse_cifar10_batch(std::span<const std::uint8_t> bytes) {
    if (bytes.size() % kCifarRecordBytes != 0) {
        throw FormatError("CIFAR batch length is not a multiple of 3073");
    }
    std::vector<CifarRecord> records;
    records.reserve(bytes.size() / kCifarRecordBytes);
    for (std::size_t offset = 0; offset < bytes.size(); offset += kCifarRecordBytes) {
        CifarRecord record;
        record.label = bytes[offset];
        if (record.label > 9) {
            throw FormatError("CIFAR label byte exceeds 9");
        }
        record.planes.assign(bytes.begin() + static_cast<std::ptrdiff_t>(offset) + 1,
                             bytes.begin() + static_cast<std::ptrdiff_t>(offset + kCifarRecordBytes));
        records.push_back(std::move(record));
    }
    return records;
}

ImageTensor idx_image_tensor(const IdxImages &images, int index) {
    if (index < 0 || index >= images.count) {
        throw StructuralError("IDX image index out of range");
    }
    ImageTensor image;
    image.width = images.cols;
    image.height = images.rows;
    const std::size_t pixels = static_cast<std::size_t>(images.rows) *
                               static_cast<std::size_t>(images.cols);
    image.pixels.resize(static_cast<Eigen::Index>(pixels));
    const std::size_t base = static_cast<std::size_t>(index) * pixels;
    for (std::size_t i = 0; i < pixels; ++i) {
        image.pixels[static_cast<Eigen::Index>(i)] =
            static_cast<double>(images.pixels[base + i]) / 255.0;
    }
    return image;
}

ImageTensor cifar_image_tensor(const CifarRecord &record) {
    std::vector<std::array<std::uint8_t, 3>> rgb(kCifarPlaneBytes);
    for (std::size_t i = 0; i < kCifarPlaneBytes; ++i) {
        rgb[i] = {record.planes[i], record.planes[i + kCifarPlaneBytes],
                  record.planes[i + 2 * kCifarPlaneBytes]};
    }
    return grayscale_convert(rgb, 32, 32);
}

ImageTensor center_pad(const ImageTensor &image, int width, int height) {
    if (width < image.width || height < image.height) {
        throw ConfigError("padding target smaller than the image");
    }
    ImageTensor padded;
    padded.width = width;
    padded.height = height;
    padded.pixels = RealVector<double>::Zero(static_cast<Eigen::Index>(width) * height);
    const int off_x = (width - image.width) / 2;
    const int off_y = (height - image.height) / 2;
    for (int y = 0; y < image.height; ++y) {
        for (int x = 0; x < image.width; ++x) {
            padded.pixels[static_cast<Eigen::Index>(y + off_y) * width + (x + off_x)] =
                image.pixels[static_cast<Eigen::Index>(y) * image.width + x];
        }
    }
    return padded;
}

ImageTensor downsample(const ImageTensor &image, int target_resolution) {
    if (target_resolution < 1) {
        throw ConfigError("target resolution must be positive");
    }
    ImageTensor source = image;
    if (image.width == 28 && image.height == 28) {
        source = center_pad(image, 32, 32);
    }
    if (source.width % target_resolution != 0 || source.height % target_resolution != 0) {
        throw ConfigError("target resolution does not divide the image");
    }
    const int block_x = source.width / target_resolution;
    const int block_y = source.height / target_resolution;
    ImageTensor out;
    out.width = target_resolution;
    out.height = target_resolution;
    out.pixels.resize(static_cast<Eigen::Index>(target_resolution) * target_resolution);
    const double inv_block = 1.0 / (static_cast<double>(block_x) * block_y);
    for (int y = 0; y < target_resolution; ++y) {
        for (int x = 0; x < target_resolution; ++x) {
            double sum = 0.0;
            for (int dy = 0; dy < block_y; ++dy) {
                for (int dx = 0; dx < block_x; ++dx) {
                    sum += source.pixels[static_cast<Eigen::Index>(y * block_y + dy) *
                                             source.width +
                                         (x * block_x + dx)];
                }
            }
            out.pixels[static_cast<Eigen::Index>(y) * target_resolution + x] =
                sum * inv_block;
        }
    }
    return out;
}

DatasetSlice class_filter(const DatasetSlice &slice, int digit) {
    if (digit < 0 || digit > 9) {
        throw ConfigError("class filter digit must be 0..9");
    }
    DatasetSlice filtered;
    filtered.source = slice.source;
    filtered.resolution = slice.resolution;
    for (std::size_t i = 0; i < slice.images.size(); ++i) {
        if (slice.labels[i] == digit) {
            filtered.images.push_back(slice.images[i]);
            filtered.labels.push_back(slice.labels[i]);
        }
    }
    return filtered;
}

std::vector<std::uint8_t> read_file_bytes(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open file: " + path);
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) {
        throw ConfigError("failed reading file: " + path);
    }
    return bytes;
}

namespace {

bool slice_full(const DatasetSlice &slice, int subset_size) {
    return subset_size > 0 && slice.images.size() >= static_cast<std::size_t>(subset_size);
}

} // namespace

DatasetSlice load_mnist(const std::string &images_path, const std::string &labels_path,
                        int resolution, int subset_size, int digit) {
    const IdxFile image_file = parse_idx(read_file_bytes(images_path));
    const IdxFile label_file = parse_idx(read_file_bytes(labels_path));
    const auto *images = std::get_if<IdxImages>(&image_file);
    const auto *labels = std::get_if<IdxLabels>(&label_file);
    if (images == nullptr) {
        throw FormatError("expected an IDX image file: " + images_path);
    }
    if (labels == nullptr) {
        throw FormatError("expected an IDX label file: " + labels_path);
    }
    if (images->count != labels->count) {
        throw FormatError("IDX image and label counts differ");
    }
    DatasetSlice slice;
    slice.source = Source::MNIST;
    slice.resolution = resolution;
    for (int i = 0; i < images->count && !slice_full(slice, subset_size); ++i) {
        const std::uint8_t label = labels->labels[static_cast<std::size_t>(i)];
        if (label > 9) {
            throw FormatError("IDX label byte exceeds 9");
        }
        if (digit >= 0 && label != digit) {
            continue;
        }
        slice.images.push_back(downsample(idx_image_tensor(*images, i), resolution));
        slice.labels.push_back(label);
    }
    return slice;
}

DatasetSlice load_cifar10(const std::vector<std::string> &batch_paths, int resolution,
                          int subset_size, int digit) {
    DatasetSlice slice;
    slice.source = Source::CIFAR10;
    slice.resolution = resolution;
    for (const std::string &path : batch_paths) {
        if (slice_full(slice, subset_size)) {
            break;
        }
        const std::vector<CifarRecord> records = parse_cifar10_batch(read_file_bytes(path));
        for (const CifarRecord &record : records) {
            if (slice_full(slice, subset_size)) {
                break;
            }
            if (digit >= 0 && record.label != digit) {
                continue;
            }
            slice.images.push_back(downsample(cifar_image_tensor(record), resolution));
            slice.labels.push_back(record.label);
        }
    }
    return slice;
}

} // namespace qdm
