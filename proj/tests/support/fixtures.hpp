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
 * Hand-assembled dataset byte fixtures and temp-dir helpers for tests.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qdm::test {

/// IDX image file: magic 0x00000803, big-endian dims, then raw pixel rows.
std::vector<std::uint8_t> idx_images_bytes(std::uint32_t count, std::uint32_t rows,
                                           std::uint32_t cols,
                                           const std::vector<std::uint8_t> &pixels);

/// IDX label file: magic 0x00000801, big-endian count, then raw labels.
std::vector<std::uint8_t> idx_labels_bytes(const std::vector<std::uint8_t> &labels);

/// One 3073-byte CIFAR-10 record: label then planar R, G, B (1024 each).
std::vector<std::uint8_t> cifar_record_bytes(std::uint8_t label,
                                             const std::vector<std::uint8_t> &red,
                                             const std::vector<std::uint8_t> &green,
                                             const std::vector<std::uint8_t> &blue);

/// Unique directory under the system temp root, removed on destruction.
class TempDir {
  public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir &) = delete;
    TempDir &operator=(const TempDir &) = delete;

    const std::filesystem::path &path() const { return path_; }
    std::string file(const std::string &name) const {
        return (path_ / name).string();
    }

  private:
    std::filesystem::path path_;
};

/// Bundled test data directory (compile-time constant from the build).
std::string data_dir();

std::vector<std::uint8_t> read_bytes(const std::string &path);

} // namespace qdm::test
