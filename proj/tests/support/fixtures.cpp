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

#include "support/fixtures.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <stdexcept>

namespace qdm::test {

namespace {

void push_be32(std::vector<std::uint8_t> &out, std::uint32_t value) {
    out.push_back(static_cast<std::uint8_t>(value >> 24));
    out.push_back(static_cast<std::uint8_t>(value >> 16));
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value));
}

} // namespace

std::vector<std::uint8_t> idx_images_bytes(std::uint32_t count, std::uint32_t rows,
                                           std::uint32_t cols,
                                           const std::vector<std::uint8_t> &pixels) {
    std::vector<std::uint8_t> out;
    push_be32(out, 0x00000803u);
    push_be32(out, count);
    push_be32(out, rows);
    push_be32(out, cols);
    out.insert(out.end(), pixels.begin(), pixels.end());
    return out;
}

std::vector<std::uint8_t> idx_labels_bytes(const std::vector<std::uint8_t> &labels) {
    std::vector<std::uint8_t> out;
    push_be32(out, 0x00000801u);
    push_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

std::vector<std::uint8_t> cifar_record_bytes(std::uint8_t label,
                                             const std::vector<std::uint8_t> &red,
                                             const std::vector<std::uint8_t> &green,
                                             const std::vector<std::uint8_t> &blue) {
    if (red.size() != 1024 || green.size() != 1024 || blue.size() != 1024) {
        throw std::invalid_argument("cifar planes must hold 1024 bytes each");
    }
    std::vector<std::uint8_t> out;
    out.reserve(3073);
    out.push_back(label);
    out.insert(out.end(), red.begin(), red.end());
    out.insert(out.end(), green.begin(), green.end());
    out.insert(out.end(), blue.begin(), blue.end());
    return out;
}

TempDir::TempDir() {
    static std::atomic<unsigned> counter{0};
    const unsigned id = counter++;
    const auto stamp =
        std::chrono::steady_clock::now().time_since_epoch().count();
    path_ = std::filesystem::temp_directory_path() /
            ("qdm_test_" + std::to_string(stamp) + "_" + std::to_string(id));
    std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

std::string data_dir() {
#ifdef QDM_TEST_DATA_DIR
    return QDM_TEST_DATA_DIR;
#else
    return "data";
#endif
}

std::vector<std::uint8_t> read_bytes(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace qdm::test
