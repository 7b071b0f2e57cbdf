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
 * Run configuration and checkpoint persistence.
 *
 * Checkpoints carry everything a resumed run needs to continue
 * bit-identically: a versioned text header (config, counters, serialized
 * RNG state, hexfloat for the learning rate) followed by an explicit
 * little-endian binary block holding parameters, Adam moments, and the loss
 * history as raw doubles.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qdm/adam.hpp"
#include "qdm/circuits.hpp"
#include "qdm/rng.hpp"

namespace qdm {

struct RunConfig {
    std::string model = "eeqdm";   // eeqdm | qddm
    std::string dataset = "mnist"; // mnist | cifar10
    int resolution = 8;            // 8 | 16 | 32
    int depth = 10;
    int timesteps = 10;
    int epochs = 20;
    int batch_size = 16;
    double learning_rate = 0.1;
    std::uint64_t seed = 1;
    int subset_size = 100; // 0 keeps every record
    int class_digit = -1;  // -1 keeps every class
    std::string images_path;
    std::string labels_path;
    std::vector<std::string> cifar_batches;
    std::string output_dir = ".";
};

/// Throws ConfigError on any out-of-range or inconsistent field.
void validate(const RunConfig &config);

/// Data-qubit count follows the resolution: 8x8 -> 6, 16x16 -> 8,
/// 32x32 -> 10, always plus one ancilla.
CircuitSpec circuit_spec_for(const RunConfig &config);

struct Checkpoint {
    int format_version = 1;
    RunConfig config;
    Eigen::VectorXd params;
    AdamState adam;
    int epoch = 0; // completed epochs
    std::vector<double> loss_history;
    RngStream rng;
};

void save_checkpoint(const Checkpoint &checkpoint, std::ostream &out);
void save_checkpoint(const Checkpoint &checkpoint, const std::string &path);

/// Throws FormatError on version or layout violations.
Checkpoint load_checkpoint(std::istream &in);
Checkpoint load_checkpoint(const std::string &path);

} // namespace qdm
