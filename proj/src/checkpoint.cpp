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

#include "qdm/checkpoint.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "qdm/encoding.hpp"
#include "qdm/errors.hpp"

namespace qdm {

void validate(const RunConfig &config) {
    if (config.model != "eeqdm" && config.model != "qddm") {
        throw ConfigError("model must be eeqdm or qddm");
    }
    if (config.dataset != "mnist" && config.dataset != "cifar10") {
        throw ConfigError("dataset must be mnist or cifar10");
    }
    if (config.resolution != 8 && config.resolution != 16 && config.resolution != 32) {
        throw ConfigError("resolution must be 8, 16, or 32");
    }
    if (config.depth < 1) {
        throw ConfigError("depth must be positive");
    }
    if (config.timesteps < 1) {
        throw ConfigError("timesteps must be positive");
    }
    if (config.epochs < 0) {
        throw ConfigError("epochs must be nonnegative");
    }
    if (config.batch_size < 1) {
        throw ConfigError("batch_size must be positive");
    }
    if (!(config.learning_rate > 0.0)) {
        throw ConfigError("learning_rate must be positive");
    }
    if (config.subset_size < 0) {
        throw ConfigError("subset_size must be nonnegative");
    }
    if (config.class_digit < -1 || config.class_digit > 9) {
        throw ConfigError("class filter digit must be 0..9");
    }
}

CircuitSpec circuit_spec_for(const RunConfig &config) {
    validate(config);
    CircuitSpec spec;
    spec.layout = config.model == "eeqdm" ? Layout::EEQDM : Layout::QDDM;
    spec.data_qubits =
        data_qubits_for(static_cast<Eigen::Index>(config.resolution) * config.resolution);
    spec.depth = config.depth;
    spec.has_time_embedding = true;
    return spec;
}

namespace {

void append_le_double(std::string &out, double value) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
}

double read_le_double(const unsigned char *bytes) {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
        bits |= std::uint64_t{bytes[i]} << (8 * i);
    }
    return std::bit_cast<double>(bits);
}

std::string hexfloat(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%a", value);
    return buffer;
}

std::int64_t parse_int(const std::string &text) {
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("checkpoint field is not an integer: " + text);
    }
    return value;
}

std::uint64_t parse_uint(const std::string &text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw FormatError("checkpoint field is not an unsigned integer: " + text);
    }
    return value;
}

double parse_double(const std::string &text) {
    const char *begin = text.c_str();
    char *end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty()) {
        throw FormatError("checkpoint field is not a real number: " + text);
    }
    return value;
}

int checked_int(std::int64_t value, const char *what) {
    if (value < 0 || value > std::numeric_limits<int>::max()) {
        throw FormatError(std::string("checkpoint field out of range: ") + what);
    }
    return static_cast<int>(value);
}

} // namespace

void save_checkpoint(const Checkpoint &checkpoint, std::ostream &out) {
    const Eigen::Index dim = checkpoint.params.size();
    if (checkpoint.adam.first_moment.size() != dim ||
        checkpoint.adam.second_moment.size() != dim) {
        throw StructuralError("checkpoint moment lengths do not match parameters");
    }
    const RunConfig &config = checkpoint.config;
    out << "qdmckpt " << checkpoint.format_version << '\n';
    out << "model " << config.model << '\n';
    out << "dataset " << config.dataset << '\n';
    out << "resolution " << config.resolution << '\n';
    out << "depth " << config.depth << '\n';
    out << "timesteps " << config.timesteps << '\n';
    out << "epochs " << config.epochs << '\n';
    out << "batch_size " << config.batch_size << '\n';
    out << "learning_rate " << hexfloat(config.learning_rate) << '\n';
    out << "seed " << config.seed << '\n';
    out << "subset_size " << config.subset_size << '\n';
    out << "class_digit " << config.class_digit << '\n';
    if (!config.images_path.empty()) {
        out << "images_path " << config.images_path << '\n';
    }
    if (!config.labels_path.empty()) {
        out << "labels_path " << config.labels_path << '\n';
    }
    for (const std::string &path : config.cifar_batches) {
        out << "cifar_batch " << path << '\n';
    }
    out << "output_dir " << config.output_dir << '\n';
    out << "epoch " << checkpoint.epoch << '\n';
    out << "adam_step " << checkpoint.adam.step << '\n';
    out << "param_count " << dim << '\n';
    out << "loss_count " << checkpoint.loss_history.size() << '\n';
    out << "rng ";
    checkpoint.rng.save(out);
    out << '\n';

    std::string block;
    block.reserve(static_cast<std::size_t>(8) *
                  (3 * static_cast<std::size_t>(dim) + checkpoint.loss_history.size()));
    for (Eigen::Index i = 0; i < dim; ++i) {
        append_le_double(block, checkpoint.params[i]);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        append_le_double(block, checkpoint.adam.first_moment[i]);
    }
    for (Eigen::Index i = 0; i < dim; ++i) {
        append_le_double(block, checkpoint.adam.second_moment[i]);
    }
    for (const double loss : checkpoint.loss_history) {
        append_le_double(block, loss);
    }
    out << "binary " << block.size() << '\n';
    out.write(block.data(), static_cast<std::streamsize>(block.size()));
    if (!out) {
        throw ConfigError("failed writing checkpoint stream");
    }
}

void save_checkpoint(const Checkpoint &checkpoint, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open checkpoint for writing: " + path);
    }
    save_checkpoint(checkpoint, out);
}

Checkpoint load_checkpoint(std::istream &in) {
    std::string line;
    if (!std::getline(in, line) || line != "qdmckpt 1") {
        throw FormatError("unsupported checkpoint version header");
    }
    Checkpoint checkpoint;
    checkpoint.config.output_dir.clear();
    std::int64_t param_count_field = -1;
    std::int64_t loss_count_field = -1;
    std::int64_t adam_step_field = 0;
    std::int64_t binary_bytes = -1;
    bool have_rng = false;

    while (std::getline(in, line)) {
        const std::size_t space = line.find(' ');
        const std::string key = line.substr(0, space);
        const std::string value =
            space == std::string::npos ? std::string() : line.substr(space + 1);
        if (key == "binary") {
            binary_bytes = parse_int(value);
            break;
        } else if (key == "model") {
            checkpoint.config.model = value;
        } else if (key == "dataset") {
            checkpoint.config.dataset = value;
        } else if (key == "resolution") {
            checkpoint.config.resolution = checked_int(parse_int(value), "resolution");
        } else if (key == "depth") {
            checkpoint.config.depth = checked_int(parse_int(value), "depth");
        } else if (key == "timesteps") {
            checkpoint.config.timesteps = checked_int(parse_int(value), "timesteps");
        } else if (key == "epochs") {
            checkpoint.config.epochs = checked_int(parse_int(value), "epochs");
        } else if (key == "batch_size") {
            checkpoint.config.batch_size = checked_int(parse_int(value), "batch_size");
        } else if (key == "learning_rate") {
            checkpoint.config.learning_rate = parse_double(value);
        } else if (key == "seed") {
            checkpoint.config.seed = parse_uint(value);
        } else if (key == "subset_size") {
            checkpoint.config.subset_size = checked_int(parse_int(value), "subset_size");
        } else if (key == "class_digit") {
            const std::int64_t digit = parse_int(value);
            if (digit < -1 || digit > 9) {
                throw FormatError("checkpoint class_digit out of range");
            }
            checkpoint.config.class_digit = static_cast<int>(digit);
        } else if (key == "images_path") {
            checkpoint.config.images_path = value;
        } else if (key == "labels_path") {
            checkpoint.config.labels_path = value;
        } else if (key == "cifar_batch") {
            checkpoint.config.cifar_batches.push_back(value);
        } else if (key == "output_dir") {
            checkpoint.config.output_dir = value;
        } else if (key == "epoch") {
            checkpoint.epoch = checked_int(parse_int(value), "epoch");
        } else if (key == "adam_step") {
            adam_step_field = parse_int(value);
        } else if (key == "param_count") {
            param_count_field = parse_int(value);
        } else if (key == "loss_count") {
            loss_count_field = parse_int(value);
        } else if (key == "rng") {
            std::istringstream rng_in(value);
            checkpoint.rng.load(rng_in);
            if (!rng_in) {
                throw FormatError("checkpoint rng state unreadable");
            }
            have_rng = true;
        } else {
            throw FormatError("unknown checkpoint field: " + key);
        }
    }

    if (binary_bytes < 0) {
        throw FormatError("checkpoint missing binary block");
    }
    if (param_count_field < 0 || loss_count_field < 0 || !have_rng) {
        throw FormatError("checkpoint header incomplete");
    }
    if (checkpoint.config.output_dir.empty()) {
        checkpoint.config.output_dir = ".";
    }
    try {
        validate(checkpoint.config);
    } catch (const ConfigError &err) {
        throw FormatError(std::string("checkpoint config invalid: ") + err.what());
    }
    const int expected_params = param_count(circuit_spec_for(checkpoint.config));
    if (param_count_field != expected_params) {
        throw FormatError("checkpoint parameter count does not match its model");
    }
    if (adam_step_field < 0) {
        throw FormatError("checkpoint adam_step negative");
    }

    const std::int64_t expected_bytes = 8 * (3 * param_count_field + loss_count_field);
    if (binary_bytes != expected_bytes) {
        throw FormatError("checkpoint binary block length mismatch");
    }
    std::string block(static_cast<std::size_t>(binary_bytes), '\0');
    in.read(block.data(), binary_bytes);
    if (in.gcount() != binary_bytes) {
        throw FormatError("checkpoint binary block truncated");
    }

    const auto *bytes = reinterpret_cast<const unsigned char *>(block.data());
    const auto dim = static_cast<Eigen::Index>(param_count_field);
    checkpoint.params.resize(dim);
    checkpoint.adam = AdamState::init(dim, checkpoint.config.learning_rate);
    checkpoint.adam.step = static_cast<int>(adam_step_field);
    std::size_t offset = 0;
    for (Eigen::Index i = 0; i < dim; ++i, offset += 8) {
        checkpoint.params[i] = read_le_double(bytes + offset);
    }
    for (Eigen::Index i = 0; i < dim; ++i, offset += 8) {
        checkpoint.adam.first_moment[i] = read_le_double(bytes + offset);
    }
    for (Eigen::Index i = 0; i < dim; ++i, offset += 8) {
        checkpoint.adam.second_moment[i] = read_le_double(bytes + offset);
    }
    checkpoint.loss_history.resize(static_cast<std::size_t>(loss_count_field));
    for (double &loss : checkpoint.loss_history) {
        loss = read_le_double(bytes + offset);
        offset += 8;
    }
    return checkpoint;
}

Checkpoint load_checkpoint(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open checkpoint: " + path);
    }
    return load_checkpoint(in);
}

} // namespace qdm
