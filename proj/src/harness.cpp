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

#include "qdm/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qdm/adjoint.hpp"

namespace qdm {

namespace {

std::string fmt_double(double value, const char *spec = "%.17g") {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), spec, value);
    return buffer;
}

std::string artifact_path(const std::string &dir, const std::string &name) {
    return (std::filesystem::path(dir) / name).string();
}

void ensure_output_dir(const std::string &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ConfigError("cannot create output directory: " + dir);
    }
}

ImageTensor generate_one(const CircuitSpec &spec, const Eigen::VectorXd &params,
                         const NoiseSchedule &schedule, RngStream trajectory_rng,
                         std::optional<int> label, int resolution) {
    return reverse_sample(spec, params, schedule, trajectory_rng, label, resolution,
                          resolution)
        .back();
}

} // namespace

TrainSession::TrainSession(const RunConfig &config) {
    validate(config);
    spec_ = circuit_spec_for(config);
    schedule_ = NoiseSchedule::linear(config.timesteps);
    checkpoint_.config = config;
    checkpoint_.rng = RngStream(config.seed);
    const auto dim = static_cast<Eigen::Index>(param_count(spec_));
    checkpoint_.params.resize(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        checkpoint_.params[i] = 2.0 * std::numbers::pi * checkpoint_.rng.uniform();
    }
    checkpoint_.adam = AdamState::init(dim, config.learning_rate);
}

TrainSession::TrainSession(Checkpoint checkpoint) : checkpoint_(std::move(checkpoint)) {
    validate(checkpoint_.config);
    spec_ = circuit_spec_for(checkpoint_.config);
    schedule_ = NoiseSchedule::linear(checkpoint_.config.timesteps);
    if (checkpoint_.params.size() != param_count(spec_)) {
        throw StructuralError("checkpoint parameter length does not match its model");
    }
}

double TrainSession::run_epoch(const DatasetSlice &data) {
    const RunConfig &config = checkpoint_.config;
    if (data.images.empty()) {
        throw ConfigError("dataset slice is empty");
    }
    const Eigen::Index expected_pixels =
        static_cast<Eigen::Index>(config.resolution) * config.resolution;
    if (data.images.front().pixels.size() != expected_pixels) {
        throw ConfigError("dataset resolution does not match the run configuration");
    }
    const std::size_t n = data.images.size();
    const auto timesteps = static_cast<std::uint64_t>(config.timesteps);
    double loss_sum = 0.0;
    std::size_t index = 0;
    while (index < n) {
        const std::size_t batch_end =
            std::min(index + static_cast<std::size_t>(config.batch_size), n);
        Eigen::VectorXd grad_sum = Eigen::VectorXd::Zero(checkpoint_.params.size());
        for (std::size_t i = index; i < batch_end; ++i) {
            const int t = 1 + static_cast<int>(checkpoint_.rng.uniform_int(timesteps));
            const TrainingPair pair =
                make_training_pair(data.images[i], t, schedule_, checkpoint_.rng);
            const LossGradient result =
                loss_and_gradient(spec_, checkpoint_.params, pair.input, pair.target, t,
                                  config.timesteps, data.labels[i]);
            loss_sum += result.loss;
            grad_sum += result.grad;
        }
        grad_sum /= static_cast<double>(batch_end - index);
        adam_step(checkpoint_.adam, checkpoint_.params, grad_sum);
        index = batch_end;
    }
    const double mean_loss = loss_sum / static_cast<double>(n);
    checkpoint_.loss_history.push_back(mean_loss);
    checkpoint_.epoch += 1;
    return mean_loss;
}

TrainOutputs run_training(TrainSession &session, const DatasetSlice &data) {
    TrainOutputs outputs;
    while (session.checkpoint().epoch < session.checkpoint().config.epochs) {
        const auto start = std::chrono::steady_clock::now();
        session.run_epoch(data);
        const auto stop = std::chrono::steady_clock::now();
        outputs.wall_seconds.push_back(
            std::chrono::duration<double>(stop - start).count());
    }
    outputs.checkpoint = session.checkpoint();
    return outputs;
}

DatasetSlice load_dataset(const RunConfig &config) {
    validate(config);
    if (config.dataset == "mnist") {
        if (config.images_path.empty() || config.labels_path.empty()) {
            throw ConfigError("mnist runs need images_path and labels_path");
        }
        return load_mnist(config.images_path, config.labels_path, config.resolution,
                          config.subset_size, config.class_digit);
    }
    if (config.cifar_batches.empty()) {
        throw ConfigError("cifar10 runs need at least one batch file");
    }
    return load_cifar10(config.cifar_batches, config.resolution, config.subset_size,
                        config.class_digit);
}

namespace {

std::string strip(const std::string &text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string &key, const std::string &value) {
    T parsed{};
    const char *first = value.data();
    const char *last = first + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, parsed);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("config key " + key + " has a malformed value: " + value);
    }
    return parsed;
}

} // namespace

void apply_config_file(RunConfig &config, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot read config file: " + path);
    }
    std::string line;
    while (std::getline(in, line)) {
        const auto comment = line.find('#');
        if (comment != std::string::npos) {
            line.resize(comment);
        }
        line = strip(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line is not key=value: " + line);
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key == "model") {
            config.model = value;
        } else if (key == "dataset") {
            config.dataset = value;
        } else if (key == "images") {
            config.images_path = value;
        } else if (key == "labels") {
            config.labels_path = value;
        } else if (key == "cifar") {
            config.cifar_batches.push_back(value);
        } else if (key == "subset") {
            config.subset_size = parse_number<int>(key, value);
        } else if (key == "class") {
            config.class_digit = parse_number<int>(key, value);
        } else if (key == "resolution") {
            config.resolution = parse_number<int>(key, value);
        } else if (key == "depth") {
            config.depth = parse_number<int>(key, value);
        } else if (key == "timesteps") {
            config.timesteps = parse_number<int>(key, value);
        } else if (key == "epochs") {
            config.epochs = parse_number<int>(key, value);
        } else if (key == "batch-size") {
            config.batch_size = parse_number<int>(key, value);
        } else if (key == "learning-rate") {
            config.learning_rate = parse_number<double>(key, value);
        } else if (key == "seed") {
            config.seed = parse_number<std::uint64_t>(key, value);
        } else if (key == "out") {
            config.output_dir = value;
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

std::vector<ImageTensor> sample_images(const Checkpoint &checkpoint, int count,
                                       std::uint64_t seed, std::optional<int> label) {
    if (count < 0) {
        throw ConfigError("sample count must be nonnegative");
    }
    const CircuitSpec spec = circuit_spec_for(checkpoint.config);
    const NoiseSchedule schedule = NoiseSchedule::linear(checkpoint.config.timesteps);
    const RngStream base(seed);
    std::vector<ImageTensor> images;
    images.reserve(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        images.push_back(generate_one(spec, checkpoint.params, schedule,
                                      base.fork(static_cast<std::uint64_t>(k)), label,
                                      checkpoint.config.resolution));
    }
    return images;
}

MetricsReport evaluate_pairs(const std::vector<ImageTensor> &reference,
                             const std::vector<ImageTensor> &generated) {
    if (reference.size() != generated.size()) {
        throw StructuralError("reference and generated counts differ");
    }
    if (reference.empty()) {
        throw StructuralError("cannot evaluate empty image lists");
    }
    std::vector<ImageTensor> ref_scaled;
    std::vector<ImageTensor> gen_scaled;
    ref_scaled.reserve(reference.size());
    gen_scaled.reserve(generated.size());
    for (std::size_t i = 0; i < reference.size(); ++i) {
        ref_scaled.push_back(min_max_rescale(reference[i]));
        gen_scaled.push_back(min_max_rescale(generated[i]));
    }
    MetricsReport report;
    for (std::size_t i = 0; i < ref_scaled.size(); ++i) {
        report.mse += mse(ref_scaled[i], gen_scaled[i]);
        report.ssim += ssim_global(ref_scaled[i], gen_scaled[i]);
        report.psnr_db += psnr(ref_scaled[i], gen_scaled[i]);
    }
    const double n = static_cast<double>(ref_scaled.size());
    report.mse /= n;
    report.ssim /= n;
    report.psnr_db /= n;
    if (ref_scaled.size() >= 2) {
        report.frechet = frechet_distance(pixel_feature_stats(ref_scaled),
                                          pixel_feature_stats(gen_scaled));
    }
    return report;
}

std::vector<EvalRow> run_eval(const Checkpoint &checkpoint, const DatasetSlice &held_out,
                              std::uint64_t seed) {
    const CircuitSpec spec = circuit_spec_for(checkpoint.config);
    const NoiseSchedule schedule = NoiseSchedule::linear(checkpoint.config.timesteps);
    const RngStream base(seed);
    std::uint64_t sample_counter = 0;

    std::vector<int> classes;
    if (checkpoint.config.class_digit >= 0) {
        classes.push_back(checkpoint.config.class_digit);
    } else {
        for (int c = 0; c < kNumClasses; ++c) {
            classes.push_back(c);
        }
    }

    std::vector<EvalRow> rows;
    std::vector<ImageTensor> pooled_ref;
    std::vector<ImageTensor> pooled_gen;
    for (const int c : classes) {
        std::vector<ImageTensor> refs;
        for (std::size_t i = 0; i < held_out.images.size(); ++i) {
            if (held_out.labels[i] == c) {
                refs.push_back(held_out.images[i]);
            }
        }
        EvalRow row;
        row.klass = std::to_string(c);
        row.count = static_cast<int>(refs.size());
        if (!refs.empty()) {
            std::vector<ImageTensor> gens;
            gens.reserve(refs.size());
            for (std::size_t i = 0; i < refs.size(); ++i) {
                gens.push_back(generate_one(spec, checkpoint.params, schedule,
                                            base.fork(sample_counter++), c,
                                            checkpoint.config.resolution));
            }
            row.metrics = evaluate_pairs(refs, gens);
            pooled_ref.insert(pooled_ref.end(), refs.begin(), refs.end());
            pooled_gen.insert(pooled_gen.end(), gens.begin(), gens.end());
        }
        rows.push_back(std::move(row));
    }

    EvalRow aggregate;
    aggregate.klass = "all";
    aggregate.count = static_cast<int>(pooled_ref.size());
    if (!pooled_ref.empty()) {
        aggregate.metrics = evaluate_pairs(pooled_ref, pooled_gen);
    }
    rows.push_back(std::move(aggregate));
    return rows;
}

std::string loss_history_csv(const std::vector<double> &losses) {
    std::string csv = "epoch,mean_loss\n";
    for (std::size_t i = 0; i < losses.size(); ++i) {
        csv += std::to_string(i + 1);
        csv += ',';
        csv += fmt_double(losses[i]);
        csv += '\n';
    }
    return csv;
}

std::string timing_csv(const std::vector<double> &wall_seconds, int first_epoch) {
    std::string csv = "epoch,wall_seconds\n";
    for (std::size_t i = 0; i < wall_seconds.size(); ++i) {
        csv += std::to_string(first_epoch + static_cast<int>(i));
        csv += ',';
        csv += fmt_double(wall_seconds[i], "%.6f");
        csv += '\n';
    }
    return csv;
}

std::string eval_csv(const std::vector<EvalRow> &rows) {
    std::string csv = "class,count,mse,ssim,psnr_db,frechet\n";
    for (const EvalRow &row : rows) {
        csv += row.klass;
        csv += ',';
        csv += std::to_string(row.count);
        csv += ',';
        csv += fmt_double(row.metrics.mse, "%.12g");
        csv += ',';
        csv += fmt_double(row.metrics.ssim, "%.12g");
        csv += ',';
        csv += fmt_double(row.metrics.psnr_db, "%.12g");
        csv += ',';
        csv += fmt_double(row.metrics.frechet, "%.12g");
        csv += '\n';
    }
    return csv;
}

std::string params_compare_csv(int n_min, int n_max, int depth) {
    if (n_min < 2 || n_min % 2 != 0 || n_max % 2 != 0 || n_max < n_min) {
        throw ConfigError("qubit range must be even and ascending");
    }
    if (depth < 1) {
        throw ConfigError("depth must be positive");
    }
    std::string csv = "n,eeqdm_params,qddm_params,reduction_percent\n";
    for (int n = n_min; n <= n_max; n += 2) {
        CircuitSpec eeqdm{Layout::EEQDM, n, depth, true};
        CircuitSpec qddm{Layout::QDDM, n, depth, true};
        const int reduced = param_count(eeqdm);
        const int full = param_count(qddm);
        const double reduction =
            100.0 * (1.0 - static_cast<double>(reduced) / static_cast<double>(full));
        csv += std::to_string(n);
        csv += ',';
        csv += std::to_string(reduced);
        csv += ',';
        csv += std::to_string(full);
        csv += ',';
        csv += fmt_double(reduction, "%.2f");
        csv += '\n';
    }
    return csv;
}

std::vector<std::uint8_t> encode_pgm(const ImageTensor &image) {
    validate(image);
    const ImageTensor scaled = min_max_rescale(image);
    char header[64];
    std::snprintf(header, sizeof(header), "P5\n%d %d\n255\n", image.width, image.height);
    std::vector<std::uint8_t> bytes(header, header + std::strlen(header));
    for (Eigen::Index i = 0; i < scaled.pixels.size(); ++i) {
        const long value = std::lround(255.0 * scaled.pixels[i]);
        bytes.push_back(static_cast<std::uint8_t>(std::clamp(value, 0L, 255L)));
    }
    return bytes;
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open file for writing: " + path);
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw ConfigError("failed writing file: " + path);
    }
}

void write_binary_file(const std::string &path, const std::vector<std::uint8_t> &bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot open file for writing: " + path);
    }
    out.write(reinterpret_cast<const char *>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw ConfigError("failed writing file: " + path);
    }
}

void cmd_train(const RunConfig &config, const std::string &resume_path) {
    TrainSession session = [&] {
        if (resume_path.empty()) {
            return TrainSession(config);
        }
        // Resume keeps the checkpoint's run definition; only the epoch
        // target and output directory follow the fresh invocation.
        Checkpoint checkpoint = load_checkpoint(resume_path);
        checkpoint.config.epochs = config.epochs;
        checkpoint.config.output_dir = config.output_dir;
        return TrainSession(std::move(checkpoint));
    }();
    const int first_epoch = session.checkpoint().epoch + 1;
    const DatasetSlice data = load_dataset(session.checkpoint().config);
    const TrainOutputs outputs = run_training(session, data);
    const std::string &dir = outputs.checkpoint.config.output_dir;
    ensure_output_dir(dir);
    save_checkpoint(outputs.checkpoint, artifact_path(dir, "checkpoint.qdmc"));
    write_text_file(artifact_path(dir, "loss.csv"),
                    loss_history_csv(outputs.checkpoint.loss_history));
    write_text_file(artifact_path(dir, "timing.csv"),
                    timing_csv(outputs.wall_seconds, first_epoch));
}

void cmd_sample(const std::string &checkpoint_path, int count, std::uint64_t seed,
                std::optional<int> label, const std::string &output_dir,
                bool dump_trajectory) {
    if (count < 0) {
        throw ConfigError("sample count must be nonnegative");
    }
    if (label && (*label < 0 || *label >= kNumClasses)) {
        throw ConfigError("label out of range");
    }
    const Checkpoint checkpoint = load_checkpoint(checkpoint_path);
    const CircuitSpec spec = circuit_spec_for(checkpoint.config);
    const NoiseSchedule schedule = NoiseSchedule::linear(checkpoint.config.timesteps);
    const RngStream base(seed);
    if (count > 0) {
        ensure_output_dir(output_dir);
    }
    for (int k = 0; k < count; ++k) {
        RngStream trajectory_rng = base.fork(static_cast<std::uint64_t>(k));
        const std::vector<ImageTensor> trajectory =
            reverse_sample(spec, checkpoint.params, schedule, trajectory_rng, label,
                           checkpoint.config.resolution, checkpoint.config.resolution);
        char name[64];
        std::snprintf(name, sizeof(name), "sample_%03d.pgm", k);
        write_binary_file(artifact_path(output_dir, name), encode_pgm(trajectory.back()));
        if (dump_trajectory) {
            for (std::size_t step = 0; step < trajectory.size(); ++step) {
                std::snprintf(name, sizeof(name), "sample_%03d_step%02zu.pgm", k, step);
                write_binary_file(artifact_path(output_dir, name),
                                  encode_pgm(trajectory[step]));
            }
        }
    }
}

void cmd_eval(const std::string &checkpoint_path, const RunConfig &data_overrides,
              const std::string &output_dir) {
    Checkpoint checkpoint = load_checkpoint(checkpoint_path);
    if (data_overrides.resolution != checkpoint.config.resolution) {
        throw ConfigError("evaluation resolution must match the checkpoint");
    }
    checkpoint.config.class_digit = data_overrides.class_digit;
    const DatasetSlice held_out = load_dataset(data_overrides);
    const std::vector<EvalRow> rows = run_eval(checkpoint, held_out, data_overrides.seed);
    ensure_output_dir(output_dir);
    write_text_file(artifact_path(output_dir, "eval.csv"), eval_csv(rows));
}

void cmd_params_compare(int n_min, int n_max, int depth, const std::string &output_path) {
    const std::string csv = params_compare_csv(n_min, n_max, depth);
    if (output_path.empty()) {
        std::fputs(csv.c_str(), stdout);
    } else {
        write_text_file(output_path, csv);
    }
}

} // namespace qdm
