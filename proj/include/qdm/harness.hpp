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
 * Experiment orchestration shared by the CLI and the integration tests.
 *
 * Everything here is deterministic given (config, seed, data): batches run
 * in dataset order, gradient sums accumulate in index order, and all
 * randomness flows through the single checkpointed RngStream. Wall-clock
 * timings are the one exception and therefore live in their own CSV.
 */
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qdm/checkpoint.hpp"
#include "qdm/datasets.hpp"
#include "qdm/diffusion.hpp"
#include "qdm/metrics.hpp"

namespace qdm {

/// Mini-batch training loop around one checkpoint.
class TrainSession {
  public:
    /// Fresh run: parameters drawn uniform [0, 2 pi) from the seed stream.
    explicit TrainSession(const RunConfig &config);

    /// Resumes exactly where the checkpoint stopped.
    explicit TrainSession(Checkpoint checkpoint);

    /// One ordered pass over the data; returns the epoch mean loss and
    /// appends it to the checkpoint history.
    double run_epoch(const DatasetSlice &data);

    const Checkpoint &checkpoint() const { return checkpoint_; }
    const CircuitSpec &spec() const { return spec_; }
    const NoiseSchedule &schedule() const { return schedule_; }

  private:
    Checkpoint checkpoint_;
    CircuitSpec spec_;
    NoiseSchedule schedule_;
};

struct TrainOutputs {
    Checkpoint checkpoint;
    std::vector<double> wall_seconds; // one entry per epoch run in this call
};

/// Runs epochs until checkpoint.epoch reaches config.epochs.
TrainOutputs run_training(TrainSession &session, const DatasetSlice &data);

/// Loads the configured dataset (ConfigError when paths are missing).
DatasetSlice load_dataset(const RunConfig &config);

/// Applies a flat key=value run configuration file. Keys mirror the CLI
/// flag names (model, dataset, images, labels, cifar, subset, class,
/// resolution, depth, timesteps, epochs, batch-size, learning-rate, seed,
/// out); '#' starts a comment. cifar may repeat and appends. Unknown keys,
/// malformed numbers, and unreadable files throw ConfigError.
void apply_config_file(RunConfig &config, const std::string &path);

/// Generated images for a checkpoint: one forked RNG stream per image,
/// trajectories of the final frames only.
std::vector<ImageTensor> sample_images(const Checkpoint &checkpoint, int count,
                                       std::uint64_t seed, std::optional<int> label);

/// Pairwise metric summary of two equally long image lists: MSE/SSIM/PSNR
/// averaged over min-max rescaled pairs, Frechet over pixel-feature stats
/// (zero when either side has fewer than two images).
MetricsReport evaluate_pairs(const std::vector<ImageTensor> &reference,
                             const std::vector<ImageTensor> &generated);

struct EvalRow {
    std::string klass; // "0".."9" or "all"
    int count = 0;
    MetricsReport metrics;
};

/// Per-class rows (restricted to config.class_digit when set) plus the
/// pooled aggregate; one generated sample per held-out image.
std::vector<EvalRow> run_eval(const Checkpoint &checkpoint, const DatasetSlice &held_out,
                              std::uint64_t seed);

/// CSV renderings, LF line endings, header row first.
std::string loss_history_csv(const std::vector<double> &losses);
std::string timing_csv(const std::vector<double> &wall_seconds, int first_epoch);
std::string eval_csv(const std::vector<EvalRow> &rows);
std::string params_compare_csv(int n_min, int n_max, int depth);

/// Binary PGM (P5, maxval 255) of the min-max rescaled image.
std::vector<std::uint8_t> encode_pgm(const ImageTensor &image);

void write_text_file(const std::string &path, const std::string &content);
void write_binary_file(const std::string &path, const std::vector<std::uint8_t> &bytes);

/// Command drivers behind the CLI subcommands. resume_path empty means a
/// fresh run. Artifact names under config.output_dir: checkpoint.qdmc,
/// loss.csv, timing.csv, eval.csv, sample_NNN.pgm (+_stepNN.pgm frames).
void cmd_train(const RunConfig &config, const std::string &resume_path);
void cmd_sample(const std::string &checkpoint_path, int count, std::uint64_t seed,
                std::optional<int> label, const std::string &output_dir,
                bool dump_trajectory);
void cmd_eval(const std::string &checkpoint_path, const RunConfig &data_overrides,
              const std::string &output_dir);
void cmd_params_compare(int n_min, int n_max, int depth, const std::string &output_path);

} // namespace qdm
