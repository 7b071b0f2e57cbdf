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
 * qdm command-line interface: train, sample, eval, params-compare.
 *
 * Every failure exits nonzero with a single line on stderr of the form
 * "error: <category>: <reason>".
 */

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qdm/harness.hpp"

namespace {

std::string single_line(std::string text) {
    for (char &c : text) {
        if (c == '\n' || c == '\r') {
            c = ' ';
        }
    }
    return text;
}

void add_dataset_options(CLI::App *cmd, qdm::RunConfig &config) {
    cmd->add_option("--dataset", config.dataset, "Dataset: mnist or cifar10");
    cmd->add_option("--images", config.images_path, "IDX image file (mnist)");
    cmd->add_option("--labels", config.labels_path, "IDX label file (mnist)");
    cmd->add_option("--cifar", config.cifar_batches, "CIFAR-10 batch file(s)");
    cmd->add_option("--subset", config.subset_size,
                    "Max records to use (0 keeps everything)");
    cmd->add_option("--class", config.class_digit, "Keep a single digit class 0..9");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum diffusion engine (statevector simulation)"};
    app.require_subcommand(1);

    qdm::RunConfig train_config;
    std::string resume_path;
    std::string config_path;
    CLI::App *train = app.add_subcommand("train", "Train a model and write a checkpoint");
    train->add_option("--config", config_path, "Flat key=value configuration file");
    train->add_option("--model", train_config.model, "Model layout: eeqdm or qddm");
    add_dataset_options(train, train_config);
    train->add_option("--resolution", train_config.resolution, "Image resolution 8|16|32");
    train->add_option("--depth", train_config.depth, "PQC layer count");
    train->add_option("--timesteps", train_config.timesteps, "Diffusion timesteps T");
    train->add_option("--epochs", train_config.epochs, "Total epochs to reach");
    train->add_option("--batch-size", train_config.batch_size, "Mini-batch size");
    train->add_option("--learning-rate", train_config.learning_rate, "Adam learning rate");
    train->add_option("--seed", train_config.seed, "Run seed");
    train->add_option("--out", train_config.output_dir, "Output directory");
    train->add_option("--resume", resume_path, "Continue from an existing checkpoint");
    train->callback([&] {
        qdm::RunConfig config;
        if (!config_path.empty()) {
            qdm::apply_config_file(config, config_path);
        }
        // Command-line flags override config-file values.
        if (train->count("--model") > 0) {
            config.model = train_config.model;
        }
        if (train->count("--dataset") > 0) {
            config.dataset = train_config.dataset;
        }
        if (train->count("--images") > 0) {
            config.images_path = train_config.images_path;
        }
        if (train->count("--labels") > 0) {
            config.labels_path = train_config.labels_path;
        }
        if (train->count("--cifar") > 0) {
            config.cifar_batches = train_config.cifar_batches;
        }
        if (train->count("--subset") > 0) {
            config.subset_size = train_config.subset_size;
        }
        if (train->count("--class") > 0) {
            config.class_digit = train_config.class_digit;
        }
        if (train->count("--resolution") > 0) {
            config.resolution = train_config.resolution;
        }
        if (train->count("--depth") > 0) {
            config.depth = train_config.depth;
        }
        if (train->count("--timesteps") > 0) {
            config.timesteps = train_config.timesteps;
        }
        if (train->count("--epochs") > 0) {
            config.epochs = train_config.epochs;
        }
        if (train->count("--batch-size") > 0) {
            config.batch_size = train_config.batch_size;
        }
        if (train->count("--learning-rate") > 0) {
            config.learning_rate = train_config.learning_rate;
        }
        if (train->count("--seed") > 0) {
            config.seed = train_config.seed;
        }
        if (train->count("--out") > 0) {
            config.output_dir = train_config.output_dir;
        }
        qdm::cmd_train(config, resume_path);
    });

    std::string sample_checkpoint;
    std::string sample_out = ".";
    int sample_count = 1;
    std::uint64_t sample_seed = 1;
    int sample_label = -1;
    bool dump_trajectory = false;
    CLI::App *sample = app.add_subcommand("sample", "Generate images from a checkpoint");
    sample->add_option("--checkpoint", sample_checkpoint, "Checkpoint file")->required();
    sample->add_option("--count", sample_count, "Number of images");
    sample->add_option("--seed", sample_seed, "Sampling seed");
    sample->add_option("--label", sample_label, "Class label to condition on")
        ->check(CLI::Range(0, 9));
    sample->add_option("--out", sample_out, "Output directory");
    sample->add_flag("--trajectory", dump_trajectory, "Also write per-step frames");
    sample->callback([&] {
        std::optional<int> label;
        if (sample_label >= 0) {
            label = sample_label;
        }
        qdm::cmd_sample(sample_checkpoint, sample_count, sample_seed, label, sample_out,
                        dump_trajectory);
    });

    std::string eval_checkpoint;
    std::string eval_out = ".";
    qdm::RunConfig eval_overrides;
    CLI::App *eval = app.add_subcommand("eval", "Score generated images against data");
    eval->add_option("--checkpoint", eval_checkpoint, "Checkpoint file")->required();
    add_dataset_options(eval, eval_overrides);
    CLI::Option *eval_seed_opt =
        eval->add_option("--seed", eval_overrides.seed, "Sampling seed for evaluation");
    eval->add_option("--out", eval_out, "Output directory");
    eval->callback([&] {
        const qdm::Checkpoint checkpoint = qdm::load_checkpoint(eval_checkpoint);
        qdm::RunConfig config = checkpoint.config;
        if (eval->count("--dataset") > 0) {
            config.dataset = eval_overrides.dataset;
        }
        if (eval->count("--images") > 0) {
            config.images_path = eval_overrides.images_path;
        }
        if (eval->count("--labels") > 0) {
            config.labels_path = eval_overrides.labels_path;
        }
        if (eval->count("--cifar") > 0) {
            config.cifar_batches = eval_overrides.cifar_batches;
        }
        if (eval->count("--subset") > 0) {
            config.subset_size = eval_overrides.subset_size;
        }
        if (eval->count("--class") > 0) {
            config.class_digit = eval_overrides.class_digit;
        }
        if (eval_seed_opt->count() > 0) {
            config.seed = eval_overrides.seed;
        }
        qdm::cmd_eval(eval_checkpoint, config, eval_out);
    });

    int n_min = 8;
    int n_max = 18;
    int compare_depth = 10;
    std::string compare_out;
    CLI::App *compare =
        app.add_subcommand("params-compare", "Tabulate EEQDM vs QDDM parameter counts");
    compare->add_option("--n-min", n_min, "Smallest even data-qubit count");
    compare->add_option("--n-max", n_max, "Largest even data-qubit count");
    compare->add_option("--depth", compare_depth, "PQC layer count");
    compare->add_option("--out", compare_out, "Output CSV path (stdout when omitted)");
    compare->callback(
        [&] { qdm::cmd_params_compare(n_min, n_max, compare_depth, compare_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &help) {
        return app.exit(help);
    } catch (const CLI::ParseError &err) {
        std::cerr << "error: usage: " << single_line(err.what()) << '\n';
        return 1;
    } catch (const qdm::ConfigError &err) {
        std::cerr << "error: config: " << single_line(err.what()) << '\n';
        return 1;
    } catch (const qdm::FormatError &err) {
        std::cerr << "error: format: " << single_line(err.what()) << '\n';
        return 1;
    } catch (const qdm::EncodingError &err) {
        std::cerr << "error: encoding: " << single_line(err.what()) << '\n';
        return 1;
    } catch (const qdm::StructuralError &err) {
        std::cerr << "error: structural: " << single_line(err.what()) << '\n';
        return 1;
    } catch (const std::exception &err) {
        std::cerr << "error: internal: " << single_line(err.what()) << '\n';
        return 1;
    }
    return 0;
}
