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

#include "qdm/diffusion.hpp"

#include <cmath>

#include "qdm/gates.hpp"

namespace qdm {

namespace {

constexpr int kMaxResampleTries = 16;

void check_timestep(int t, const NoiseSchedule &schedule) {
    if (t < 1 || t > schedule.timesteps) {
        throw ConfigError("timestep out of schedule range");
    }
}

ImageTensor noised(const ImageTensor &x, double signal_scale, double noise_scale,
                   const Eigen::VectorXd &eps) {
    ImageTensor out;
    out.width = x.width;
    out.height = x.height;
    out.pixels = signal_scale * x.pixels + noise_scale * eps;
    return out;
}

} // namespace

NoiseSchedule NoiseSchedule::linear(int timesteps, double beta_start, double beta_end) {
    if (timesteps < 1) {
        throw ConfigError("schedule needs at least one timestep");
    }
    Eigen::VectorXd betas(timesteps);
    if (timesteps == 1) {
        betas[0] = beta_start;
    } else {
        for (int i = 0; i < timesteps; ++i) {
            betas[i] = beta_start +
                       (beta_end - beta_start) * static_cast<double>(i) /
                           static_cast<double>(timesteps - 1);
        }
    }
    return from_betas(betas);
}

NoiseSchedule NoiseSchedule::from_betas(const Eigen::VectorXd &betas) {
    if (betas.size() < 1) {
        throw ConfigError("schedule needs at least one timestep");
    }
    NoiseSchedule schedule;
    schedule.timesteps = static_cast<int>(betas.size());
    schedule.beta = betas;
    schedule.alpha.resize(betas.size());
    schedule.alpha_bar.resize(betas.size());
    double product = 1.0;
    for (Eigen::Index i = 0; i < betas.size(); ++i) {
        if (!std::isfinite(betas[i]) || betas[i] < 0.0 || betas[i] >= 1.0) {
            throw ConfigError("beta values must lie in [0, 1)");
        }
        schedule.alpha[i] = 1.0 - betas[i];
        product *= schedule.alpha[i];
        schedule.alpha_bar[i] = product;
    }
    return schedule;
}

double NoiseSchedule::alpha_bar_at(int t) const {
    if (t == 0) {
        return 1.0;
    }
    check_timestep(t, *this);
    return alpha_bar[t - 1];
}

ImageTensor normalize_clamped(ImageTensor image) {
    if (image.pixels.size() == 0) {
        throw EncodingError("cannot normalize an empty image");
    }
    image.pixels = image.pixels.cwiseMax(0.0);
    const double norm = image.pixels.norm();
    if (norm == 0.0 || !std::isfinite(norm)) {
        throw EncodingError("image has no positive mass after clamping");
    }
    image.pixels /= norm;
    image.norm_scale = norm;
    return image;
}

ImageTensor forward_diffuse_step(const ImageTensor &x, int t,
                                 const NoiseSchedule &schedule, RngStream &rng) {
    check_timestep(t, schedule);
    Eigen::VectorXd eps(x.pixels.size());
    rng.fill_gaussian(eps);
    const double alpha = schedule.alpha[t - 1];
    return noised(x, std::sqrt(alpha), std::sqrt(1.0 - alpha), eps);
}

ImageTensor forward_diffuse_to(const ImageTensor &x0, int t,
                               const NoiseSchedule &schedule, RngStream &rng) {
    check_timestep(t, schedule);
    Eigen::VectorXd eps(x0.pixels.size());
    rng.fill_gaussian(eps);
    const double abar = schedule.alpha_bar_at(t);
    return noised(x0, std::sqrt(abar), std::sqrt(1.0 - abar), eps);
}

TrainingPair make_training_pair(const ImageTensor &x0, int t,
                                const NoiseSchedule &schedule, RngStream &rng) {
    check_timestep(t, schedule);
    const double abar_t = schedule.alpha_bar_at(t);
    const double abar_prev = schedule.alpha_bar_at(t - 1);
    Eigen::VectorXd eps(x0.pixels.size());
    for (int attempt = 0; attempt < kMaxResampleTries; ++attempt) {
        rng.fill_gaussian(eps);
        const ImageTensor raw_input =
            noised(x0, std::sqrt(abar_t), std::sqrt(1.0 - abar_t), eps);
        const ImageTensor raw_target =
            noised(x0, std::sqrt(abar_prev), std::sqrt(1.0 - abar_prev), eps);
        try {
            TrainingPair pair;
            pair.input = normalize_clamped(raw_input);
            pair.target = normalize_clamped(raw_target);
            return pair;
        } catch (const EncodingError &) {
            // All mass clamped away; redraw the shared noise.
        }
    }
    throw EncodingError("training pair degenerate after bounded resampling");
}

int reverse_step_timestep(int step, int total_timesteps) {
    if (step < 1 || step > total_timesteps) {
        throw ConfigError("sampling step out of range");
    }
    return total_timesteps - step + 1;
}

std::vector<ImageTensor> reverse_sample(const CircuitSpec &spec,
                                        const Eigen::VectorXd &angles,
                                        const NoiseSchedule &schedule, RngStream &rng,
                                        std::optional<int> label, int width,
                                        int height) {
    validate(spec);
    ImageTensor frame;
    frame.width = width;
    frame.height = height;
    frame.pixels.resize(static_cast<Eigen::Index>(width) * height);

    std::vector<ImageTensor> trajectory;
    trajectory.reserve(static_cast<std::size_t>(schedule.timesteps) + 1);
    for (int attempt = 0;; ++attempt) {
        rng.fill_gaussian(frame.pixels);
        try {
            trajectory.push_back(normalize_clamped(frame));
            break;
        } catch (const EncodingError &) {
            if (attempt + 1 >= kMaxResampleTries) {
                throw;
            }
        }
    }

    for (int step = 1; step <= schedule.timesteps; ++step) {
        const int t = reverse_step_timestep(step, schedule.timesteps);
        const std::vector<GateOp> program =
            build_full_program(spec, t, schedule.timesteps, label);
        StateVector<double> state =
            amplitude_encode(trajectory.back(), spec.total_qubits());
        apply_circuit_in_place(state, std::span<const GateOp>(program), angles);
        trajectory.push_back(decode_state(state, width, height));
    }
    return trajectory;
}

} // namespace qdm
