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
 * Forward noising chain, training-pair construction, and reverse sampling.
 *
 * Two timestep indexings coexist: the forward chain counts noise levels
 * t = 0 (clean) .. T (most noised), while a sampling trajectory runs
 * x_0 (noise) .. x_T (generated image). reverse_step_timestep maps a
 * trajectory step onto the noise level the circuit was trained to remove,
 * so training and sampling embed identical timesteps.
 */
#pragma once

#include <optional>
#include <vector>

#include "qdm/circuits.hpp"
#include "qdm/encoding.hpp"
#include "qdm/rng.hpp"

namespace qdm {

struct NoiseSchedule {
    int timesteps = 0;        // T
    Eigen::VectorXd beta;     // entry t-1 holds beta_t, t = 1..T
    Eigen::VectorXd alpha;    // 1 - beta
    Eigen::VectorXd alpha_bar; // cumulative products of alpha

    /// Classic DDPM linear ramp.
    static NoiseSchedule linear(int timesteps, double beta_start = 1e-4,
                                double beta_end = 0.02);

    /// Validates beta in [0, 1) (zero allowed for degenerate test
    /// schedules) and precomputes alpha and alpha_bar.
    static NoiseSchedule from_betas(const Eigen::VectorXd &betas);

    /// Cumulative product at noise level t, with alpha_bar(0) = 1.
    double alpha_bar_at(int t) const;
};

/// Clamps negatives to zero then L2-normalizes; norm_scale records the
/// divisor. Throws EncodingError when nothing positive remains.
ImageTensor normalize_clamped(ImageTensor image);

/// One chain step: sqrt(alpha_t) x + sqrt(1 - alpha_t) eps, not renormalized.
ImageTensor forward_diffuse_step(const ImageTensor &x, int t,
                                 const NoiseSchedule &schedule, RngStream &rng);

/// Closed form of t chained steps: sqrt(abar_t) x0 + sqrt(1 - abar_t) eps.
ImageTensor forward_diffuse_to(const ImageTensor &x0, int t,
                               const NoiseSchedule &schedule, RngStream &rng);

struct TrainingPair {
    ImageTensor input;  // noise level t, clamped and normalized
    ImageTensor target; // noise level t-1 from the same draw
};

/// Builds (x_t, x_{t-1}) from one shared noise draw, both normalize+ed.
/// Degenerate all-zero clamps trigger a bounded resample (16 tries) before
/// an EncodingError.
TrainingPair make_training_pair(const ImageTensor &x0, int t,
                                const NoiseSchedule &schedule, RngStream &rng);

/// Noise level embedded at sampling step s (1-based): step 1 removes the
/// heaviest noise, step T the lightest.
int reverse_step_timestep(int step, int total_timesteps);

/// Full denoising trajectory of length T+1, element 0 the normalized
/// Gaussian start and element T the generated image. Each step encodes the
/// previous frame, runs the circuit at the mapped timestep, and decodes.
std::vector<ImageTensor> reverse_sample(const CircuitSpec &spec,
                                        const Eigen::VectorXd &angles,
                                        const NoiseSchedule &schedule, RngStream &rng,
                                        std::optional<int> label, int width,
                                        int height);

} // namespace qdm
