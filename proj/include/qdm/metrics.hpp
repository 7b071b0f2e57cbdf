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
 * Image-quality metrics: MSE, single-window SSIM, PSNR, and the Frechet
 * distance over pixel-feature Gaussians.
 *
 * SSIM and PSNR expect inputs already rescaled to [0,1]; min_max_rescale
 * provides that step for unit-norm circuit outputs.
 */
#pragma once

#include <vector>

#include <Eigen/Dense>

#include "qdm/encoding.hpp"
#include "qdm/errors.hpp"

namespace qdm {

struct FeatureStats {
    Eigen::VectorXd mean;
    Eigen::MatrixXd covariance;
    int sample_count = 0;
};

struct MetricsReport {
    double mse = 0.0;
    double ssim = 0.0;
    double psnr_db = 0.0;
    double frechet = 0.0;
};

inline constexpr double kPsnrCapDb = 100.0;

double mse(const ImageTensor &a, const ImageTensor &b);

/// Whole-image SSIM with c1 = (0.01)^2, c2 = (0.03)^2 at dynamic range 1.
double ssim_global(const ImageTensor &a, const ImageTensor &b);

/// 20 log10(1 / sqrt(MSE)) in dB, capped at 100 (identical images hit the
/// cap by definition).
double psnr(const ImageTensor &a, const ImageTensor &b);

/// Affine map of pixels onto [0,1]; constant images map to all zeros.
ImageTensor min_max_rescale(const ImageTensor &image);

/// Mean and unbiased sample covariance over flattened pixel vectors.
FeatureStats pixel_feature_stats(const std::vector<ImageTensor> &images);

/// ||mu_r - mu_g||^2 + Tr(S_r + S_g - 2 (S_r S_g)^{1/2}), the matrix root
/// taken through the symmetric product S_r^{1/2} S_g S_r^{1/2} with a 1e-10
/// ridge on both covariances; clamped at zero from below.
double frechet_distance(const FeatureStats &real_stats, const FeatureStats &gen_stats);

} // namespace qdm
