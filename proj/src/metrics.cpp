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

#include "qdm/metrics.hpp"

#include <cmath>

namespace qdm {

namespace {

constexpr double kSsimC1 = 0.01 * 0.01;
constexpr double kSsimC2 = 0.03 * 0.03;
constexpr double kCovarianceRidge = 1e-10;

void check_same_shape(const ImageTensor &a, const ImageTensor &b) {
    if (a.width != b.width || a.height != b.height ||
        a.pixels.size() != b.pixels.size()) {
        throw StructuralError("image shapes differ");
    }
}

/// Positive-semidefinite square root via eigendecomposition; negative
/// eigenvalues from roundoff are clamped to zero.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd &matrix) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
    if (solver.info() != Eigen::Success) {
        throw StructuralError("covariance eigendecomposition failed");
    }
    const Eigen::VectorXd roots =
        solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return solver.eigenvectors() * roots.asDiagonal() *
           solver.eigenvectors().transpose();
}

} // namespace

double mse(const ImageTensor &a, const ImageTensor &b) {
    check_same_shape(a, b);
    return (a.pixels - b.pixels).squaredNorm() / static_cast<double>(a.pixels.size());
}

double ssim_global(const ImageTensor &a, const ImageTensor &b) {
    check_same_shape(a, b);
    const double n = static_cast<double>(a.pixels.size());
    const double mu_a = a.pixels.mean();
    const double mu_b = b.pixels.mean();
    const Eigen::ArrayXd da = a.pixels.array() - mu_a;
    const Eigen::ArrayXd db = b.pixels.array() - mu_b;
    const double var_a = (da * da).sum() / n;
    const double var_b = (db * db).sum() / n;
    const double cov = (da * db).sum() / n;
    return ((2.0 * mu_a * mu_b + kSsimC1) * (2.0 * cov + kSsimC2)) /
           ((mu_a * mu_a + mu_b * mu_b + kSsimC1) * (var_a + var_b + kSsimC2));
}

double psnr(const ImageTensor &a, const ImageTensor &b) {
    const double err = mse(a, b);
    if (err == 0.0) {
        return kPsnrCapDb;
    }
    return std::min(kPsnrCapDb, -10.0 * std::log10(err));
}

ImageTensor min_max_rescale(const ImageTensor &image) {
    ImageTensor out = image;
    const double lo = image.pixels.minCoeff();
    const double hi = image.pixels.maxCoeff();
    if (hi > lo) {
        out.pixels = (image.pixels.array() - lo) / (hi - lo);
    } else {
        out.pixels.setZero();
    }
    return out;
}

FeatureStats pixel_feature_stats(const std::vector<ImageTensor> &images) {
    if (images.size() < 2) {
        throw StructuralError("feature stats need at least two images");
    }
    const Eigen::Index dim = images.front().pixels.size();
    for (const ImageTensor &image : images) {
        if (image.pixels.size() != dim) {
            throw StructuralError("feature stats need uniformly shaped images");
        }
    }
    FeatureStats stats;
    stats.sample_count = static_cast<int>(images.size());
    stats.mean = Eigen::VectorXd::Zero(dim);
    for (const ImageTensor &image : images) {
        stats.mean += image.pixels;
    }
    stats.mean /= static_cast<double>(images.size());
    stats.covariance = Eigen::MatrixXd::Zero(dim, dim);
    for (const ImageTensor &image : images) {
        const Eigen::VectorXd centered = image.pixels - stats.mean;
        stats.covariance.noalias() += centered * centered.transpose();
    }
    stats.covariance /= static_cast<double>(images.size() - 1);
    return stats;
}

double frechet_distance(const FeatureStats &real_stats, const FeatureStats &gen_stats) {
    if (real_stats.mean.size() != gen_stats.mean.size() ||
        real_stats.covariance.rows() != gen_stats.covariance.rows() ||
        real_stats.covariance.cols() != gen_stats.covariance.cols()) {
        throw StructuralError("feature stats dimensions differ");
    }
    if (!real_stats.covariance.allFinite() || !gen_stats.covariance.allFinite() ||
        !real_stats.mean.allFinite() || !gen_stats.mean.allFinite()) {
        throw StructuralError("feature stats contain non-finite entries");
    }
    const Eigen::Index dim = real_stats.mean.size();
    const Eigen::MatrixXd ridge =
        kCovarianceRidge * Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd sigma_r = real_stats.covariance + ridge;
    const Eigen::MatrixXd sigma_g = gen_stats.covariance + ridge;

    const Eigen::MatrixXd root_r = psd_sqrt(sigma_r);
    Eigen::MatrixXd product = root_r * sigma_g * root_r;
    product = 0.5 * (product + product.transpose()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(product);
    if (solver.info() != Eigen::Success) {
        throw StructuralError("covariance eigendecomposition failed");
    }
    const double trace_root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();

    const double mean_term = (real_stats.mean - gen_stats.mean).squaredNorm();
    const double value =
        mean_term + sigma_r.trace() + sigma_g.trace() - 2.0 * trace_root;
    return std::max(0.0, value);
}

} // namespace qdm
