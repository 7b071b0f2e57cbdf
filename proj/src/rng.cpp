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

#include "qdm/rng.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "qdm/errors.hpp"

namespace qdm {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double RngStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::uniform_int(std::uint64_t bound) {
    if (bound == 0) {
        throw StructuralError("uniform_int bound must be positive");
    }
    // Accept only the largest multiple of bound below 2^64.
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t draw = engine_();
        if (draw >= threshold) {
            return draw % bound;
        }
    }
}

namespace {

struct GaussianPair {
    double first;
    double second;
};

GaussianPair box_muller(double u1, double u2) {
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace

double RngStream::gaussian() {
    // Shift the first uniform into (0, 1] so the log is finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return box_muller(u1, u2).first;
}

void RngStream::fill_gaussian(Eigen::Ref<Eigen::VectorXd> out) {
    Eigen::Index i = 0;
    for (; i + 1 < out.size(); i += 2) {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        const GaussianPair pair = box_muller(u1, u2);
        out[i] = pair.first;
        out[i + 1] = pair.second;
    }
    if (i < out.size()) {
        out[i] = gaussian();
    }
}

RngStream RngStream::fork(std::uint64_t stream_id) const {
    return RngStream(splitmix64(base_seed_ + 0x9e3779b97f4a7c15ULL * (stream_id + 1)));
}

void RngStream::save(std::ostream &out) const {
    out << base_seed_ << ' ' << engine_;
}

void RngStream::load(std::istream &in) {
    in >> base_seed_ >> engine_;
}

} // namespace qdm
