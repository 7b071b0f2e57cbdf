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
 * Deterministic random stream: mt19937_64 plus an explicit Box-Muller
 * transform.
 *
 * std::normal_distribution is implementation-defined, so Gaussians are
 * produced by hand here. Every gaussian() call consumes exactly two engine
 * draws and nothing is cached between calls, which keeps the stream state a
 * pure function of the draw count and makes checkpoint resume bit-exact.
 */
#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>

#include <Eigen/Core>

namespace qdm {

std::uint64_t splitmix64(std::uint64_t x);

class RngStream {
  public:
    RngStream() : RngStream(0) {}
    explicit RngStream(std::uint64_t seed) : base_seed_(seed), engine_(seed) {}

    std::uint64_t base_seed() const { return base_seed_; }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, bound), rejection sampled so every value is
    /// equally likely. bound must be positive.
    std::uint64_t uniform_int(std::uint64_t bound);

    /// Standard normal draw; consumes exactly two engine outputs.
    double gaussian();

    /// Fills out with standard normals, using both Box-Muller outputs of
    /// each pair. An odd tail discards the spare second output.
    void fill_gaussian(Eigen::Ref<Eigen::VectorXd> out);

    /// Independent child stream; deterministic in (base seed, stream id).
    RngStream fork(std::uint64_t stream_id) const;

    /// Text round trip of the full engine state.
    void save(std::ostream &out) const;
    void load(std::istream &in);

    friend bool operator==(const RngStream &a, const RngStream &b) {
        return a.base_seed_ == b.base_seed_ && a.engine_ == b.engine_;
    }

  private:
    std::uint64_t base_seed_;
    std::mt19937_64 engine_;
};

} // namespace qdm
