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
#pragma once

#include <stdexcept>
#include <string>

namespace qdm {

/// Malformed gate programs, bad qubit indices, mismatched array lengths.
class StructuralError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Failures on the classical/quantum data bridge (zero-norm input,
/// register capacity, negative pixel values).
class EncodingError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid model, schedule, or run configuration.
class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed binary inputs: IDX files, CIFAR-10 batches, checkpoints.
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qdm
