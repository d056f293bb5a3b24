// Copyright 2026 The qfi-probe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace qfiprobe {

/// Base class for all qfi-probe errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix expected to be Hermitian is not (within tolerance).
struct NonHermitianError : Error {
    using Error::Error;
};

/// The derivative leaves the support of the state; the family is not
/// differentiable there and no score operator exists.
struct InconsistentDerivativeError : Error {
    using Error::Error;
};

struct ThetaOutOfRangeError : Error {
    using Error::Error;
};

struct NotNormalizedError : Error {
    using Error::Error;
};

/// Scheme parameters that the model does not define (e.g. ancilla
/// depolarization combined with probe re-circulation).
struct UnsupportedCombinationError : Error {
    using Error::Error;
};

/// Zero eigenvalue with nonzero derivative in a quasi-classical family.
struct ZeroEigenvalueError : Error {
    using Error::Error;
};

struct DivergentError : Error {
    using Error::Error;
};

struct DegenerateDenominatorError : Error {
    using Error::Error;
};

struct NoRootFoundError : Error {
    using Error::Error;
};

struct SingularSystemError : Error {
    using Error::Error;
};

/// A Schmidt coefficient is exactly zero where a strictly positive one is
/// required.
struct ZeroCoefficientError : Error {
    using Error::Error;
};

/// Measurement outcome with vanishing probability but non-vanishing
/// derivative; its Fisher contribution diverges.
struct DegenerateOutcomeError : Error {
    using Error::Error;
};

}  // namespace qfiprobe
