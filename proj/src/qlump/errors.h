// Copyright 2026 The qlump Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QLUMP_ERRORS_H
#define QLUMP_ERRORS_H

#include <stdexcept>
#include <string>

namespace qlump {

/// Base class of every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// linalg
struct NotHermitian : Error {
    using Error::Error;
};
struct NoConvergence : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};

// qstate
struct ZeroVector : Error {
    using Error::Error;
};
struct IndexOutOfRange : Error {
    using Error::Error;
};
struct UnknownLabel : Error {
    using Error::Error;
};
struct InvalidPartition : Error {
    using Error::Error;
};
struct InvalidState : Error {
    using Error::Error;
};
struct NegativeGamma : Error {
    using Error::Error;
};
struct ZeroProbabilityBranch : Error {
    using Error::Error;
};

// strobe / witness
struct CapExceeded : Error {
    using Error::Error;
};
struct LabelMismatch : Error {
    using Error::Error;
};
struct PreparationUnavailable : Error {
    using Error::Error;
};

// models
struct OddN : Error {
    using Error::Error;
};
struct NTooSmall : Error {
    using Error::Error;
};

}  // namespace qlump

#endif
