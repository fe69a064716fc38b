// Copyright 2026 The specq authors
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

namespace specq {

/// Base class for all specq errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct IndexError : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};
struct ShapeError : Error {
    using Error::Error;
};
struct ValidationError : Error {
    using Error::Error;
};
struct RangeError : Error {
    using Error::Error;
};
struct SingularFilterError : Error {
    using Error::Error;
};
struct DegenerateReferenceError : Error {
    using Error::Error;
};
struct DegenerateInputError : Error {
    using Error::Error;
};
struct OracleDomainError : Error {
    using Error::Error;
};
struct PrecisionCeilingError : Error {
    using Error::Error;
};
struct NormalizationError : Error {
    using Error::Error;
};
struct PostSelectionFailure : Error {
    using Error::Error;
};
struct UsageError : Error {
    using Error::Error;
};

}  // namespace specq
