// Copyright 2026 The qensemble Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qens {

/// Base class for every error raised by the library. The CLI maps these to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A request exceeds a size limit (qubit count, dense-matrix budget, trajectory count).
struct CapacityError : Error {
    using Error::Error;
};

/// Malformed arguments: non-unitary matrices, overlapping qubit indices, mismatched sizes.
struct ValidationError : Error {
    using Error::Error;
};

/// A feature vector cannot be written into a qubit (zero norm, non-finite component).
struct EncodingError : Error {
    using Error::Error;
};

/// A qubit or data index outside its valid range.
struct IndexError : Error {
    using Error::Error;
};

/// Undefined mathematical input such as the cosine of a zero vector.
struct DomainError : Error {
    using Error::Error;
};

/// Unreadable input file. The message carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string &message, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + message), line_(line) {
    }
    std::size_t line() const {
        return line_;
    }

   private:
    std::size_t line_;
};

}  // namespace qens
