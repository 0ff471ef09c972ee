// Copyright 2026 The Authors.
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

#ifndef LEADSEL_ERRORS_H_
#define LEADSEL_ERRORS_H_

#include <stdexcept>
#include <string>

namespace leadsel {

// Base class for every error raised by the library. Callers that only care
// about "did it work" catch this; the subclasses exist for tests and for the
// bench harness, which records failed cells by message.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations: bad sizes, out-of-range indices, invalid params.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A factorization hit a (near-)zero pivot, or a Woodbury removal would leave
// a singular matrix.
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// A random generator could not produce a connected graph within its retry
// budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace leadsel

#endif  // LEADSEL_ERRORS_H_
