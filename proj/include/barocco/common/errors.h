// Copyright 2026 The BAROCCO Authors
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

#ifndef BAROCCO_COMMON_ERRORS_H_
#define BAROCCO_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace barocco {

// Base class for every error raised by the library. The subclasses map onto
// the error kinds named by each module's contract.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid or inconsistent configuration (unknown key, lambda out of range...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Mismatched widths, agent counts or action counts.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Non-finite values, singular systems, nonpositive ratios.
class NumericError : public Error {
 public:
  using Error::Error;
};

// API misuse: stale caches, empty batches.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace barocco

#endif  // BAROCCO_COMMON_ERRORS_H_
