// Copyright 2026 The mlqcvv Authors
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

#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mlqcvv {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A computed quantity left its physically or mathematically valid range.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver hit its iteration cap without a verified answer.
class UnresolvedError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A file could not be read, parsed or written.
class DataError : public Error {
 public:
  using Error::Error;
};

// Feature data is stored one sample per row.
using DataMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Labels = std::vector<int>;

/// Label convention: +1 = coherent noise, -1 = stochastic noise.
inline constexpr int kCoherentLabel = 1;
inline constexpr int kStochasticLabel = -1;

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Counter-based seed derivation: the seed of a task is a pure function of
/// the master seed and the task's coordinates, never of scheduling order.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path);

/// Number of worker threads, read from MLQCVV_WORKERS (default 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over the worker pool. Results must be written
/// by index; the first exception (lowest index) is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = 0);

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InvalidArgument(message);
}

}  // namespace mlqcvv
