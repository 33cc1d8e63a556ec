// SPDX-License-Identifier: Apache-2.0
//
// milac-kit: capacity-achieving MiLAC architectures for MIMO systems
// Copyright (C) 2026 milac-kit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace milac {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad indices, duplicate entries, broken invariants.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Non-conformable matrix or problem dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A factorization hit a (near-)singular matrix.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

// A*X = C has no symmetric solution; carries the two solvability residuals
// (commutator ||A C^T - C A^T||_F and range ||U2^T C||_F).
class NoSymmetricSolution : public Error {
 public:
  NoSymmetricSolution(const std::string& what, double commutator, double range)
      : Error(what), commutator_(commutator), range_(range) {}
  double commutator_residual() const noexcept { return commutator_; }
  double range_residual() const noexcept { return range_; }

 private:
  double commutator_;
  double range_;
};

// The singular-vector target is degenerate for the closed-form stem solution
// (rank-deficient imaginary part). column() is the 0-based antenna column of
// the failing [J1, j_k] system, or -1 when J1 itself is rank deficient.
class DegenerateTarget : public Error {
 public:
  DegenerateTarget(const std::string& what, int column)
      : Error(what), column_(column) {}
  int column() const noexcept { return column_; }

 private:
  int column_;
};

// Text/binary input could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace milac
