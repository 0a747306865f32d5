// Copyright 2026 The entdyn Authors
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

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace entdyn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr Complex kI{0.0, 1.0};

// Error hierarchy. Every failure raised by the library derives from Error so
// callers can catch one type at the boundary (the CLI does this).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not compose (d_out != d_in, d_A*d_B != dim, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A parameter lies outside its documented range.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A structural precondition on an operator or map failed (not Hermitian,
// not unital, not full rank, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Numerical procedure failed to meet its accuracy contract.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A truncated Fock-space computation left its trusted subspace.
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace entdyn
