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

// Linear maps on operators. Two representations:
//
//  * Superoperator: a (d_out^2 x d_in^2) matrix acting on column-stacked
//    operators, vec(A X B) = (B^T (x) A) vec(X). Any linear map, including
//    non-CP intermediate propagators and differences of channels.
//  * QuantumChannel: a completely positive map given by Kraus operators, with
//    the superoperator and Choi matrix cached at construction.

#pragma once

#include "entdyn/linalg.hpp"

#include <string>
#include <vector>

namespace entdyn {

class Superoperator {
 public:
  Superoperator(Matrix m, Index d_in, Index d_out);

  static Superoperator identity(Index d);
  static Superoperator zero(Index d_in, Index d_out);

  Index dim_in() const { return d_in_; }
  Index dim_out() const { return d_out_; }
  const Matrix& matrix() const { return m_; }

  Matrix apply(const Matrix& x) const;
  /// Hilbert-Schmidt adjoint: <Y, N(X)> = <N^dag(Y), X>.
  Superoperator adjoint() const;

  Superoperator operator+(const Superoperator& other) const;
  Superoperator operator-(const Superoperator& other) const;
  Superoperator operator*(double s) const;

 private:
  Matrix m_;
  Index d_in_;
  Index d_out_;
};

/// second o first.
Superoperator compose(const Superoperator& second, const Superoperator& first);

/// sum_{ij} |i><j| (x) N(|i><j|), reference system first.
Matrix choi_of(const Superoperator& n);

struct CptpReport {
  double choi_min_eigenvalue = 0.0;
  double tp_defect = 0.0;  // max-abs entry of Tr_out(Choi) - I
  bool completely_positive = false;
  bool trace_preserving = false;
  bool cptp() const { return completely_positive && trace_preserving; }
};

CptpReport is_cptp(const Superoperator& n, double tol = 1e-10);

enum class UnitalityClass { kUnital, kStrictlySubUnital, kStrictlySuperUnital, kNeither };

std::string to_string(UnitalityClass c);

/// Classifies N(1) - 1 by its eigenvalues. When `restrict_to` is non-empty the
/// comparison is P N(1) P vs P, which is how truncated Fock-space maps are
/// judged on their trusted subspace.
UnitalityClass unitality_class(const Superoperator& n, double tol = 1e-9,
                               const Matrix& restrict_to = Matrix());

enum class TraceBehavior { kPreserving, kNonIncreasing, kOther };

class QuantumChannel {
 public:
  explicit QuantumChannel(std::vector<Matrix> kraus, double tp_tolerance = 1e-10);

  Index dim_in() const { return d_in_; }
  Index dim_out() const { return d_out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  const Superoperator& superoperator() const { return superop_; }
  const Matrix& choi() const { return choi_; }
  TraceBehavior trace_behavior() const { return trace_behavior_; }

  Matrix apply(const Matrix& rho) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  std::vector<Matrix> kraus_;
  Index d_in_ = 0;
  Index d_out_ = 0;
  Superoperator superop_;
  Matrix choi_;
  TraceBehavior trace_behavior_ = TraceBehavior::kOther;
};

/// Kraus set {K_i^dag}.
QuantumChannel adjoint(const QuantumChannel& n);
/// Kraus set {K2_j K1_i}.
QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first);
Matrix choi_of(const QuantumChannel& n);
CptpReport is_cptp(const QuantumChannel& n, double tol = 1e-10);
UnitalityClass unitality_class(const QuantumChannel& n, double tol = 1e-9);

// --- builtin channels -------------------------------------------------------

QuantumChannel identity_channel(Index d);
QuantumChannel unitary_channel(const Matrix& u);

/// Generalised Pauli (Heisenberg-Weyl) operators X^a Z^b, a, b in [0, d),
/// ordered with index a*d + b; element 0 is the identity.
std::vector<Matrix> heisenberg_weyl(Index d);

/// rho -> (1 - q) rho + q Tr{rho} 1/d, q in [0, d^2/(d^2 - 1)].
QuantumChannel depolarizing(Index d, double q);
double depolarizing_max_q(Index d);

/// Four-Kraus generalised amplitude damping channel with p = cos^2(omega t),
/// eta = exp(-t).
QuantumChannel gadc(double t, double omega);

/// Superoperator of gadc(t, omega) written in terms of p and sqrt(eta), which
/// stays well defined (but not CP) for t < 0. Finite-difference stencils use
/// this continuation.
Superoperator gadc_superoperator(double t, double omega);

/// Tr over the discarded factor of H_A (x) H_B.
QuantumChannel partial_trace_channel(Index d_a, Index d_b, Subsystem keep);

/// X -> X^T; positive but not completely positive.
Superoperator transpose_map(Index d);

/// Swap unitary on C^{d_a} (x) C^{d_b} -> C^{d_b} (x) C^{d_a}.
Matrix swap_unitary(Index d_a, Index d_b);

}  // namespace entdyn
