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

// Dense Hermitian linear algebra on density operators: spectral data, matrix
// functions restricted to the support, entropies, Schatten norms and partial
// traces. All logarithms are natural, so entropies are in nats.

#pragma once

#include "entdyn/types.hpp"

#include <limits>
#include <string_view>

namespace entdyn {

/// Numerical thresholds shared by the spectral routines.
struct LinalgTolerances {
  /// Eigenvalues with lambda <= zero_threshold * lambda_max count as zero.
  double zero_threshold = 1e-12;
  /// Inputs whose anti-Hermitian part exceeds this (max-abs entry) are rejected;
  /// smaller asymmetries are removed by (A + A^dag) / 2.
  double hermitian_tolerance = 1e-10;
  /// Tr{(1 - Pi_sigma) rho} above this means supp(rho) is not inside supp(sigma).
  double support_tolerance = 1e-10;
};

inline const LinalgTolerances kDefaultTolerances{};

/// Returns (A + A^dag)/2, or throws PreconditionError if A is further than
/// `tol` (max-abs entry) from Hermitian.
Matrix hermitize(const Matrix& a, double tol = kDefaultTolerances.hermitian_tolerance);

/// Largest |A - A^dag| entry.
double hermiticity_defect(const Matrix& a);

struct EigenSystem {
  RealVector values;  // descending
  Matrix vectors;     // columns are the matching eigenvectors
};

EigenSystem spectral_decompose(const Matrix& a,
                               const LinalgTolerances& tol = kDefaultTolerances);

struct SupportProjector {
  Matrix projector;
  int rank = 0;
};

SupportProjector support_projector(const Matrix& rho,
                                   const LinalgTolerances& tol = kDefaultTolerances);

/// sum_{lambda_k > threshold} log(lambda_k) |k><k|, zero on the kernel.
Matrix matrix_log_on_support(const Matrix& rho,
                             const LinalgTolerances& tol = kDefaultTolerances);

/// Applies f to the eigenvalues of a Hermitian matrix.
template <typename F>
Matrix matrix_function(const EigenSystem& es, F&& f) {
  RealVector mapped(es.values.size());
  for (Index k = 0; k < es.values.size(); ++k) mapped(k) = f(es.values(k));
  return es.vectors * mapped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

/// -sum lambda log lambda with 0 log 0 = 0.
double von_neumann_entropy(const Matrix& rho,
                           const LinalgTolerances& tol = kDefaultTolerances);

/// A real number or +infinity. Relative entropies use this so that support
/// violations cannot leak into arithmetic as IEEE infinities.
class ExtendedReal {
 public:
  static ExtendedReal finite(double v) { return ExtendedReal(false, v); }
  static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }
  /// Throws DomainError when infinite.
  double value() const;

  friend bool operator==(const ExtendedReal&, const ExtendedReal&) = default;

 private:
  ExtendedReal(bool inf, double v) : infinite_(inf), value_(v) {}
  bool infinite_;
  double value_;
};

/// D(rho||sigma) in nats. Full-rank pairs use Tr{rho(log rho - log sigma)};
/// otherwise the spectral double sum over |<phi_i|psi_j>|^2.
ExtendedReal relative_entropy(const Matrix& rho, const Matrix& sigma,
                              const LinalgTolerances& tol = kDefaultTolerances);

inline constexpr double kSchattenInfinity = std::numeric_limits<double>::infinity();

/// (sum_i s_i^p)^(1/p) over singular values; p = kSchattenInfinity gives the
/// operator norm. Throws DomainError for p < 1.
double schatten_norm(const Matrix& a, double p);

/// Trace norm of a Hermitian matrix via its eigenvalues.
double trace_norm_hermitian(const Matrix& a);

enum class Subsystem { kA, kB };

/// Partial trace of an operator on H_A (x) H_B, keeping `keep`.
Matrix partial_trace(const Matrix& rho_ab, Index d_a, Index d_b, Subsystem keep);

Matrix kron(const Matrix& a, const Matrix& b);

/// Scalar functions supported by trace_function_derivative.
struct TraceFunction {
  enum class Kind { kXLogX, kPower };
  Kind kind = Kind::kXLogX;
  double h = 0.0;  // exponent offset for x^{1+h}

  static TraceFunction x_log_x() { return {Kind::kXLogX, 0.0}; }
  static TraceFunction power(double h) { return {Kind::kPower, h}; }
  /// Parses "xlogx" or "power:<h>"; DomainError otherwise.
  static TraceFunction parse(std::string_view tag);

  double value(double x) const;
};

/// d/ds Tr{f(A + s A_dot)} at s = 0, i.e. Tr{f'(A) A_dot} with f' evaluated on
/// supp(A).
double trace_function_derivative(const Matrix& a, const Matrix& a_dot, TraceFunction f,
                                 const LinalgTolerances& tol = kDefaultTolerances);

/// Tr{f(A)} evaluated spectrally.
double trace_function(const Matrix& a, TraceFunction f);

/// Validated density operator: Hermitian, PSD and unit trace (or flagged as
/// sub-normalized when 0 < Tr <= 1).
class DensityMatrix {
 public:
  struct Tolerances {
    double psd = 1e-8;
    double trace = 1e-8;
    double hermitian = 1e-10;
  };

  explicit DensityMatrix(const Matrix& m) : DensityMatrix(m, Tolerances{}) {}
  DensityMatrix(const Matrix& m, const Tolerances& tol);

  static DensityMatrix maximally_mixed(Index d);
  static DensityMatrix basis_state(Index d, Index k);
  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix diagonal(const RealVector& probabilities);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }
  bool subnormalized() const { return subnormalized_; }

 private:
  Matrix m_;
  bool subnormalized_ = false;
};

}  // namespace entdyn
