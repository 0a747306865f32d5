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

#include "entdyn/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace entdyn {

namespace {

double zero_cutoff(const RealVector& values, const LinalgTolerances& tol) {
  const double lmax = values.size() > 0 ? std::max(values.maxCoeff(), 0.0) : 0.0;
  return tol.zero_threshold * lmax;
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": matrix is not square");
  }
}

}  // namespace

double hermiticity_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

Matrix hermitize(const Matrix& a, double tol) {
  require_square(a, "hermitize");
  const double defect = hermiticity_defect(a);
  // Scale-aware: large-norm operators (Fock-space Hamiltonians) carry
  // proportionally larger rounding.
  const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
  if (defect > tol * scale) {
    throw PreconditionError("matrix is not Hermitian (defect " + std::to_string(defect) +
                            ")");
  }
  return 0.5 * (a + a.adjoint());
}

EigenSystem spectral_decompose(const Matrix& a, const LinalgTolerances& tol) {
  const Matrix h = hermitize(a, tol.hermitian_tolerance);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("spectral_decompose: eigensolver failed");
  }
  EigenSystem es;
  es.values = solver.eigenvalues().reverse();
  es.vectors = solver.eigenvectors().rowwise().reverse();
  return es;
}

SupportProjector support_projector(const Matrix& rho, const LinalgTolerances& tol) {
  const EigenSystem es = spectral_decompose(rho, tol);
  const double cut = zero_cutoff(es.values, tol);
  SupportProjector out;
  out.projector = Matrix::Zero(rho.rows(), rho.cols());
  for (Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) > cut) {
      out.projector += es.vectors.col(k) * es.vectors.col(k).adjoint();
      ++out.rank;
    }
  }
  return out;
}

Matrix matrix_log_on_support(const Matrix& rho, const LinalgTolerances& tol) {
  const EigenSystem es = spectral_decompose(rho, tol);
  const double cut = zero_cutoff(es.values, tol);
  return matrix_function(es, [cut](double x) { return x > cut ? std::log(x) : 0.0; });
}

double von_neumann_entropy(const Matrix& rho, const LinalgTolerances& tol) {
  const EigenSystem es = spectral_decompose(rho, tol);
  const double cut = zero_cutoff(es.values, tol);
  double s = 0.0;
  for (Index k = 0; k < es.values.size(); ++k) {
    const double l = es.values(k);
    if (l > cut) s -= l * std::log(l);
  }
  return s;
}

double ExtendedReal::value() const {
  if (infinite_) throw DomainError("ExtendedReal::value: value is +infinity");
  return value_;
}

ExtendedReal relative_entropy(const Matrix& rho, const Matrix& sigma,
                              const LinalgTolerances& tol) {
  require_square(rho, "relative_entropy");
  if (rho.rows() != sigma.rows() || sigma.rows() != sigma.cols()) {
    throw DimensionError("relative_entropy: operand dimensions differ");
  }
  const EigenSystem er = spectral_decompose(rho, tol);
  const EigenSystem es = spectral_decompose(sigma, tol);
  const double cut_r = zero_cutoff(er.values, tol);
  const double cut_s = zero_cutoff(es.values, tol);
  const Index d = rho.rows();

  Index rank_r = 0;
  Index rank_s = 0;
  for (Index k = 0; k < d; ++k) {
    if (er.values(k) > cut_r) ++rank_r;
    if (es.values(k) > cut_s) ++rank_s;
  }

  // Leakage of rho outside supp(sigma): Tr{(1 - Pi_sigma) rho}.
  const Matrix h_rho = 0.5 * (rho + rho.adjoint());
  double leak = 0.0;
  for (Index j = rank_s; j < d; ++j) {
    leak += (es.vectors.col(j).adjoint() * h_rho * es.vectors.col(j))(0, 0).real();
  }
  if (leak > tol.support_tolerance) return ExtendedReal::infinity();

  if (rank_r == d && rank_s == d) {
    const Matrix log_r =
        matrix_function(er, [](double x) { return std::log(x); });
    const Matrix log_s =
        matrix_function(es, [](double x) { return std::log(x); });
    return ExtendedReal::finite((h_rho * (log_r - log_s)).trace().real());
  }

  // Double-sum form: sum_{i,j} |<phi_i|psi_j>|^2 p_i (log p_i - log q_j),
  // restricted to supp(rho) x supp(sigma).
  const Matrix overlap = er.vectors.adjoint() * es.vectors;
  double d_val = 0.0;
  for (Index i = 0; i < rank_r; ++i) {
    const double p = er.values(i);
    const double log_p = std::log(p);
    for (Index j = 0; j < rank_s; ++j) {
      d_val += std::norm(overlap(i, j)) * p * (log_p - std::log(es.values(j)));
    }
  }
  return ExtendedReal::finite(d_val);
}

double schatten_norm(const Matrix& a, double p) {
  if (!(p >= 1.0)) throw DomainError("schatten_norm: p must be >= 1");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const RealVector& s = svd.singularValues();
  if (std::isinf(p)) return s.maxCoeff();
  if (p == 1.0) return s.sum();
  double acc = 0.0;
  for (Index k = 0; k < s.size(); ++k) acc += std::pow(s(k), p);
  return std::pow(acc, 1.0 / p);
}

double trace_norm_hermitian(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.adjoint()),
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().sum();
}

Matrix partial_trace(const Matrix& rho_ab, Index d_a, Index d_b, Subsystem keep) {
  if (d_a <= 0 || d_b <= 0 || rho_ab.rows() != d_a * d_b || rho_ab.cols() != d_a * d_b) {
    throw DimensionError("partial_trace: dimension mismatch");
  }
  if (keep == Subsystem::kB) {
    Matrix out = Matrix::Zero(d_b, d_b);
    for (Index a = 0; a < d_a; ++a) out += rho_ab.block(a * d_b, a * d_b, d_b, d_b);
    return out;
  }
  Matrix out = Matrix::Zero(d_a, d_a);
  for (Index a = 0; a < d_a; ++a) {
    for (Index ap = 0; ap < d_a; ++ap) {
      out(a, ap) = rho_ab.block(a * d_b, ap * d_b, d_b, d_b).trace();
    }
  }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

TraceFunction TraceFunction::parse(std::string_view tag) {
  if (tag == "xlogx") return x_log_x();
  constexpr std::string_view prefix = "power:";
  if (tag.substr(0, prefix.size()) == prefix) {
    const std::string rest(tag.substr(prefix.size()));
    std::size_t used = 0;
    double h = 0.0;
    try {
      h = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == rest.size() && used > 0 && h > -1.0) return power(h);
  }
  throw DomainError("unsupported trace function tag '" + std::string(tag) + "'");
}

double TraceFunction::value(double x) const {
  if (x <= 0.0) return 0.0;
  if (kind == Kind::kXLogX) return x * std::log(x);
  return std::pow(x, 1.0 + h);
}

double trace_function(const Matrix& a, TraceFunction f) {
  const EigenSystem es = spectral_decompose(a);
  double acc = 0.0;
  for (Index k = 0; k < es.values.size(); ++k) acc += f.value(es.values(k));
  return acc;
}

double trace_function_derivative(const Matrix& a, const Matrix& a_dot, TraceFunction f,
                                 const LinalgTolerances& tol) {
  if (a.rows() != a_dot.rows() || a.cols() != a_dot.cols()) {
    throw DimensionError("trace_function_derivative: dimension mismatch");
  }
  const EigenSystem es = spectral_decompose(a, tol);
  const double cut = zero_cutoff(es.values, tol);
  const Matrix rotated = es.vectors.adjoint() * a_dot * es.vectors;
  double acc = 0.0;
  for (Index k = 0; k < es.values.size(); ++k) {
    const double l = es.values(k);
    if (l <= cut) continue;
    const double fprime =
        f.kind == TraceFunction::Kind::kXLogX ? std::log(l) + 1.0
                                               : (1.0 + f.h) * std::pow(l, f.h);
    acc += fprime * rotated(k, k).real();
  }
  return acc;
}

DensityMatrix::DensityMatrix(const Matrix& m, const Tolerances& tol) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionError("DensityMatrix: expected a non-empty square matrix");
  }
  m_ = hermitize(m, tol.hermitian);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -tol.psd) {
    throw PreconditionError("DensityMatrix: not positive semi-definite (min eigenvalue " +
                            std::to_string(min_eig) + ")");
  }
  const double tr = m_.trace().real();
  if (std::abs(tr - 1.0) <= tol.trace) return;
  if (tr > 0.0 && tr < 1.0) {
    subnormalized_ = true;
    return;
  }
  throw PreconditionError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
}

DensityMatrix DensityMatrix::maximally_mixed(Index d) {
  return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(Index d, Index k) {
  if (k < 0 || k >= d) throw DomainError("basis_state: index out of range");
  Matrix m = Matrix::Zero(d, d);
  m(k, k) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n = psi.norm();
  if (n == 0.0) throw DomainError("pure: zero vector");
  const Vector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const RealVector& probabilities) {
  return DensityMatrix(Matrix(probabilities.cast<Complex>().asDiagonal()));
}

}  // namespace entdyn
