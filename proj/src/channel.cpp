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

#include "entdyn/channel.hpp"

#include <cmath>
#include <numbers>

namespace entdyn {

namespace {

Vector vec(const Matrix& x) { return Eigen::Map<const Vector>(x.data(), x.size()); }

Matrix unvec(const Vector& v, Index rows, Index cols) {
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix kraus_superoperator(const std::vector<Matrix>& kraus, Index d_in, Index d_out) {
  Matrix s = Matrix::Zero(d_out * d_out, d_in * d_in);
  for (const Matrix& k : kraus) s += kron(k.conjugate(), k);
  return s;
}

}  // namespace

Superoperator::Superoperator(Matrix m, Index d_in, Index d_out)
    : m_(std::move(m)), d_in_(d_in), d_out_(d_out) {
  if (d_in <= 0 || d_out <= 0 || m_.rows() != d_out * d_out || m_.cols() != d_in * d_in) {
    throw DimensionError("Superoperator: matrix shape does not match dimensions");
  }
}

Superoperator Superoperator::identity(Index d) {
  return Superoperator(Matrix::Identity(d * d, d * d), d, d);
}

Superoperator Superoperator::zero(Index d_in, Index d_out) {
  return Superoperator(Matrix::Zero(d_out * d_out, d_in * d_in), d_in, d_out);
}

Matrix Superoperator::apply(const Matrix& x) const {
  if (x.rows() != d_in_ || x.cols() != d_in_) {
    throw DimensionError("Superoperator::apply: input dimension mismatch");
  }
  return unvec(m_ * vec(x), d_out_, d_out_);
}

Superoperator Superoperator::adjoint() const {
  return Superoperator(m_.adjoint(), d_out_, d_in_);
}

Superoperator Superoperator::operator+(const Superoperator& other) const {
  if (other.d_in_ != d_in_ || other.d_out_ != d_out_) {
    throw DimensionError("Superoperator: sum of maps with different dimensions");
  }
  return Superoperator(m_ + other.m_, d_in_, d_out_);
}

Superoperator Superoperator::operator-(const Superoperator& other) const {
  return *this + other * -1.0;
}

Superoperator Superoperator::operator*(double s) const {
  return Superoperator(m_ * s, d_in_, d_out_);
}

Superoperator compose(const Superoperator& second, const Superoperator& first) {
  if (first.dim_out() != second.dim_in()) {
    throw DimensionError("compose: dim_out(first) != dim_in(second)");
  }
  return Superoperator(second.matrix() * first.matrix(), first.dim_in(), second.dim_out());
}

Matrix choi_of(const Superoperator& n) {
  const Index di = n.dim_in();
  const Index dout = n.dim_out();
  Matrix choi = Matrix::Zero(di * dout, di * dout);
  for (Index i = 0; i < di; ++i) {
    for (Index j = 0; j < di; ++j) {
      // Column i + j*di of the superoperator is vec(N(|i><j|)).
      choi.block(i * dout, j * dout, dout, dout) =
          unvec(n.matrix().col(i + j * di), dout, dout);
    }
  }
  return choi;
}

CptpReport is_cptp(const Superoperator& n, double tol) {
  const Matrix choi = choi_of(n);
  CptpReport r;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (choi + choi.adjoint()),
                                               Eigen::EigenvaluesOnly);
  r.choi_min_eigenvalue = solver.eigenvalues().minCoeff();
  const Matrix marginal = partial_trace(choi, n.dim_in(), n.dim_out(), Subsystem::kA);
  r.tp_defect = (marginal - Matrix::Identity(n.dim_in(), n.dim_in())).cwiseAbs().maxCoeff();
  r.completely_positive = r.choi_min_eigenvalue >= -tol;
  r.trace_preserving = r.tp_defect <= tol;
  return r;
}

std::string to_string(UnitalityClass c) {
  switch (c) {
    case UnitalityClass::kUnital:
      return "unital";
    case UnitalityClass::kStrictlySubUnital:
      return "strictly_sub_unital";
    case UnitalityClass::kStrictlySuperUnital:
      return "strictly_super_unital";
    case UnitalityClass::kNeither:
      return "neither";
  }
  return "neither";
}

UnitalityClass unitality_class(const Superoperator& n, double tol, const Matrix& restrict_to) {
  Matrix image = n.apply(Matrix::Identity(n.dim_in(), n.dim_in()));
  Matrix target = Matrix::Identity(n.dim_out(), n.dim_out());
  if (restrict_to.size() != 0) {
    if (restrict_to.rows() != n.dim_out()) {
      throw DimensionError("unitality_class: restriction projector has wrong dimension");
    }
    image = restrict_to * image * restrict_to;
    target = restrict_to;
  }
  const Matrix diff = image - target;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (diff + diff.adjoint()),
                                               Eigen::EigenvaluesOnly);
  const double lo = solver.eigenvalues().minCoeff();
  const double hi = solver.eigenvalues().maxCoeff();
  if (lo >= -tol && hi <= tol) return UnitalityClass::kUnital;
  if (hi <= tol) return UnitalityClass::kStrictlySubUnital;
  if (lo >= -tol) return UnitalityClass::kStrictlySuperUnital;
  return UnitalityClass::kNeither;
}

QuantumChannel::QuantumChannel(std::vector<Matrix> kraus, double tp_tolerance)
    : kraus_(std::move(kraus)), superop_(Superoperator::identity(1)) {
  if (kraus_.empty()) throw DimensionError("QuantumChannel: empty Kraus set");
  d_out_ = kraus_.front().rows();
  d_in_ = kraus_.front().cols();
  if (d_in_ == 0 || d_out_ == 0) throw DimensionError("QuantumChannel: empty Kraus operator");
  for (const Matrix& k : kraus_) {
    if (k.rows() != d_out_ || k.cols() != d_in_) {
      throw DimensionError("QuantumChannel: Kraus operators have inconsistent shapes");
    }
  }
  superop_ = Superoperator(kraus_superoperator(kraus_, d_in_, d_out_), d_in_, d_out_);
  choi_ = choi_of(superop_);

  Matrix gram = Matrix::Zero(d_in_, d_in_);
  for (const Matrix& k : kraus_) gram += k.adjoint() * k;
  const Matrix defect = gram - Matrix::Identity(d_in_, d_in_);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (defect + defect.adjoint()),
                                               Eigen::EigenvaluesOnly);
  if (defect.cwiseAbs().maxCoeff() <= tp_tolerance) {
    trace_behavior_ = TraceBehavior::kPreserving;
  } else if (solver.eigenvalues().maxCoeff() <= tp_tolerance) {
    trace_behavior_ = TraceBehavior::kNonIncreasing;
  } else {
    trace_behavior_ = TraceBehavior::kOther;
  }
}

Matrix QuantumChannel::apply(const Matrix& rho) const {
  if (rho.rows() != d_in_ || rho.cols() != d_in_) {
    throw DimensionError("QuantumChannel::apply: input dimension mismatch");
  }
  Matrix out = Matrix::Zero(d_out_, d_out_);
  for (const Matrix& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

DensityMatrix QuantumChannel::apply(const DensityMatrix& rho) const {
  return DensityMatrix(apply(rho.matrix()));
}

QuantumChannel adjoint(const QuantumChannel& n) {
  std::vector<Matrix> k;
  k.reserve(n.kraus().size());
  for (const Matrix& m : n.kraus()) k.push_back(m.adjoint());
  return QuantumChannel(std::move(k));
}

QuantumChannel compose(const QuantumChannel& second, const QuantumChannel& first) {
  if (first.dim_out() != second.dim_in()) {
    throw DimensionError("compose: dim_out(first) != dim_in(second)");
  }
  std::vector<Matrix> k;
  k.reserve(first.kraus().size() * second.kraus().size());
  for (const Matrix& b : second.kraus()) {
    for (const Matrix& a : first.kraus()) k.push_back(b * a);
  }
  return QuantumChannel(std::move(k));
}

Matrix choi_of(const QuantumChannel& n) { return n.choi(); }

CptpReport is_cptp(const QuantumChannel& n, double tol) {
  CptpReport r = is_cptp(n.superoperator(), tol);
  Matrix gram = Matrix::Zero(n.dim_in(), n.dim_in());
  for (const Matrix& k : n.kraus()) gram += k.adjoint() * k;
  r.tp_defect = std::max(
      r.tp_defect, (gram - Matrix::Identity(n.dim_in(), n.dim_in())).cwiseAbs().maxCoeff());
  r.trace_preserving = r.tp_defect <= tol;
  return r;
}

UnitalityClass unitality_class(const QuantumChannel& n, double tol) {
  return unitality_class(n.superoperator(), tol);
}

QuantumChannel identity_channel(Index d) {
  return QuantumChannel({Matrix::Identity(d, d)});
}

QuantumChannel unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols()) throw DimensionError("unitary_channel: matrix is not square");
  const double defect =
      (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw PreconditionError("unitary_channel: matrix is not unitary");
  return QuantumChannel({u});
}

std::vector<Matrix> heisenberg_weyl(Index d) {
  Matrix x = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  const double two_pi_over_d = 2.0 * std::numbers::pi / static_cast<double>(d);
  for (Index j = 0; j < d; ++j) {
    x((j + 1) % d, j) = 1.0;
    z(j, j) = std::polar(1.0, two_pi_over_d * static_cast<double>(j));
  }
  std::vector<Matrix> ops;
  ops.reserve(d * d);
  Matrix xa = Matrix::Identity(d, d);
  for (Index a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(d, d);
    for (Index b = 0; b < d; ++b) {
      ops.push_back(xa * zb);
      zb = zb * z;
    }
    xa = xa * x;
  }
  return ops;
}

double depolarizing_max_q(Index d) {
  const double d2 = static_cast<double>(d * d);
  return d2 / (d2 - 1.0);
}

QuantumChannel depolarizing(Index d, double q) {
  if (d < 2) throw DomainError("depolarizing: d must be >= 2");
  const double q_max = depolarizing_max_q(d);
  if (!(q >= 0.0) || q > q_max * (1.0 + 1e-12)) {
    throw DomainError("depolarizing: q must lie in [0, d^2/(d^2-1)] = [0, " +
                      std::to_string(q_max) + "]");
  }
  // (1 - q) rho + q 1/d = (1 - q + q/d^2) rho + (q/d^2) sum_{x != 0} W_x rho W_x^dag.
  const double d2 = static_cast<double>(d * d);
  const double w0 = std::max(0.0, 1.0 - q + q / d2);
  const double wx = q / d2;
  const auto hw = heisenberg_weyl(d);
  std::vector<Matrix> kraus;
  kraus.push_back(std::sqrt(w0) * hw[0]);
  if (wx > 0.0) {
    for (std::size_t i = 1; i < hw.size(); ++i) kraus.push_back(std::sqrt(wx) * hw[i]);
  }
  return QuantumChannel(std::move(kraus));
}

QuantumChannel gadc(double t, double omega) {
  if (!(t >= 0.0)) throw DomainError("gadc: t must be >= 0");
  const double c = std::cos(omega * t);
  const double p = c * c;
  const double eta = std::exp(-t);
  const double sp = std::sqrt(p);
  const double sq = std::sqrt(1.0 - p);
  const double se = std::sqrt(eta);
  const double sl = std::sqrt(1.0 - eta);
  Matrix m1 = Matrix::Zero(2, 2);
  Matrix m2 = Matrix::Zero(2, 2);
  Matrix m3 = Matrix::Zero(2, 2);
  Matrix m4 = Matrix::Zero(2, 2);
  m1(0, 0) = sp;
  m1(1, 1) = sp * se;
  m2(0, 1) = sp * sl;
  m3(0, 0) = sq * se;
  m3(1, 1) = sq;
  m4(1, 0) = sq * sl;
  return QuantumChannel({m1, m2, m3, m4});
}

Superoperator gadc_superoperator(double t, double omega) {
  const double c = std::cos(omega * t);
  const double p = c * c;
  const double eta = std::exp(-t);
  const double se = std::exp(-0.5 * t);
  // Column-stacked basis: (0,0) -> 0, (1,0) -> 1, (0,1) -> 2, (1,1) -> 3.
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = p + (1.0 - p) * eta;
  m(0, 3) = p * (1.0 - eta);
  m(3, 3) = p * eta + (1.0 - p);
  m(3, 0) = (1.0 - p) * (1.0 - eta);
  m(1, 1) = se;
  m(2, 2) = se;
  return Superoperator(std::move(m), 2, 2);
}

QuantumChannel partial_trace_channel(Index d_a, Index d_b, Subsystem keep) {
  if (d_a <= 0 || d_b <= 0) throw DimensionError("partial_trace_channel: bad dimensions");
  std::vector<Matrix> kraus;
  if (keep == Subsystem::kB) {
    for (Index a = 0; a < d_a; ++a) {
      Matrix k = Matrix::Zero(d_b, d_a * d_b);
      for (Index b = 0; b < d_b; ++b) k(b, a * d_b + b) = 1.0;
      kraus.push_back(std::move(k));
    }
  } else {
    for (Index b = 0; b < d_b; ++b) {
      Matrix k = Matrix::Zero(d_a, d_a * d_b);
      for (Index a = 0; a < d_a; ++a) k(a, a * d_b + b) = 1.0;
      kraus.push_back(std::move(k));
    }
  }
  return QuantumChannel(std::move(kraus));
}

Superoperator transpose_map(Index d) {
  Matrix m = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) m(j + i * d, i + j * d) = 1.0;
  }
  return Superoperator(std::move(m), d, d);
}

Matrix swap_unitary(Index d_a, Index d_b) {
  Matrix s = Matrix::Zero(d_a * d_b, d_a * d_b);
  for (Index a = 0; a < d_a; ++a) {
    for (Index b = 0; b < d_b; ++b) s(b * d_a + a, a * d_b + b) = 1.0;
  }
  return s;
}

}  // namespace entdyn
