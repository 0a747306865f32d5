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

#include "entdyn/random.hpp"

#include <cmath>

namespace entdyn {

Complex complex_normal(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}

Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) g(i, j) = complex_normal(rng);
  }
  return g;
}

Matrix haar_unitary(Index d, Rng& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index k = 0; k < d; ++k) {
    const Complex rk = r(k, k);
    const double mag = std::abs(rk);
    if (mag > 0.0) q.col(k) *= rk / mag;
  }
  return q;
}

Vector haar_pure_state(Index d, Rng& rng) {
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = complex_normal(rng);
  return v / v.norm();
}

DensityMatrix random_density_matrix(Index d, Rng& rng) {
  const Matrix g = random_matrix(d, d, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_full_rank_state(Index d, Rng& rng, double min_eigenvalue) {
  if (!(min_eigenvalue >= 0.0) || min_eigenvalue * static_cast<double>(d) >= 1.0) {
    throw DomainError("random_full_rank_state: min_eigenvalue must lie in [0, 1/d)");
  }
  const Matrix base = random_density_matrix(d, rng).matrix();
  const double w = 1.0 - min_eigenvalue * static_cast<double>(d);
  Matrix rho = w * base + min_eigenvalue * Matrix::Identity(d, d);
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

Matrix random_hermitian(Index d, Rng& rng) {
  const Matrix g = random_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

QuantumChannel random_channel(Index d_in, Index d_out, Index kraus_rank, Rng& rng) {
  if (kraus_rank < 1) throw DomainError("random_channel: kraus_rank must be >= 1");
  const Index big = d_out * kraus_rank;
  if (big < d_in) throw DomainError("random_channel: d_out * kraus_rank < d_in");
  const Matrix u = haar_unitary(big, rng);
  const Matrix v = u.leftCols(d_in);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_rank);
  for (Index k = 0; k < kraus_rank; ++k) {
    Matrix m(d_out, d_in);
    for (Index i = 0; i < d_out; ++i) m.row(i) = v.row(i * kraus_rank + k);
    kraus.push_back(std::move(m));
  }
  return QuantumChannel(std::move(kraus));
}

namespace {

std::vector<double> random_simplex(Index n, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& x : p) {
    x = e(rng);
    total += x;
  }
  for (auto& x : p) x /= total;
  return p;
}

}  // namespace

QuantumChannel random_unital_channel(Index d, Index terms, Rng& rng) {
  return random_sub_unital_operation(d, terms, rng, 1.0);
}

QuantumChannel random_sub_unital_operation(Index d, Index terms, Rng& rng, double c_min) {
  if (terms < 1) throw DomainError("random_sub_unital_operation: terms must be >= 1");
  if (!(c_min >= 0.0 && c_min <= 1.0)) {
    throw DomainError("random_sub_unital_operation: c_min must lie in [0, 1]");
  }
  const auto p = random_simplex(terms, rng);
  std::uniform_real_distribution<double> uc(c_min, 1.0);
  std::vector<Matrix> kraus;
  kraus.reserve(terms);
  for (Index k = 0; k < terms; ++k) {
    const double c = c_min == 1.0 ? 1.0 : uc(rng);
    kraus.push_back(std::sqrt(c * p[k]) * haar_unitary(d, rng));
  }
  return QuantumChannel(std::move(kraus));
}

}  // namespace entdyn
