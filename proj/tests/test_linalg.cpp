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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entdyn/channel.hpp"
#include "entdyn/linalg.hpp"
#include "entdyn/random.hpp"

#include <cmath>
#include <numbers>

using namespace entdyn;

namespace {

Matrix diag(std::initializer_list<double> v) {
  RealVector r(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) r(i++) = x;
  return r.cast<Complex>().asDiagonal();
}

Matrix bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

const double kLn2 = std::numbers::ln2;

}  // namespace

TEST_CASE("spectral_decompose sorts descending and reconstructs") {
  const EigenSystem id = spectral_decompose(Matrix::Identity(2, 2));
  CHECK(id.values(0) == doctest::Approx(1.0));
  CHECK(id.values(1) == doctest::Approx(1.0));

  const EigenSystem d = spectral_decompose(diag({0.25, 0.75}));
  CHECK(d.values(0) == doctest::Approx(0.75));
  CHECK(d.values(1) == doctest::Approx(0.25));

  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix h = random_hermitian(4, rng);
    const EigenSystem es = spectral_decompose(h);
    for (Index k = 0; k < 4; ++k) {
      CHECK((h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).norm() <= 1e-12);
      if (k > 0) CHECK(es.values(k - 1) >= es.values(k));
    }
    CHECK((es.vectors.adjoint() * es.vectors - Matrix::Identity(4, 4)).norm() <= 1e-12);
  }
}

TEST_CASE("hermitize symmetrizes small asymmetries and rejects large ones") {
  Matrix a = diag({1.0, 2.0});
  a(0, 1) = Complex(1e-12, 0.0);
  CHECK(hermiticity_defect(hermitize(a)) == 0.0);
  a(0, 1) = 1e-3;
  CHECK_THROWS_AS(hermitize(a), PreconditionError);
}

TEST_CASE("support_projector") {
  const SupportProjector p0 = support_projector(diag({1.0, 0.0}));
  CHECK(p0.rank == 1);
  CHECK((p0.projector - diag({1.0, 0.0})).norm() <= 1e-12);

  CHECK(support_projector(Matrix::Identity(2, 2) * 0.5).rank == 2);

  const double e = std::exp(-1.0);
  const SupportProjector p2 = support_projector(diag({1.0 - e, e, 0.0}));
  CHECK(p2.rank == 2);
  CHECK((p2.projector - diag({1.0, 1.0, 0.0})).norm() <= 1e-12);

  Rng rng(2);
  const Matrix rho = random_density_matrix(3, rng).matrix();
  const Matrix& pi = support_projector(rho).projector;
  CHECK((pi * pi - pi).norm() <= 1e-12);
  CHECK((pi * rho * pi - rho).norm() <= 1e-12);
}

TEST_CASE("matrix_log_on_support") {
  const Matrix l = matrix_log_on_support(Matrix::Identity(2, 2) * 0.5);
  CHECK((l + kLn2 * Matrix::Identity(2, 2)).norm() <= 1e-12);
  CHECK(matrix_log_on_support(diag({1.0, 0.0})).norm() <= 1e-12);
  const Matrix d = matrix_log_on_support(diag({0.75, 0.25}));
  CHECK(d(0, 0).real() == doctest::Approx(-0.2876820724517809).epsilon(1e-12));
  CHECK(d(1, 1).real() == doctest::Approx(-1.3862943611198906).epsilon(1e-12));
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(diag({1.0, 0.0})) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy(Matrix::Identity(2, 2) * 0.5) == doctest::Approx(kLn2));
  // Frozen oracle (extended precision): -(1 - 1/e) log(1 - 1/e) + 1/e.
  const double e = std::exp(-1.0);
  CHECK(std::abs(von_neumann_entropy(diag({1.0 - e, e})) - 0.6578174303942945) <= 1e-12);

  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 3;
    const double s = von_neumann_entropy(random_density_matrix(d, rng).matrix());
    CHECK(s >= -1e-12);
    CHECK(s <= std::log(static_cast<double>(d)) + 1e-12);
  }
}

TEST_CASE("relative_entropy") {
  const Matrix zero = diag({1.0, 0.0});
  const Matrix one = diag({0.0, 1.0});
  const Matrix mixed = Matrix::Identity(2, 2) * 0.5;
  CHECK(relative_entropy(mixed, mixed).value() == doctest::Approx(0.0));
  CHECK(relative_entropy(zero, mixed).value() == doctest::Approx(kLn2));
  CHECK(relative_entropy(zero, one).is_infinite());
  CHECK_THROWS_AS(relative_entropy(zero, one).value(), DomainError);
  CHECK(relative_entropy(zero, zero).value() == doctest::Approx(0.0));

  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 3;
    const Matrix rho = random_density_matrix(d, rng).matrix();
    const Matrix sigma = random_full_rank_state(d, rng).matrix();
    CHECK(relative_entropy(rho, sigma).value() >= -1e-10);
    CHECK(std::abs(relative_entropy(rho, rho).value()) <= 1e-10);
  }
}

TEST_CASE("relative_entropy full-rank trace form equals the double sum") {
  // A rank-deficient rho forces the double-sum path; compare against the
  // trace form on sigma's full support.
  Rng rng(5);
  const Vector psi = haar_pure_state(3, rng);
  const Matrix rho = psi * psi.adjoint();
  const Matrix sigma = random_full_rank_state(3, rng).matrix();
  const double expected = -(rho * matrix_log_on_support(sigma)).trace().real();
  CHECK(relative_entropy(rho, sigma).value() == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("data processing inequality") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const Index d = 2 + trial % 2;
    const QuantumChannel n = random_channel(d, d, 2, rng);
    const Matrix rho = random_density_matrix(d, rng).matrix();
    const Matrix sigma = random_full_rank_state(d, rng).matrix();
    const double before = relative_entropy(rho, sigma).value();
    const ExtendedReal after = relative_entropy(n.apply(rho), n.apply(sigma));
    REQUIRE(after.is_finite());
    CHECK(after.value() <= before + 1e-9);
  }
}

TEST_CASE("operator concavity of the logarithm under unital-adjoint maps") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    // N trace preserving, so N^dag is unital and positive.
    const QuantumChannel n = random_channel(2, 2, 3, rng);
    const Superoperator adj = n.superoperator().adjoint();
    const Matrix sigma = random_full_rank_state(2, rng, 1e-2).matrix();
    const Matrix lhs = matrix_log_on_support(adj.apply(sigma));
    const Matrix rhs = adj.apply(matrix_log_on_support(sigma));
    CHECK(spectral_decompose(hermitize(lhs - rhs, 1e-9)).values.minCoeff() >= -1e-9);
  }
}

TEST_CASE("schatten_norm") {
  CHECK(schatten_norm(Matrix::Identity(2, 2), 1.0) == doctest::Approx(2.0));
  CHECK(schatten_norm(diag({3.0, -4.0}), kSchattenInfinity) == doctest::Approx(4.0));
  CHECK(schatten_norm(bell() - Matrix::Identity(4, 4) / 4.0, 1.0) == doctest::Approx(1.5));
  CHECK(trace_norm_hermitian(bell() - Matrix::Identity(4, 4) / 4.0) == doctest::Approx(1.5));
  CHECK_THROWS_AS(schatten_norm(Matrix::Identity(2, 2), 0.5), DomainError);
}

TEST_CASE("Hoelder inequality") {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random_matrix(3, 3, rng);
    const Matrix b = random_matrix(3, 3, rng);
    const double lhs = std::abs((a.adjoint() * b).trace());
    CHECK(lhs <= schatten_norm(a, 1.0) * schatten_norm(b, kSchattenInfinity) + 1e-10);
    CHECK(lhs <= schatten_norm(a, 2.0) * schatten_norm(b, 2.0) + 1e-10);
  }
}

TEST_CASE("partial_trace") {
  Rng rng(9);
  const Matrix ra = random_density_matrix(2, rng).matrix();
  const Matrix rb = random_density_matrix(3, rng).matrix();
  CHECK((partial_trace(kron(ra, rb), 2, 3, Subsystem::kB) - rb).norm() <= 1e-12);
  CHECK((partial_trace(kron(ra, rb), 2, 3, Subsystem::kA) - ra).norm() <= 1e-12);
  CHECK((partial_trace(bell(), 2, 2, Subsystem::kB) - Matrix::Identity(2, 2) / 2.0).norm() <=
        1e-12);
  CHECK_THROWS_AS(partial_trace(bell(), 3, 2, Subsystem::kB), DimensionError);

  // Element-indexed summation oracle.
  const Matrix rho = random_density_matrix(4, rng).matrix();
  Matrix keep_b = Matrix::Zero(2, 2);
  Matrix keep_a = Matrix::Zero(2, 2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      for (Index k = 0; k < 2; ++k) {
        keep_b(i, j) += rho(k * 2 + i, k * 2 + j);
        keep_a(i, j) += rho(i * 2 + k, j * 2 + k);
      }
    }
  }
  CHECK((partial_trace(rho, 2, 2, Subsystem::kB) - keep_b).norm() <= 1e-12);
  CHECK((partial_trace(rho, 2, 2, Subsystem::kA) - keep_a).norm() <= 1e-12);
}

TEST_CASE("trace_function_derivative") {
  const TraceFunction f = TraceFunction::x_log_x();
  CHECK(std::abs(trace_function_derivative(Matrix::Identity(2, 2) * 0.5, diag({0.5, -0.5}), f)) <=
        1e-12);
  CHECK(trace_function_derivative(diag({0.75, 0.25}), diag({1.0, -1.0}), f) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK(trace_function_derivative(diag({0.75, 0.25}), Matrix::Zero(2, 2), f) == 0.0);
  CHECK_THROWS_AS(TraceFunction::parse("sqrt"), DomainError);
  CHECK(TraceFunction::parse("power:0.5").h == 0.5);

  Rng rng(10);
  const double h = 1e-5;
  for (const TraceFunction g : {TraceFunction::x_log_x(), TraceFunction::power(0.5)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix a = random_full_rank_state(3, rng, 0.05).matrix();
      const Matrix dot = random_hermitian(3, rng) * 0.1;
      const double fd = (trace_function(a + h * dot, g) - trace_function(a - h * dot, g)) / (2 * h);
      CHECK(std::abs(trace_function_derivative(a, dot, g) - fd) <= 1e-7);
    }
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(Matrix::Identity(2, 2) * 0.5));
  CHECK_THROWS_AS(DensityMatrix(diag({1.5, -0.5})), PreconditionError);
  CHECK(DensityMatrix(diag({0.5, 0.25})).subnormalized());
  CHECK_THROWS_AS(DensityMatrix(diag({1.0, 1.0})), PreconditionError);
}
