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

#include "entdyn/generator.hpp"
#include "entdyn/random.hpp"

#include <cmath>
#include <random>

using namespace entdyn;

namespace {

Complex hs(const Matrix& a, const Matrix& b) { return (a.adjoint() * b).trace(); }

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<QuantumChannel> zoo() {
  Rng rng(99);
  return {identity_channel(3),         unitary_channel(haar_unitary(2, rng)),
          depolarizing(2, 0.3),        depolarizing(3, 1.1),
          gadc(0.5, 5.0),              gadc(1.7, 0.3),
          partial_trace_channel(2, 2, Subsystem::kB),
          random_channel(2, 3, 2, rng)};
}

}  // namespace

TEST_CASE("apply") {
  Rng rng(1);
  const Matrix rho = random_density_matrix(2, rng).matrix();
  CHECK(max_abs(identity_channel(2).apply(rho) - rho) <= 1e-15);
  CHECK(max_abs(depolarizing(2, 1.0).apply(rho) - Matrix::Identity(2, 2) / 2.0) <= 1e-14);
  CHECK_THROWS_AS(identity_channel(3).apply(rho), DimensionError);
}

TEST_CASE("representations agree") {
  Rng rng(2);
  for (const auto& n : zoo()) {
    for (int k = 0; k < 10; ++k) {
      const Matrix x = random_matrix(n.dim_in(), n.dim_in(), rng);
      Matrix kraus_form = Matrix::Zero(n.dim_out(), n.dim_out());
      for (const Matrix& k_op : n.kraus()) kraus_form += k_op * x * k_op.adjoint();
      CHECK(max_abs(n.superoperator().apply(x) - kraus_form) <= 1e-10);
    }
    const CptpReport r = is_cptp(n);
    CHECK(r.cptp());
    CHECK(r.choi_min_eigenvalue >= -1e-10);
  }
}

TEST_CASE("adjoint duality on every builtin") {
  Rng rng(3);
  for (const auto& n : zoo()) {
    const QuantumChannel a = adjoint(n);
    for (int k = 0; k < 100; ++k) {
      const Matrix x = random_matrix(n.dim_in(), n.dim_in(), rng);
      const Matrix y = random_matrix(n.dim_out(), n.dim_out(), rng);
      CHECK(std::abs(hs(y, n.apply(x)) - hs(a.apply(y), x)) <= 1e-10);
    }
    // Adjoint of a trace-preserving map is unital.
    CHECK(unitality_class(a) == UnitalityClass::kUnital);
  }
}

TEST_CASE("adjoint examples") {
  Rng rng(4);
  const QuantumChannel tr = adjoint(partial_trace_channel(2, 3, Subsystem::kB));
  const Matrix yb = random_matrix(3, 3, rng);
  CHECK(max_abs(tr.apply(yb) - kron(Matrix::Identity(2, 2), yb)) <= 1e-12);

  const Matrix u = haar_unitary(3, rng);
  const Matrix x = random_matrix(3, 3, rng);
  CHECK(max_abs(adjoint(unitary_channel(u)).apply(x) - u.adjoint() * x * u) <= 1e-12);

  for (const Index d : {2, 3}) {
    const Superoperator s = depolarizing(d, 0.7).superoperator();
    CHECK(max_abs(s.adjoint().matrix() - s.matrix()) <= 1e-12);
  }
}

TEST_CASE("compose") {
  Rng rng(5);
  const QuantumChannel n = random_channel(2, 2, 3, rng);
  const Matrix rho = random_density_matrix(2, rng).matrix();
  CHECK(max_abs(compose(identity_channel(2), n).apply(rho) - n.apply(rho)) <= 1e-12);
  CHECK(max_abs(compose(n, n).apply(rho) - n.apply(n.apply(rho))) <= 1e-12);

  for (int k = 0; k < 20; ++k) {
    const QuantumChannel u = unitary_channel(haar_unitary(3, rng));
    CHECK(max_abs(compose(adjoint(u), u).superoperator().matrix() - Matrix::Identity(9, 9)) <=
          1e-10);
  }
  const double q = 0.3;
  CHECK(max_abs(compose(depolarizing(3, q), depolarizing(3, q)).superoperator().matrix() -
                depolarizing(3, 2 * q - q * q).superoperator().matrix()) <= 1e-12);
  CHECK_THROWS_AS(compose(identity_channel(3), identity_channel(2)), DimensionError);
}

TEST_CASE("choi and CPTP report") {
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0;
  CHECK(max_abs(choi_of(identity_channel(2)) - phi * phi.adjoint()) <= 1e-15);
  const CptpReport t = is_cptp(transpose_map(2));
  CHECK(t.choi_min_eigenvalue == doctest::Approx(-1.0));
  CHECK_FALSE(t.cptp());
  CHECK(t.trace_preserving);
  CHECK(is_cptp(gadc(0.5, 5.0)).cptp());
}

TEST_CASE("unitality classes") {
  Rng rng(6);
  CHECK(unitality_class(depolarizing(3, 0.4)) == UnitalityClass::kUnital);
  CHECK(unitality_class(unitary_channel(haar_unitary(2, rng))) == UnitalityClass::kUnital);
  CHECK(unitality_class(gadc(0.3, 1.0)) == UnitalityClass::kNeither);
  // p = 1/2 or eta = 1 gives a unital GADC.
  const double quarter_period = std::acos(std::sqrt(0.5));
  CHECK(unitality_class(gadc(quarter_period, 1.0)) == UnitalityClass::kUnital);
  CHECK(unitality_class(gadc(0.0, 1.0)) == UnitalityClass::kUnital);
  // Scaled identity: strictly sub-unital.
  const QuantumChannel sub({Matrix::Identity(2, 2) * std::sqrt(0.5)});
  CHECK(unitality_class(sub) == UnitalityClass::kStrictlySubUnital);
  CHECK(sub.trace_behavior() == TraceBehavior::kNonIncreasing);
  // Partial trace from 2x2 to 2: N(1) = 2 * 1, super-unital.
  CHECK(unitality_class(partial_trace_channel(2, 2, Subsystem::kB)) ==
        UnitalityClass::kStrictlySuperUnital);
}

TEST_CASE("depolarizing") {
  CHECK(max_abs(depolarizing(2, 0.0).superoperator().matrix() - Matrix::Identity(4, 4)) <= 1e-15);
  const Matrix zero = diag2(1.0, 0.0);
  CHECK(max_abs(depolarizing(2, 1.0).apply(zero) - Matrix::Identity(2, 2) / 2.0) <= 1e-14);
  CHECK(is_cptp(depolarizing(2, 4.0 / 3.0)).cptp());
  CHECK(depolarizing_max_q(2) == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(depolarizing(2, 1.5), DomainError);
  CHECK_THROWS_AS(depolarizing(2, -0.1), DomainError);
  CHECK_THROWS_AS(depolarizing(1, 0.1), DomainError);
}

TEST_CASE("gadc") {
  CHECK(max_abs(gadc(0.0, 5.0).superoperator().matrix() - Matrix::Identity(4, 4)) <= 1e-15);
  const double t = 0.5;
  const double omega = 5.0;
  const double w = std::cos(2 * omega * t) * (1 - std::exp(-t));
  // Frozen oracle (extended precision).
  CHECK(std::abs(w - 0.11161237297868826) <= 1e-15);
  const Matrix out = gadc(t, omega).apply(Matrix::Identity(2, 2) * 0.5);
  CHECK(max_abs(out - 0.5 * diag2(1 + w, 1 - w)) <= 1e-14);

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ut(0.0, 10.0);
  std::uniform_real_distribution<double> uw(-10.0, 10.0);
  for (int k = 0; k < 100; ++k) {
    const QuantumChannel g = gadc(ut(rng), uw(rng));
    Matrix sum = Matrix::Zero(2, 2);
    for (const Matrix& m : g.kraus()) sum += m.adjoint() * m;
    CHECK(max_abs(sum - Matrix::Identity(2, 2)) <= 1e-12);
  }
  CHECK_THROWS_AS(gadc(-0.1, 1.0), DomainError);
}

TEST_CASE("gadc analytic continuation matches the Kraus form for t >= 0") {
  for (double t : {0.0, 0.1, 0.9, 2.5}) {
    CHECK(max_abs(gadc_superoperator(t, 5.0).matrix() - gadc(t, 5.0).superoperator().matrix()) <=
          1e-14);
  }
  // Defined (though not CP) slightly below zero.
  CHECK(gadc_superoperator(-1e-3, 5.0).matrix().allFinite());
}

TEST_CASE("dephasing generator") {
  const LindbladGenerator l = dephasing_generator(RateFunction::constant(1.0));
  CHECK(max_abs(l.apply(0.3, diag2(0.2, 0.8))) <= 1e-15);
  CHECK(max_abs(l.apply(0.3, pauli_x()) + pauli_x()) <= 1e-15);
  CHECK(max_abs(l.apply(0.3, Matrix::Identity(2, 2))) <= 1e-15);
}

TEST_CASE("generator duality and trace annihilation") {
  Rng rng(8);
  std::vector<LindbladGenerator> gens;
  gens.push_back(dephasing_generator(RateFunction::cosine_squared(2.0, 1.3)));
  gens.push_back(gadc_matched_generator(5.0));
  gens.push_back(depolarizing_generator(3, 0.7));
  LindbladGenerator h(3);
  h.add_hamiltonian(RateFunction::exponential(1.0, -0.2), random_hermitian(3, rng));
  h.add_jump(RateFunction::constant(0.4), random_matrix(3, 3, rng));
  gens.push_back(h);
  for (const auto& l : gens) {
    for (int k = 0; k < 20; ++k) {
      const double t = 0.37 * k;
      const Matrix rho = random_density_matrix(l.dim(), rng).matrix();
      const Matrix x = random_matrix(l.dim(), l.dim(), rng);
      CHECK(std::abs(l.apply(t, rho).trace()) <= 1e-10);
      CHECK(std::abs(hs(x, l.apply(t, rho)) - hs(l.adjoint_apply(t, x), rho)) <= 1e-10);
      const Matrix ht = l.hamiltonian(t);
      CHECK(max_abs(ht - ht.adjoint()) <= 1e-14);
      CHECK(max_abs(l.superoperator(t).apply(rho) - l.apply(t, rho)) <= 1e-12);
    }
  }
}

TEST_CASE("bosonic generators") {
  const Index cutoff = 12;
  const Matrix a = annihilation_operator(cutoff);
  const Matrix comm = a * a.adjoint() - a.adjoint() * a;
  for (Index n = 0; n < cutoff - 1; ++n) CHECK(comm(n, n).real() == doctest::Approx(1.0));

  const LindbladGenerator amp = amplifier_generator(0.2, cutoff);
  REQUIRE(amp.jumps().size() == 2);
  CHECK(amp.jumps()[0].rate(0.0) == doctest::Approx(1.2));
  CHECK(amp.jumps()[1].rate(0.0) == doctest::Approx(0.2));
  const LindbladGenerator loss = lossy_generator(0.2, cutoff);
  CHECK(loss.jumps()[0].rate(0.0) == doctest::Approx(0.2));
  CHECK(loss.jumps()[1].rate(0.0) == doctest::Approx(1.2));

  // Additive noise is unital on the trusted levels.
  const LindbladGenerator add = additive_noise_generator(0.2, cutoff);
  const Matrix p = fock_trusted_projector(cutoff);
  CHECK(max_abs(p * add.apply(0.0, Matrix::Identity(cutoff, cutoff)) * p) <= 1e-12);

  // -Tr{L^dag rho} = gamma_plus - gamma_minus on low-occupancy states.
  const DensityMatrix th = thermal_state(0.2, cutoff, 1e-6);
  CHECK(-amp.adjoint_apply(0.0, th.matrix()).trace().real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(-loss.adjoint_apply(0.0, th.matrix()).trace().real() ==
        doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(std::abs(add.adjoint_apply(0.0, th.matrix()).trace().real()) <= 1e-6);

  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    Matrix low = Matrix::Zero(cutoff, cutoff);
    low.topLeftCorner(cutoff - 2, cutoff - 2) = random_density_matrix(cutoff - 2, rng).matrix();
    CHECK(std::abs(amp.apply(0.0, low).trace()) <= 1e-9);
  }
}

TEST_CASE("thermal_state") {
  const DensityMatrix vac = thermal_state(0.0, 10);
  CHECK(vac.matrix()(0, 0).real() == doctest::Approx(1.0));
  const DensityMatrix th = thermal_state(0.5, 40);
  double mean = 0.0;
  for (Index n = 0; n < 40; ++n) mean += static_cast<double>(n) * th.matrix()(n, n).real();
  CHECK(std::abs(mean - 0.5) <= 1e-6);
  const double n = 0.5;
  CHECK(von_neumann_entropy(th.matrix()) ==
        doctest::Approx((n + 1) * std::log(n + 1) - n * std::log(n)).epsilon(1e-8));
  CHECK_THROWS_AS(thermal_state(5.0, 10), TruncationError);
}
