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

#include "entdyn/dynamics.hpp"
#include "entdyn/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <numbers>

using namespace entdyn;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix plus_state() {
  Vector v(2);
  v << 1.0, 1.0;
  v /= std::sqrt(2.0);
  return v * v.adjoint();
}

// Frozen oracle (extended precision): dS/dt at t = 1 for diag(1 - e^{-t}, e^{-t}).
constexpr double kDampingRateAtOne = -0.19914228500721254;

}  // namespace

TEST_CASE("propagate: dephasing against the closed form") {
  const LindbladGenerator l = dephasing_generator(RateFunction::constant(1.0));
  const auto grid = uniform_grid(0.0, 3.0, 30);
  const Trajectory traj = propagate(l, DensityMatrix(plus_state()), grid);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Matrix& rho = traj.states[k].matrix();
    // L(sigma_x) = -sigma_x with gamma = 1, so coherences decay as e^{-t}.
    CHECK(std::abs(rho(0, 1).real() - 0.5 * std::exp(-grid[k])) <= 1e-8);
    CHECK(rho(0, 0).real() == doctest::Approx(0.5));
    CHECK(traj.trace_defects[k] <= 1e-12);
    CHECK(std::abs(traj.derivatives[k].trace()) <= 1e-12);
  }
}

TEST_CASE("propagate: fixed points stay fixed") {
  const LindbladGenerator l = depolarizing_generator(3, 0.8);
  const auto grid = uniform_grid(0.0, 2.0, 20);
  const Trajectory traj = propagate(l, DensityMatrix::maximally_mixed(3), grid);
  for (const auto& s : traj.states) {
    CHECK(trace_norm_hermitian(s.matrix() - Matrix::Identity(3, 3) / 3.0) <= 1e-7);
  }
  const LindbladGenerator deph = dephasing_generator(RateFunction::cosine_squared(1.0, 2.0));
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 0.3;
  d(1, 1) = 0.7;
  const Trajectory t2 = propagate(deph, DensityMatrix(d), grid);
  for (const auto& s : t2.states) CHECK(trace_norm_hermitian(s.matrix() - d) <= 1e-7);
}

TEST_CASE("propagate: bosonic trace preservation and truncation guard") {
  const LindbladGenerator add = additive_noise_generator(0.2, 30);
  const auto grid = uniform_grid(0.0, 1.0, 10);
  const Trajectory traj = propagate(add, thermal_state(0.2, 30), grid);
  for (const auto& s : traj.states) CHECK(std::abs(s.trace() - 1.0) <= 1e-8);
  for (double defect : traj.trace_defects) CHECK(defect <= 1e-8);

  // Mean photon number of the amplifier grows as 1.4 e^t - 1.2, so the tail
  // guard must trip well before t = 5 at cutoff 12.
  const LindbladGenerator amp = amplifier_generator(0.2, 12);
  CHECK_THROWS_AS(propagate(amp, thermal_state(0.2, 12, 1e-6), uniform_grid(0.0, 5.0, 50)),
                  TruncationError);
}

TEST_CASE("propagate: rejects bad grids") {
  const LindbladGenerator l = dephasing_generator(RateFunction::constant(1.0));
  CHECK_THROWS_AS(propagate(l, DensityMatrix(plus_state()), {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(propagate(l, DensityMatrix::maximally_mixed(3), {0.0, 1.0}), DimensionError);
}

TEST_CASE("propagate: state_at interpolates consistently") {
  Rng rng(1);
  LindbladGenerator l(2);
  l.add_hamiltonian(RateFunction::constant(1.0), pauli_x());
  l.add_jump(RateFunction::exponential(0.5, -0.3), pauli_z());
  const auto grid = uniform_grid(0.0, 1.0, 10);
  const Trajectory traj = propagate(l, random_full_rank_state(2, rng), grid);
  const auto fine = uniform_grid(0.0, 1.0, 40);
  const Trajectory ref = propagate(l, traj.states[0], fine);
  for (std::size_t k = 0; k < fine.size(); ++k) {
    CHECK(trace_norm_hermitian(traj.state_at(fine[k]) - ref.states[k].matrix()) <= 1e-7);
  }
}

TEST_CASE("intermediate_map") {
  const LindbladGenerator dep = depolarizing_generator(2, 0.9);
  const Superoperator m = intermediate_map(dep, 0.3, 1.1);
  const Matrix direct = (dep.superoperator(0.0).matrix() * 0.8).exp();
  CHECK(max_abs(m.matrix() - direct) <= 1e-9);
  // Generates depolarizing(d, 1 - e^{-kappa t}).
  CHECK(max_abs(m.matrix() - depolarizing(2, 1.0 - std::exp(-0.9 * 0.8)).superoperator().matrix()) <=
        1e-9);
  CHECK(max_abs(intermediate_map(dep, 0.5, 0.5).matrix() - Matrix::Identity(4, 4)) == 0.0);
  CHECK_THROWS_AS(intermediate_map(dep, 1.0, 0.5), DomainError);

  // Semigroup law.
  const Superoperator m1 = intermediate_map(dep, 0.0, 0.7);
  const Superoperator m2 = intermediate_map(dep, 0.0, 1.4);
  CHECK(max_abs(compose(m1, m1).matrix() - m2.matrix()) <= 1e-7);

  // Composition law with time dependence.
  LindbladGenerator l(2);
  l.add_hamiltonian(RateFunction::cosine_squared(1.0, 2.0), pauli_x());
  l.add_jump(RateFunction::sinusoid(1.0, 0.5, 3.0), pauli_z());
  const Superoperator ts = intermediate_map(l, 0.2, 1.0);
  const Superoperator tr = intermediate_map(l, 0.6, 1.0);
  const Superoperator rs = intermediate_map(l, 0.2, 0.6);
  CHECK(max_abs(ts.matrix() - compose(tr, rs).matrix()) <= 1e-7);

  const LindbladGenerator deph = dephasing_generator(RateFunction::cosine_squared(1.0, 1.0));
  CHECK(is_cptp(intermediate_map(deph, 0.0, 0.9)).choi_min_eigenvalue >= -1e-9);
}

TEST_CASE("entropy_rate: worked examples") {
  const double ln2 = std::numbers::ln2;
  CHECK(std::abs(entropy_rate(damping_example_state(ln2), damping_example_derivative(ln2))) <=
        1e-8);
  const double r1 = entropy_rate(damping_example_state(1.0), damping_example_derivative(1.0));
  CHECK(std::abs(r1 - kDampingRateAtOne) <= 1e-12);
  CHECK(std::abs(entropy_rate_fd(damping_example_state, 1.0, 1e-4) - kDampingRateAtOne) <= 1e-6);
  CHECK(std::abs(entropy_rate_fd(oscillatory_example_state, 0.25, 1e-4)) <= 1e-6);

  // Unitary dynamics of a pure state.
  LindbladGenerator u(2);
  u.add_hamiltonian(RateFunction::constant(1.3), pauli_y());
  Vector zero = Vector::Zero(2);
  zero(0) = 1.0;
  const Trajectory traj =
      propagate(u, DensityMatrix::pure(zero), uniform_grid(0.0, 2.0, 20));
  for (std::size_t k = 0; k < traj.size(); ++k) {
    CHECK(std::abs(entropy_rate(traj.states[k].matrix(), traj.derivatives[k])) <= 1e-8);
  }
  CHECK_THROWS_AS(entropy_rate(plus_state(), Matrix::Identity(2, 2)), PreconditionError);
}

TEST_CASE("entropy_rate: one-sided limit at the oscillatory rank change") {
  // The formula gives 0 at t = 0 (log 1 on the support); the analytic rate
  // 2 pi^2 t log(1 / (pi^2 t^2)) + O(t^3) tends to 0 from above.
  CHECK(entropy_rate(oscillatory_example_state(0.0), oscillatory_example_derivative(0.0)) == 0.0);
  // Below t ~ 1e-6 the small eigenvalue drops under the support tolerance and
  // the state is treated as pure again.
  double prev = 1.0;
  for (double t : {1e-3, 1e-4, 1e-5}) {
    const double r = entropy_rate(oscillatory_example_state(t), oscillatory_example_derivative(t));
    const double pt = std::numbers::pi * t;
    const double leading = 2.0 * std::numbers::pi * pt * std::log(1.0 / (pt * pt));
    CHECK(r > 0.0);
    CHECK(r < prev);
    CHECK(std::abs(r - leading) <= 0.01 * leading);
    prev = r;
  }
  CHECK(prev <= 5e-3);
}

TEST_CASE("entropy_rate matches finite differences on random Lindblad trajectories") {
  Rng rng(2);
  int points = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const Index d = 2 + trial % 2;
    LindbladGenerator l(d);
    l.add_hamiltonian(RateFunction::constant(1.0), random_hermitian(d, rng) * 0.5);
    l.add_jump(RateFunction::constant(0.3), random_matrix(d, d, rng) * 0.5);
    l.add_jump(RateFunction::cosine_squared(0.4, 1.0), random_matrix(d, d, rng) * 0.5);
    const auto grid = uniform_grid(0.0, 1.0, 10);
    const Trajectory traj = propagate(l, random_full_rank_state(d, rng, 0.05), grid);
    for (std::size_t k = 1; k <= 5; ++k) {
      const double exact = entropy_rate(traj.states[k].matrix(), traj.derivatives[k]);
      CHECK(std::abs(exact - entropy_rate_fd(traj, k, 1e-4)) <= 1e-6);
      CHECK(std::abs((support_projector(traj.states[k].matrix()).projector *
                      traj.derivatives[k]).trace()) <= 1e-8);
      ++points;
    }
    CHECK_THROWS_AS(entropy_rate_fd(traj, 0, 1e-4), DomainError);
    CHECK_THROWS_AS(entropy_rate_fd(traj, grid.size() - 1, 1e-4), DomainError);
  }
  CHECK(points == 50);
}

TEST_CASE("closed_form_trajectory") {
  const auto grid = uniform_grid(0.5, 2.0, 15);
  const Trajectory a = closed_form_trajectory(damping_example_state, grid,
                                              damping_example_derivative);
  const Trajectory b = closed_form_trajectory(damping_example_state, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    CHECK(max_abs(a.derivatives[k] - b.derivatives[k]) <= 1e-8);
  }
}

TEST_CASE("cp_divisibility_check") {
  const auto grid = uniform_grid(0.0, 2.0, 8);
  const DivisibilityReport ok =
      cp_divisibility_check(dephasing_generator(RateFunction::constant(1.0)), grid);
  CHECK(ok.verdict == DivisibilityVerdict::kCpDivisible);
  CHECK(ok.rate_minimum.at(0) == doctest::Approx(0.5));

  // gamma(t) = -sin t is negative on (0, pi).
  const RateFunction neg = RateFunction::sinusoid(0.0, -1.0, 1.0);
  const DivisibilityReport bad = cp_divisibility_check(dephasing_generator(neg), grid);
  CHECK(bad.verdict == DivisibilityVerdict::kNotCpDivisible);
  CHECK(*std::min_element(bad.choi_min_eigenvalue.begin(), bad.choi_min_eigenvalue.end()) < -1e-9);
  CHECK(bad.rate_minimum.at(0) < 0.0);

  const DivisibilityReport amp =
      cp_divisibility_check(amplifier_generator(0.2, 8), uniform_grid(0.0, 0.2, 2));
  CHECK(amp.verdict == DivisibilityVerdict::kCpDivisible);
  CHECK(to_string(amp.verdict) == "cp_divisible");
}
