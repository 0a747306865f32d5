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

#include "entdyn/dynamics.hpp"

#include "entdyn/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>

namespace entdyn {

namespace {

void require_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw DomainError("time grid is empty");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) throw DomainError("time grid is not strictly increasing");
  }
}

Matrix rk4(const LindbladGenerator& l, double t0, Matrix rho, double dt, int steps) {
  const double h = dt / steps;
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    const Matrix k1 = l.apply(t, rho);
    const Matrix k2 = l.apply(t + 0.5 * h, rho + (0.5 * h) * k1);
    const Matrix k3 = l.apply(t + 0.5 * h, rho + (0.5 * h) * k2);
    const Matrix k4 = l.apply(t + h, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

double min_eigenvalue(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

std::size_t nearest_index(const std::vector<double>& grid, double t) {
  const auto it = std::lower_bound(grid.begin(), grid.end(), t);
  if (it == grid.begin()) return 0;
  if (it == grid.end()) return grid.size() - 1;
  const std::size_t hi = static_cast<std::size_t>(it - grid.begin());
  return (t - grid[hi - 1] <= grid[hi] - t) ? hi - 1 : hi;
}

}  // namespace

std::vector<double> uniform_grid(double t0, double t1, std::size_t intervals) {
  if (intervals == 0 || !(t1 > t0)) throw DomainError("uniform_grid: need t1 > t0, intervals > 0");
  std::vector<double> g(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    g[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(intervals);
  }
  g.back() = t1;
  return g;
}

Trajectory propagate(const LindbladGenerator& l, const DensityMatrix& rho0,
                     const std::vector<double>& grid, const PropagateOptions& options) {
  require_grid(grid);
  if (rho0.dim() != l.dim()) throw DimensionError("propagate: state dimension mismatch");
  const bool fock = l.fock_cutoff().has_value();

  Trajectory traj;
  traj.grid = grid;
  traj.states.reserve(grid.size());
  traj.derivatives.reserve(grid.size());
  traj.supports.reserve(grid.size());
  traj.trace_defects.reserve(grid.size());

  auto record = [&](double t, const Matrix& rho, double defect) {
    if (fock) {
      const double tail = fock_tail_mass(rho);
      if (tail > options.tail_bound) {
        std::ostringstream msg;
        msg << "propagate: Fock tail mass " << tail << " exceeds " << options.tail_bound
            << " at t = " << t;
        throw TruncationError(msg.str());
      }
    }
    DensityMatrix::Tolerances tol;
    tol.psd = options.psd_failure;
    traj.states.emplace_back(rho, tol);
    traj.derivatives.push_back(l.apply(t, rho));
    traj.supports.push_back(support_projector(rho));
    traj.trace_defects.push_back(defect);
  };

  Matrix rho = rho0.matrix();
  record(grid.front(), rho, std::abs(rho.trace().real() - 1.0));

  int steps = 1;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double t0 = grid[k - 1];
    const double dt = grid[k] - t0;
    steps = std::max({1, steps / 2, static_cast<int>(std::ceil(dt / options.max_step))});
    Matrix coarse = rk4(l, t0, rho, dt, steps);
    Matrix fine = rk4(l, t0, rho, dt, 2 * steps);
    int refinements = 0;
    while (trace_norm_hermitian(fine - coarse) > options.error_per_unit_time * dt) {
      if (++refinements > options.max_refinements) {
        throw NumericalError("propagate: step refinement did not converge near t = " +
                             std::to_string(t0));
      }
      steps *= 2;
      coarse = std::move(fine);
      fine = rk4(l, t0, rho, dt, 2 * steps);
    }
    Matrix next = 0.5 * (fine + fine.adjoint());
    const double tr = next.trace().real();
    const double defect = std::abs(tr - 1.0);
    next /= tr;
    const double lo = min_eigenvalue(next);
    if (lo < -options.psd_failure) {
      throw NumericalError("propagate: state lost positivity (min eigenvalue " +
                           std::to_string(lo) + ") at t = " + std::to_string(grid[k]));
    }
    record(grid[k], next, defect);
    rho = std::move(next);
  }

  auto gen = std::make_shared<const LindbladGenerator>(l);
  auto g = std::make_shared<const std::vector<double>>(grid);
  std::vector<Matrix> raw;
  raw.reserve(traj.states.size());
  for (const auto& s : traj.states) raw.push_back(s.matrix());
  auto states = std::make_shared<const std::vector<Matrix>>(std::move(raw));
  traj.state_at = [gen, g, states](double t) -> Matrix {
    const std::size_t i = nearest_index(*g, t);
    const double delta = t - (*g)[i];
    if (delta == 0.0) return (*states)[i];
    const int n = std::max(2, static_cast<int>(std::ceil(std::abs(delta) / 1e-3)));
    return rk4(*gen, (*g)[i], (*states)[i], delta, n);
  };
  return traj;
}

Trajectory closed_form_trajectory(const StateFunction& state, const std::vector<double>& grid,
                                  const StateFunction& derivative, double fd_step) {
  require_grid(grid);
  if (!state) throw PreconditionError("closed_form_trajectory: empty state callable");
  Trajectory traj;
  traj.grid = grid;
  for (double t : grid) {
    const Matrix rho = state(t);
    traj.states.emplace_back(rho);
    traj.derivatives.push_back(derivative
                                   ? derivative(t)
                                   : Matrix((state(t + fd_step) - state(t - fd_step)) /
                                            (2.0 * fd_step)));
    traj.supports.push_back(support_projector(rho));
    traj.trace_defects.push_back(std::abs(rho.trace().real() - 1.0));
  }
  traj.state_at = state;
  return traj;
}

Matrix damping_example_state(double t) {
  Matrix m = Matrix::Zero(2, 2);
  const double e = std::exp(-t);
  m(0, 0) = -std::expm1(-t);
  m(1, 1) = e;
  return m;
}

Matrix damping_example_derivative(double t) {
  Matrix m = Matrix::Zero(2, 2);
  const double e = std::exp(-t);
  m(0, 0) = e;
  m(1, 1) = -e;
  return m;
}

Matrix oscillatory_example_state(double t) {
  Matrix m = Matrix::Zero(2, 2);
  const double c = std::cos(std::numbers::pi * t);
  const double s = std::sin(std::numbers::pi * t);
  m(0, 0) = c * c;
  m(1, 1) = s * s;
  return m;
}

Matrix oscillatory_example_derivative(double t) {
  Matrix m = Matrix::Zero(2, 2);
  const double r = std::numbers::pi * std::sin(2.0 * std::numbers::pi * t);
  m(0, 0) = -r;
  m(1, 1) = r;
  return m;
}

Superoperator intermediate_map(const LindbladGenerator& l, double s, double t,
                               const IntermediateMapOptions& options) {
  if (!(t >= s)) throw DomainError("intermediate_map: need s <= t");
  const Index d = l.dim();
  if (t == s) return Superoperator::identity(d);
  if (l.time_independent()) {
    return Superoperator((l.superoperator(s).matrix() * (t - s)).exp(), d, d);
  }
  auto product = [&](int n) {
    const double dtau = (t - s) / n;
    Matrix m = Matrix::Identity(d * d, d * d);
    for (int k = 0; k < n; ++k) {
      const double mid = s + (k + 0.5) * dtau;
      m = (l.superoperator(mid).matrix() * dtau).exp() * m;
    }
    return m;
  };
  int n = std::max(1, options.initial_steps);
  Matrix prev = product(n);
  for (int r = 0; r < options.max_doublings; ++r) {
    n *= 2;
    Matrix next = product(n);
    const double diff = (next - prev).cwiseAbs().maxCoeff();
    if (diff <= options.tolerance) return Superoperator(std::move(next), d, d);
    prev = std::move(next);
  }
  throw NumericalError("intermediate_map: time-ordered product did not converge on [" +
                       std::to_string(s) + ", " + std::to_string(t) + "]");
}

double entropy_rate(const Matrix& rho, const Matrix& rho_dot, const LinalgTolerances& tol) {
  if (rho.rows() != rho_dot.rows() || rho.cols() != rho_dot.cols()) {
    throw DimensionError("entropy_rate: dimension mismatch");
  }
  const double tr = std::abs(rho_dot.trace().real());
  if (tr > 1e-9) {
    throw PreconditionError("entropy_rate: derivative is not traceless (|Tr| = " +
                            std::to_string(tr) + ")");
  }
  return -(rho_dot * matrix_log_on_support(rho, tol)).trace().real();
}

double entropy_rate_fd(const StateFunction& state, double t, double h) {
  if (!(h > 0.0)) throw DomainError("entropy_rate_fd: h must be > 0");
  return (von_neumann_entropy(state(t + h)) - von_neumann_entropy(state(t - h))) / (2.0 * h);
}

double entropy_rate_fd(const Trajectory& traj, std::size_t index, double h) {
  if (index == 0 || index + 1 >= traj.size()) {
    throw DomainError("entropy_rate_fd: index is on the boundary of the grid");
  }
  if (traj.state_at) return entropy_rate_fd(traj.state_at, traj.grid[index], h);
  const double span = traj.grid[index + 1] - traj.grid[index - 1];
  return (von_neumann_entropy(traj.states[index + 1].matrix()) -
          von_neumann_entropy(traj.states[index - 1].matrix())) /
         span;
}

double entropy_rate_fd_forward(const StateFunction& state, double t, double h) {
  if (!(h > 0.0)) throw DomainError("entropy_rate_fd_forward: h must be > 0");
  return (-3.0 * von_neumann_entropy(state(t)) + 4.0 * von_neumann_entropy(state(t + h)) -
          von_neumann_entropy(state(t + 2.0 * h))) /
         (2.0 * h);
}

std::string to_string(DivisibilityVerdict v) {
  switch (v) {
    case DivisibilityVerdict::kCpDivisible:
      return "cp_divisible";
    case DivisibilityVerdict::kPDivisibleOnlyUndetermined:
      return "p_divisible_only_undetermined";
    case DivisibilityVerdict::kNotCpDivisible:
      return "not_cp_divisible";
  }
  return "not_cp_divisible";
}

namespace {

bool positive_on_sampled_pure_states(const Superoperator& m, double tol) {
  const Index d = m.dim_in();
  Rng rng(0x5eed);
  for (int k = 0; k < 256 + static_cast<int>(d); ++k) {
    Vector psi;
    if (k < d) {
      psi = Vector::Zero(d);
      psi(k) = 1.0;
    } else {
      psi = haar_pure_state(d, rng);
    }
    const Matrix out = m.apply(psi * psi.adjoint());
    if (min_eigenvalue(0.5 * (out + out.adjoint())) < -tol) return false;
  }
  return true;
}

}  // namespace

DivisibilityReport cp_divisibility_check(const LindbladGenerator& l,
                                         const std::vector<double>& grid, double tolerance) {
  require_grid(grid);
  DivisibilityReport r;
  r.tolerance = tolerance;
  for (const auto& j : l.jumps()) {
    r.rate_minimum.push_back(j.rate.sampled_min(grid.front(), grid.back()));
  }
  bool all_cp = true;
  bool failing_positive = true;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const Superoperator m = intermediate_map(l, grid[k - 1], grid[k]);
    const CptpReport c = is_cptp(m, tolerance);
    r.interval_start.push_back(grid[k - 1]);
    r.interval_end.push_back(grid[k]);
    r.choi_min_eigenvalue.push_back(c.choi_min_eigenvalue);
    r.tp_defect.push_back(c.tp_defect);
    if (!c.completely_positive) {
      all_cp = false;
      if (failing_positive && !positive_on_sampled_pure_states(m, tolerance)) {
        failing_positive = false;
      }
    }
  }
  if (all_cp) {
    r.verdict = DivisibilityVerdict::kCpDivisible;
  } else if (failing_positive) {
    r.verdict = DivisibilityVerdict::kPDivisibleOnlyUndetermined;
  } else {
    r.verdict = DivisibilityVerdict::kNotCpDivisible;
  }
  return r;
}

}  // namespace entdyn
