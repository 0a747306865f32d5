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

// Master-equation integration, intermediate propagators, entropy rates and
// CP-divisibility checks.

#pragma once

#include "entdyn/generator.hpp"

#include <functional>
#include <string>
#include <vector>

namespace entdyn {

using StateFunction = std::function<Matrix(double)>;

struct PropagateOptions {
  /// Accepted difference between RK4 with n and 2n sub-steps, per unit time
  /// (trace norm).
  double error_per_unit_time = 1e-7;
  /// Minimum eigenvalue below -psd_failure aborts the integration.
  double psd_failure = 1e-6;
  /// Fock generators: population on levels >= cutoff - 2 above this aborts.
  double tail_bound = 1e-8;
  /// Upper bound on the sub-step length.
  double max_step = 0.05;
  int max_refinements = 16;
};

struct Trajectory {
  std::vector<double> grid;
  std::vector<DensityMatrix> states;
  std::vector<Matrix> derivatives;
  std::vector<SupportProjector> supports;
  /// |Tr - 1| before renormalization, per grid point.
  std::vector<double> trace_defects;
  /// Exact or locally integrated state at arbitrary t within the grid span.
  StateFunction state_at;

  std::size_t size() const { return grid.size(); }
};

/// RK4 on each grid interval with sub-step doubling; states re-Hermitized and
/// renormalized after every interval.
Trajectory propagate(const LindbladGenerator& l, const DensityMatrix& rho0,
                     const std::vector<double>& grid,
                     const PropagateOptions& options = PropagateOptions{});

/// Trajectory from a closed-form state. Derivatives come from `derivative`
/// when provided, else from central differences with step `fd_step`.
Trajectory closed_form_trajectory(const StateFunction& state, const std::vector<double>& grid,
                                  const StateFunction& derivative = nullptr,
                                  double fd_step = 1e-6);

/// rho_t = (1 - e^{-t})|0><0| + e^{-t}|1><1|.
Matrix damping_example_state(double t);
Matrix damping_example_derivative(double t);
/// rho_t = cos^2(pi t)|0><0| + sin^2(pi t)|1><1|.
Matrix oscillatory_example_state(double t);
Matrix oscillatory_example_derivative(double t);

std::vector<double> uniform_grid(double t0, double t1, std::size_t intervals);

struct IntermediateMapOptions {
  int initial_steps = 8;
  double tolerance = 1e-8;
  int max_doublings = 14;
};

/// Ordered product of exp(L_{tau_k} dtau) at interval midpoints; step count
/// doubled until successive superoperators agree entrywise within tolerance.
Superoperator intermediate_map(const LindbladGenerator& l, double s, double t,
                               const IntermediateMapOptions& options = IntermediateMapOptions{});

/// -Tr{rho_dot log rho} with the logarithm restricted to supp(rho).
double entropy_rate(const Matrix& rho, const Matrix& rho_dot,
                    const LinalgTolerances& tol = kDefaultTolerances);

/// (S(t + h) - S(t - h)) / (2h) from a state callable.
double entropy_rate_fd(const StateFunction& state, double t, double h);
/// Same, using traj.state_at around grid point `index`. Throws DomainError at
/// the boundary of the grid.
double entropy_rate_fd(const Trajectory& traj, std::size_t index, double h);
/// (-3 S(t) + 4 S(t + h) - S(t + 2h)) / (2h).
double entropy_rate_fd_forward(const StateFunction& state, double t, double h);

enum class DivisibilityVerdict { kCpDivisible, kPDivisibleOnlyUndetermined, kNotCpDivisible };

std::string to_string(DivisibilityVerdict v);

struct DivisibilityReport {
  std::vector<double> interval_start;
  std::vector<double> interval_end;
  std::vector<double> choi_min_eigenvalue;
  std::vector<double> tp_defect;
  /// min over each rate function on the grid span.
  std::vector<double> rate_minimum;
  double tolerance = 1e-9;
  DivisibilityVerdict verdict = DivisibilityVerdict::kCpDivisible;
};

/// Builds M_{t_{k+1}, t_k} for consecutive grid points. Verdict: cp_divisible
/// if every Choi spectrum is >= -tol; otherwise not_cp_divisible, unless every
/// failing interval map is still positive on sampled pure states, in which case
/// p_divisible_only_undetermined.
DivisibilityReport cp_divisibility_check(const LindbladGenerator& l,
                                         const std::vector<double>& grid,
                                         double tolerance = 1e-9);

}  // namespace entdyn
