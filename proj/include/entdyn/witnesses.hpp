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

// Entropy-change bounds, rate bounds, non-Markovianity witnesses and measures.

#pragma once

#include "entdyn/dynamics.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace entdyn {

// --- entropy change under a single channel ---------------------------------

/// S(N(rho)) - S(rho).
double entropy_change(const QuantumChannel& n, const Matrix& rho);

/// D(rho || N^dag o N(rho)). Requires N trace preserving, or trace
/// non-increasing with N(rho) full rank.
ExtendedReal entropy_change_lower_bound(const QuantumChannel& n, const Matrix& rho);

/// Tr{[rho - N^dag o N(rho)] log rho}. Requires N(1) <= 1 and rho > 0.
double entropy_change_upper_bound(const QuantumChannel& n, const Matrix& rho);
/// ||rho - N^dag o N(rho)||_1 ||log rho||_inf, same preconditions.
double entropy_change_upper_bound_holder(const QuantumChannel& n, const Matrix& rho);

struct PinskerGap {
  ExtendedReal relative_entropy = ExtendedReal::finite(0.0);
  double trace_distance = 0.0;   // ||rho - N^dag o N(rho)||_1
  double half_trace_sq = 0.0;    // trace_distance^2 / 2
  double log_norm = 0.0;         // ||log rho||_inf
  double reverse_bound = 0.0;    // D / ||log rho||_inf
  bool pinsker_holds = false;    // D >= half_trace_sq - slack
  bool reverse_holds = false;    // trace_distance >= reverse_bound - slack
};

/// Requires N(1) <= 1, rho > 0 and N(rho) > 0.
PinskerGap pinsker_gap(const QuantumChannel& n, const Matrix& rho, double slack = 1e-10);

struct SimulationBound {
  double entropy_change = 0.0;        // S(E(rho_A)) - S(rho_A)
  double environment_entropy = 0.0;   // S(theta_C)
  ExtendedReal relative_entropy = ExtendedReal::finite(0.0);
  ExtendedReal bound = ExtendedReal::finite(0.0);  // S(theta_C) + D(...)
};

/// E(rho_A) = F(rho_A (x) theta_C) with F a channel on A (x) C.
SimulationBound environment_simulation_bound(const QuantumChannel& f, const Matrix& theta_c,
                                             const Matrix& rho_a);

// --- rate bounds for generators ---------------------------------------------

/// -Tr{Pi_t L_t^dag(rho_t)}.
double theorem2_bound(const LindbladGenerator& l, double t, const Matrix& rho);
/// sum_i g_i(t) <[A_i^dag, A_i]>; equals theorem2_bound for full-rank rho.
double theorem2_bound_structural(const LindbladGenerator& l, double t, const Matrix& rho);
/// Tr{Pi_t L_t^dag(rho_t)}.
double nonunitality_witness(const LindbladGenerator& l, double t, const Matrix& rho);

// --- channel families and the f(t) witness -----------------------------------

struct ChannelFamily {
  std::string name;
  /// M_t = M_{t,0}; may be evaluated slightly outside t >= 0 by stencils.
  std::function<Superoperator(double)> evolution;
  /// M_{t+eps,t}; eps may be negative.
  std::function<Superoperator(double, double)> intermediate;
};

/// evolution = gadc(t), intermediate(t, eps) = gadc(eps).
ChannelFamily gadc_family(double omega);
/// Pure decoherence with coherence factor exp(-int_s^t gamma).
ChannelFamily dephasing_family(const RateFunction& gamma);

struct WitnessOptions {
  double eps0 = 1e-3;       // stencil for the eps-derivative
  double time_step = 1e-3;  // stencil for d rho / dt
  double eps_w = 1e-7;
  double eps_c = 1e-6;
};

struct FValue {
  double t = 0.0;
  double entropy_rate = 0.0;
  double eps_derivative = 0.0;
  double f = 0.0;
};

/// f(t) for rho_t = M_t(rho0): entropy rate from a Richardson-extrapolated
/// d rho/dt plus the eps-derivative of Tr{Pi_t M^dag M(rho_t)} (central
/// differences at eps0 and eps0/2, one Richardson step).
FValue witness_f_channel(const ChannelFamily& family, const Matrix& rho0, double t,
                         const WitnessOptions& options = WitnessOptions{});

/// Closed form of f(t) for the GADC family from rho0 = 1/2.
double gadc_f_closed_form(double t, double omega);
double gadc_w(double t, double omega);
double gadc_w_dot(double t, double omega);

bool test_a(double f_value, double eps_w = 1e-7);
bool test_b(double rate, double theorem2_bound, double eps_w = 1e-7);
bool test_c(double eps_derivative, double generator_term, double eps_c = 1e-6);

struct WitnessReport {
  double time = 0.0;
  double entropy_rate = 0.0;
  double theorem2_bound = 0.0;
  double f_value = 0.0;
  double nonunitality = 0.0;
  bool test_a_passed = false;
  bool test_b_passed = false;
  bool test_c_passed = false;
};

/// Per grid point report for a generator trajectory. The eps-derivative is
/// the exact limit Tr{Pi_t (L_t + L_t^dag)(rho_t)}.
std::vector<WitnessReport> witness_reports(const LindbladGenerator& l, const Trajectory& traj,
                                           const WitnessOptions& options = WitnessOptions{});

/// Per grid point report for a channel family; tests b and c use `l` for the
/// generator term.
std::vector<WitnessReport> witness_reports(const ChannelFamily& family, const Matrix& rho0,
                                           const std::vector<double>& grid,
                                           const LindbladGenerator& l,
                                           const WitnessOptions& options = WitnessOptions{});

// --- measures ----------------------------------------------------------------

struct StateSampler {
  std::vector<DensityMatrix> states;
};

/// Maximally mixed state, then `random_count` random states (half Haar pure,
/// half Hilbert-Schmidt mixed), then for qubits a 96-point Bloch grid.
StateSampler default_state_sampler(Index d, int random_count = 64, std::uint64_t seed = 7,
                                   bool bloch_grid = true);

using StatePair = std::pair<DensityMatrix, DensityMatrix>;

/// Orthogonal basis pairs first, then random orthogonal pure pairs and random
/// mixed pairs up to `count` in total.
std::vector<StatePair> default_pair_sampler(Index d, int count = 64, std::uint64_t seed = 11);

struct MeasureResult {
  double value = 0.0;
  std::size_t argmax = 0;
  Matrix argmax_state;
  int samples_used = 0;
  std::vector<double> per_sample;
};

/// int over {g < -eps_w} of |g| with g sampled on `grid` and each sign change
/// of g + eps_w bisected to `bisect_tol` using `g` itself. The tight default
/// keeps isolated points (rank changes, where g can jump) from contributing.
double negative_part_integral(const std::function<double(double)>& g,
                              const std::vector<double>& grid, double eps_w = 1e-7,
                              double bisect_tol = 1e-12);
/// Same for the part above +threshold.
double positive_part_integral(const std::vector<double>& grid,
                              const std::vector<double>& values, double threshold = 0.0);

/// max over sampled rho0 of int_{g<0} |dS/dt + Tr{Pi L^dag rho}|.
MeasureResult measure_generator(const LindbladGenerator& l, const StateSampler& sampler,
                                const std::vector<double>& grid,
                                const WitnessOptions& options = WitnessOptions{},
                                const PropagateOptions& propagate_options = PropagateOptions{});

/// max over sampled rho0 of int_{f<0} |f|.
MeasureResult measure_channel(const ChannelFamily& family, const StateSampler& sampler,
                              const std::vector<double>& grid,
                              const WitnessOptions& options = WitnessOptions{});

struct BlpResult {
  double value = 0.0;
  std::size_t argmax = 0;
  std::vector<double> per_pair;
};

/// max over pairs of int_{sigma > 0} sigma dt with sigma = d/dt ||rho1 - rho2||_1 / 2
/// from central differences on the grid.
BlpResult blp_measure(const ChannelFamily& family, const std::vector<StatePair>& pairs,
                      const std::vector<double>& grid);

// --- semigroup sandwich ------------------------------------------------------

struct Sandwich {
  double lower = 0.0;    // -Tr{rho0 log rho_2t}
  double entropy = 0.0;  // S(rho_t)
  double upper = 0.0;    // -Tr{rho_2t log rho0}
  double entropy_change = 0.0;       // S(rho_t) - S(rho0)
  ExtendedReal relative_entropy = ExtendedReal::finite(0.0);  // D(rho0 || rho_2t)
  bool holds(double slack = 1e-8) const;
};

/// Requires L time independent, self-adjoint and unital (within 1e-9), rho0 > 0.
Sandwich semigroup_sandwich(const LindbladGenerator& l, const Matrix& rho0, double t);

}  // namespace entdyn
