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

// Diamond norm of non-unitarity ||N||_osl = ||id - N^dag o N||_diamond for
// unital channels, and diamond distances, by multi-start ascent over pure
// inputs |psi>_RA with dim R = dim A. Every numerical value is a lower bound
// on the true maximum.

#pragma once

#include "entdyn/channel.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace entdyn {

/// (id_R (x) phi)(rho_RA) with rho_RA on C^{d_R} (x) C^{d_in}.
Matrix apply_id_tensor(const Superoperator& phi, const Matrix& rho_ra, Index d_r);

/// ||(id_R (x) phi)(|psi><psi|)||_1 with d_R = d_in.
double diamond_objective(const Superoperator& phi, const Vector& psi);

/// Maximally entangled unit vector on C^d (x) C^d.
Vector maximally_entangled(Index d);

struct AscentOptions {
  int starts = 32;
  double tolerance = 1e-8;     // stationarity threshold on the projected gradient
  int max_iterations = 400;
  double gradient_step = 1e-6;
  int restarts = 2;            // perturbation restarts on stagnation
  std::uint64_t seed = 2024;
};

struct OslashResult {
  double value = 0.0;
  Vector maximizer;
  int starts = 0;
  std::vector<double> per_start;
  /// Accepted objective values per start, in iteration order.
  std::vector<std::vector<double>> histories;
  bool converged = false;
};

/// Multi-start projected-gradient ascent of diamond_objective(phi, .). Start 0
/// is the maximally entangled state, the rest are Haar random.
OslashResult maximize_diamond_objective(const Superoperator& phi,
                                        const AscentOptions& options = AscentOptions{});

/// Objective for ||N||_osl; requires N unital and trace preserving.
double oslash_objective(const QuantumChannel& n, const Vector& psi);
OslashResult oslash_norm(const QuantumChannel& n, const AscentOptions& options = AscentOptions{});

/// 2 q (2 - q) (1 - 1/d^2).
double oslash_depolarizing_analytic(Index d, double q);

/// (1 + value/2) / 2 for value in [0, 2].
double success_probability(double norm_value);

/// Lower bound on ||N1 - N2||_diamond.
double diamond_distance(const QuantumChannel& n1, const QuantumChannel& n2,
                        const AscentOptions& options = AscentOptions{});

/// sqrt(2 delta) + delta.
double proposition7_bound(double delta);

struct Proposition7Check {
  double delta_estimate = 0.0;   // numerical lower bound on ||N - U||_diamond
  double oslash_estimate = 0.0;
  double bound_from_estimate = 0.0;
  std::optional<double> certified_delta;
  std::optional<double> certified_bound;
  /// Asserted only with a certified delta.
  std::optional<bool> holds;
  /// oslash_estimate <= bound_from_estimate; informational only.
  bool advisory_holds = false;
};

Proposition7Check proposition7_check(const QuantumChannel& n, const Matrix& u,
                                     const AscentOptions& options = AscentOptions{},
                                     std::optional<double> certified_delta = std::nullopt);

}  // namespace entdyn
