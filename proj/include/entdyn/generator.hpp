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

// Time-dependent Lindblad generators
//
//   L_t(rho) = -i[H(t), rho] + sum_i g_i(t) (A_i rho A_i^dag - {A_i^dag A_i, rho}/2)
//
// with H(t) = sum_j h_j(t) H_j. Coefficients are RateFunctions; operators are
// constant matrices.

#pragma once

#include "entdyn/channel.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace entdyn {

/// Real function of time. Builtin kinds are finite sums of terms
/// a * exp(k t) * cos(nu t + phi), which have closed-form integrals.
/// custom() wraps an arbitrary callable and integrates numerically.
class RateFunction {
 public:
  struct Term {
    double a = 0.0;
    double k = 0.0;
    double nu = 0.0;
    double phi = 0.0;
    bool operator==(const Term&) const = default;
  };

  /// c
  static RateFunction constant(double c);
  /// a cos^2(omega t + phi)
  static RateFunction cosine_squared(double a, double omega, double phi = 0.0);
  /// a exp(k t)
  static RateFunction exponential(double a, double k);
  /// c + a sin(omega t + phi)
  static RateFunction sinusoid(double c, double a, double omega, double phi = 0.0);
  static RateFunction from_terms(std::vector<Term> terms);
  static RateFunction custom(std::function<double(double)> f, std::string label = "custom");

  double operator()(double t) const;
  /// int_s^t g(tau) d tau.
  double integral(double s, double t) const;

  RateFunction operator+(const RateFunction& other) const;
  RateFunction operator*(double s) const;

  /// Tag used for serialization: "constant", "cosine_squared", "exponential",
  /// "sinusoid", "terms" or the custom label.
  const std::string& kind() const { return kind_; }
  /// Named parameters of builtin tags.
  const std::map<std::string, double>& params() const { return params_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_custom() const { return static_cast<bool>(custom_); }
  /// True for builtin kinds whose terms carry no time dependence.
  bool is_constant() const;

  /// min over a uniform sample of [t0, t1]; used to report rate signs.
  double sampled_min(double t0, double t1, int samples = 1001) const;

 private:
  std::string kind_ = "terms";
  std::map<std::string, double> params_;
  std::vector<Term> terms_;
  std::function<double(double)> custom_;
};

struct HamiltonianTerm {
  RateFunction coefficient;
  Matrix op;
};

struct JumpTerm {
  RateFunction rate;
  Matrix op;
};

class LindbladGenerator {
 public:
  explicit LindbladGenerator(Index dim);

  LindbladGenerator& add_hamiltonian(RateFunction coefficient, const Matrix& h);
  LindbladGenerator& add_jump(RateFunction rate, const Matrix& a);
  /// Marks the generator as a truncated Fock-space model with levels
  /// 0..cutoff-1 (cutoff == dim).
  LindbladGenerator& set_fock_cutoff(Index cutoff);

  Index dim() const { return dim_; }
  const std::vector<HamiltonianTerm>& hamiltonian_terms() const { return hamiltonian_; }
  const std::vector<JumpTerm>& jumps() const { return jumps_; }
  std::optional<Index> fock_cutoff() const { return cutoff_; }

  Matrix hamiltonian(double t) const;
  Matrix apply(double t, const Matrix& rho) const;
  Matrix adjoint_apply(double t, const Matrix& x) const;
  /// Column-stacked matrix of L_t.
  Superoperator superoperator(double t) const;
  Superoperator adjoint_superoperator(double t) const;

  /// All rates nonnegative on a uniform sample of [t0, t1].
  bool rates_nonnegative(double t0, double t1, int samples = 1001) const;
  /// No coefficient depends on time.
  bool time_independent() const;

 private:
  Index dim_;
  std::vector<HamiltonianTerm> hamiltonian_;
  std::vector<JumpTerm> jumps_;
  std::vector<Matrix> jump_gram_;  // A^dag A
  std::vector<Matrix> ham_super_;
  std::vector<Matrix> jump_super_;
  std::optional<Index> cutoff_;
};

// --- builtins ----------------------------------------------------------------

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// Truncated annihilation operator, a|n> = sqrt(n)|n-1> for n < cutoff.
Matrix annihilation_operator(Index cutoff);

/// Jump sigma_z with rate gamma(t)/2, no Hamiltonian.
LindbladGenerator dephasing_generator(const RateFunction& gamma);

/// Jumps (gamma_plus, a^dag) and (gamma_minus, a) on levels 0..cutoff-1.
LindbladGenerator bosonic_generator(double gamma_plus, double gamma_minus, Index cutoff);
LindbladGenerator amplifier_generator(double n_thermal, Index cutoff);
LindbladGenerator lossy_generator(double n_thermal, Index cutoff);
/// gamma_plus = gamma_minus = n_thermal.
LindbladGenerator additive_noise_generator(double n_thermal, Index cutoff);

/// Jumps (p(t), |0><1|) and (1 - p(t), |1><0|) with p(t) = cos^2(omega t):
/// the instantaneous relaxation towards the GADC fixed point.
LindbladGenerator gadc_matched_generator(double omega);

/// Exact time-local generator of t -> gadc(t, omega): jumps (g_down(t), |0><1|)
/// and (1 - g_down(t), |1><0|) with g_down = p + p'(1 - exp(-t)). The rates
/// go negative when |p'| is large.
LindbladGenerator gadc_time_local_generator(double omega);

/// Heisenberg-Weyl jumps W_x (x != 0) with rate kappa/d^2; self-adjoint and
/// unital, generating depolarizing(d, 1 - exp(-kappa t)).
LindbladGenerator depolarizing_generator(Index d, double kappa);

/// Geometric state p_n = (1 - r) r^n, r = N/(N+1), truncated to cutoff
/// levels and renormalized. Throws TruncationError if r^cutoff > tail_bound.
DensityMatrix thermal_state(double n_thermal, Index cutoff, double tail_bound = 1e-8);

/// Population on levels n >= cutoff - 2.
double fock_tail_mass(const Matrix& rho);

/// Projector onto levels 0..cutoff-1-margin. The default margin 2 is where the
/// truncated [a, a^dag] = 1; finite-time maps smear the edge further down and
/// need a wider margin (about cutoff/2 for t ~ 0.1).
Matrix fock_trusted_projector(Index cutoff, Index margin = 2);

}  // namespace entdyn
