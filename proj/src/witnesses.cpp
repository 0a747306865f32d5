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

#include "entdyn/witnesses.hpp"

#include "entdyn/random.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace entdyn {

namespace {

bool full_rank(const Matrix& rho) {
  return support_projector(rho).rank == static_cast<int>(rho.rows());
}

void require_full_rank(const Matrix& rho, const char* what) {
  if (!full_rank(rho)) throw PreconditionError(std::string(what) + ": state is not full rank");
}

void require_sub_unital(const QuantumChannel& n, const char* what) {
  const UnitalityClass c = unitality_class(n);
  if (c != UnitalityClass::kUnital && c != UnitalityClass::kStrictlySubUnital) {
    throw PreconditionError(std::string(what) + ": map is not sub-unital (" + to_string(c) +
                            ")");
  }
}

Matrix adjoint_after(const QuantumChannel& n, const Matrix& rho) {
  const Matrix out = n.apply(rho);
  Matrix back = Matrix::Zero(n.dim_in(), n.dim_in());
  for (const Matrix& k : n.kraus()) back.noalias() += k.adjoint() * out * k;
  return back;
}

double trace_with_projector(const Matrix& rho, const Matrix& x) {
  const Matrix pi = support_projector(rho).projector;
  return (pi * x).trace().real();
}

Matrix apply_hermitian(const Superoperator& m, const Matrix& x) {
  const Matrix y = m.apply(x);
  return 0.5 * (y + y.adjoint());
}

double bisect_crossing(const std::function<double(double)>& h, double a, double b, double ha,
                       double tol) {
  // h(a) and h(b) have opposite signs.
  double lo = a;
  double hi = b;
  double hlo = ha;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double hm = h(mid);
    if ((hm < 0.0) == (hlo < 0.0)) {
      lo = mid;
      hlo = hm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double entropy_change(const QuantumChannel& n, const Matrix& rho) {
  return von_neumann_entropy(n.apply(rho)) - von_neumann_entropy(rho);
}

ExtendedReal entropy_change_lower_bound(const QuantumChannel& n, const Matrix& rho) {
  switch (n.trace_behavior()) {
    case TraceBehavior::kPreserving:
      break;
    case TraceBehavior::kNonIncreasing:
      require_full_rank(n.apply(rho), "entropy_change_lower_bound");
      break;
    case TraceBehavior::kOther:
      throw PreconditionError("entropy_change_lower_bound: map is trace increasing");
  }
  return relative_entropy(rho, adjoint_after(n, rho));
}

double entropy_change_upper_bound(const QuantumChannel& n, const Matrix& rho) {
  require_sub_unital(n, "entropy_change_upper_bound");
  require_full_rank(rho, "entropy_change_upper_bound");
  const Matrix diff = rho - adjoint_after(n, rho);
  return (diff * matrix_log_on_support(rho)).trace().real();
}

double entropy_change_upper_bound_holder(const QuantumChannel& n, const Matrix& rho) {
  require_sub_unital(n, "entropy_change_upper_bound_holder");
  require_full_rank(rho, "entropy_change_upper_bound_holder");
  const Matrix diff = rho - adjoint_after(n, rho);
  return trace_norm_hermitian(diff) *
         schatten_norm(matrix_log_on_support(rho), kSchattenInfinity);
}

PinskerGap pinsker_gap(const QuantumChannel& n, const Matrix& rho, double slack) {
  require_sub_unital(n, "pinsker_gap");
  require_full_rank(rho, "pinsker_gap");
  require_full_rank(n.apply(rho), "pinsker_gap (output)");
  PinskerGap g;
  const Matrix back = adjoint_after(n, rho);
  g.relative_entropy = relative_entropy(rho, back);
  g.trace_distance = trace_norm_hermitian(rho - back);
  g.half_trace_sq = 0.5 * g.trace_distance * g.trace_distance;
  g.log_norm = schatten_norm(matrix_log_on_support(rho), kSchattenInfinity);
  if (g.relative_entropy.is_finite()) {
    const double d = g.relative_entropy.value();
    g.reverse_bound = g.log_norm > 0.0 ? d / g.log_norm : 0.0;
    g.pinsker_holds = d >= g.half_trace_sq - slack;
    g.reverse_holds = g.trace_distance >= g.reverse_bound - slack;
  } else {
    g.reverse_bound = std::numeric_limits<double>::infinity();
    g.pinsker_holds = true;
    g.reverse_holds = false;
  }
  return g;
}

SimulationBound environment_simulation_bound(const QuantumChannel& f, const Matrix& theta_c,
                                             const Matrix& rho_a) {
  const Index da = rho_a.rows();
  const Index dc = theta_c.rows();
  if (f.dim_in() != da * dc) {
    throw DimensionError("environment_simulation_bound: F input is not dim(A) * dim(C)");
  }
  const Matrix joint = kron(rho_a, theta_c);
  SimulationBound b;
  b.entropy_change = von_neumann_entropy(f.apply(joint)) - von_neumann_entropy(rho_a);
  b.environment_entropy = von_neumann_entropy(theta_c);
  b.relative_entropy = relative_entropy(joint, adjoint_after(f, joint));
  b.bound = b.relative_entropy.is_finite()
                ? ExtendedReal::finite(b.environment_entropy + b.relative_entropy.value())
                : ExtendedReal::infinity();
  return b;
}

double nonunitality_witness(const LindbladGenerator& l, double t, const Matrix& rho) {
  return trace_with_projector(rho, l.adjoint_apply(t, rho));
}

double theorem2_bound(const LindbladGenerator& l, double t, const Matrix& rho) {
  return -nonunitality_witness(l, t, rho);
}

double theorem2_bound_structural(const LindbladGenerator& l, double t, const Matrix& rho) {
  double acc = 0.0;
  for (const auto& j : l.jumps()) {
    const Matrix comm = j.op.adjoint() * j.op - j.op * j.op.adjoint();
    acc += j.rate(t) * (comm * rho).trace().real();
  }
  return acc;
}

ChannelFamily gadc_family(double omega) {
  ChannelFamily f;
  f.name = "gadc";
  f.evolution = [omega](double t) { return gadc_superoperator(t, omega); };
  f.intermediate = [omega](double, double eps) { return gadc_superoperator(eps, omega); };
  return f;
}

namespace {

Superoperator dephasing_superoperator(double factor) {
  Matrix m = Matrix::Identity(4, 4);
  m(1, 1) = factor;
  m(2, 2) = factor;
  return Superoperator(std::move(m), 2, 2);
}

}  // namespace

ChannelFamily dephasing_family(const RateFunction& gamma) {
  ChannelFamily f;
  f.name = "dephasing";
  f.evolution = [gamma](double t) {
    return dephasing_superoperator(std::exp(-gamma.integral(0.0, t)));
  };
  f.intermediate = [gamma](double t, double eps) {
    return dephasing_superoperator(std::exp(-gamma.integral(t, t + eps)));
  };
  return f;
}

double gadc_w(double t, double omega) { return std::cos(2.0 * omega * t) * -std::expm1(-t); }

double gadc_w_dot(double t, double omega) {
  return -2.0 * omega * std::sin(2.0 * omega * t) * -std::expm1(-t) +
         std::cos(2.0 * omega * t) * std::exp(-t);
}

double gadc_f_closed_form(double t, double omega) {
  const double w = gadc_w(t, omega);
  const double wd = gadc_w_dot(t, omega);
  return 0.5 * wd * std::log((1.0 - w) / (1.0 + w)) + w;
}

FValue witness_f_channel(const ChannelFamily& family, const Matrix& rho0, double t,
                         const WitnessOptions& options) {
  FValue out;
  out.t = t;
  const Matrix rho_t = apply_hermitian(family.evolution(t), rho0);

  auto rho_dot = [&](double h) {
    return Matrix((family.evolution(t + h).apply(rho0) - family.evolution(t - h).apply(rho0)) /
                  (2.0 * h));
  };
  const double h = options.time_step;
  Matrix dot = (4.0 * rho_dot(0.5 * h) - rho_dot(h)) / 3.0;
  dot = 0.5 * (dot + dot.adjoint());
  out.entropy_rate = entropy_rate(rho_t, dot);

  const Matrix pi = support_projector(rho_t).projector;
  auto g = [&](double eps) {
    const Superoperator m = family.intermediate(t, eps);
    return (pi * m.adjoint().apply(m.apply(rho_t))).trace().real();
  };
  auto central = [&](double e) { return (g(e) - g(-e)) / (2.0 * e); };
  const double d1 = central(options.eps0);
  const double d2 = central(0.5 * options.eps0);
  if (std::abs(d2 - d1) > 1e-2 * std::max(1.0, std::abs(d2))) {
    throw NumericalError("witness_f_channel: eps-derivative extrapolation did not converge");
  }
  out.eps_derivative = (4.0 * d2 - d1) / 3.0;
  out.f = out.entropy_rate + out.eps_derivative;
  return out;
}

bool test_a(double f_value, double eps_w) { return f_value < -eps_w; }

bool test_b(double rate, double bound, double eps_w) { return rate - bound < -eps_w; }

bool test_c(double eps_derivative, double generator_term, double eps_c) {
  return std::abs(eps_derivative - generator_term) > eps_c;
}

std::vector<WitnessReport> witness_reports(const LindbladGenerator& l, const Trajectory& traj,
                                           const WitnessOptions& options) {
  std::vector<WitnessReport> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double t = traj.grid[k];
    const Matrix& rho = traj.states[k].matrix();
    const Matrix& pi = traj.supports[k].projector;
    WitnessReport r;
    r.time = t;
    r.entropy_rate = entropy_rate(rho, traj.derivatives[k]);
    r.nonunitality = (pi * l.adjoint_apply(t, rho)).trace().real();
    r.theorem2_bound = -r.nonunitality;
    const double eps_derivative = (pi * traj.derivatives[k]).trace().real() + r.nonunitality;
    r.f_value = r.entropy_rate + eps_derivative;
    r.test_a_passed = test_a(r.f_value, options.eps_w);
    r.test_b_passed = test_b(r.entropy_rate, r.theorem2_bound, options.eps_w);
    // Test c is undefined across a rank change; skip grid points whose
    // neighbours within 1e-3 have a different rank.
    bool rank_change = false;
    for (std::size_t j = (k > 0 ? k - 1 : 0); j < std::min(traj.size(), k + 2); ++j) {
      if (std::abs(traj.grid[j] - t) <= 1e-3 && traj.supports[j].rank != traj.supports[k].rank) {
        rank_change = true;
      }
    }
    r.test_c_passed = !rank_change && test_c(eps_derivative, r.nonunitality, options.eps_c);
    out.push_back(r);
  }
  return out;
}

std::vector<WitnessReport> witness_reports(const ChannelFamily& family, const Matrix& rho0,
                                           const std::vector<double>& grid,
                                           const LindbladGenerator& l,
                                           const WitnessOptions& options) {
  std::vector<WitnessReport> out;
  out.reserve(grid.size());
  for (double t : grid) {
    const FValue fv = witness_f_channel(family, rho0, t, options);
    const Matrix rho_t = apply_hermitian(family.evolution(t), rho0);
    WitnessReport r;
    r.time = t;
    r.entropy_rate = fv.entropy_rate;
    r.f_value = fv.f;
    r.nonunitality = nonunitality_witness(l, t, rho_t);
    r.theorem2_bound = -r.nonunitality;
    r.test_a_passed = test_a(fv.f, options.eps_w);
    r.test_b_passed = test_b(fv.entropy_rate, r.theorem2_bound, options.eps_w);
    r.test_c_passed = test_c(fv.eps_derivative, r.nonunitality, options.eps_c);
    out.push_back(r);
  }
  return out;
}

StateSampler default_state_sampler(Index d, int random_count, std::uint64_t seed,
                                   bool bloch_grid) {
  StateSampler s;
  s.states.push_back(DensityMatrix::maximally_mixed(d));
  Rng rng(seed);
  for (int k = 0; k < random_count; ++k) {
    if (k % 2 == 0) {
      s.states.push_back(DensityMatrix::pure(haar_pure_state(d, rng)));
    } else {
      s.states.push_back(random_density_matrix(d, rng));
    }
  }
  if (bloch_grid && d == 2) {
    for (int i = 0; i < 8; ++i) {
      const double theta = std::numbers::pi * (i + 0.5) / 8.0;
      for (int j = 0; j < 12; ++j) {
        const double phi = 2.0 * std::numbers::pi * j / 12.0;
        Vector psi(2);
        psi(0) = std::cos(0.5 * theta);
        psi(1) = std::polar(std::sin(0.5 * theta), phi);
        s.states.push_back(DensityMatrix::pure(psi));
      }
    }
  }
  return s;
}

std::vector<StatePair> default_pair_sampler(Index d, int count, std::uint64_t seed) {
  std::vector<StatePair> pairs;
  auto add_pure = [&](const Vector& a, const Vector& b) {
    pairs.emplace_back(DensityMatrix::pure(a), DensityMatrix::pure(b));
  };
  {
    Vector e0 = Vector::Zero(d);
    Vector e1 = Vector::Zero(d);
    e0(0) = 1.0;
    e1(1) = 1.0;
    add_pure(e0, e1);
    add_pure(e0 + e1, e0 - e1);
    add_pure(e0 + kI * e1, e0 - kI * e1);
  }
  Rng rng(seed);
  while (static_cast<int>(pairs.size()) < count) {
    if (pairs.size() % 2 == 1) {
      const Vector a = haar_pure_state(d, rng);
      Vector b = haar_pure_state(d, rng);
      b -= a * (a.adjoint() * b)(0, 0);
      add_pure(a, b / b.norm());
    } else {
      pairs.emplace_back(random_density_matrix(d, rng), random_density_matrix(d, rng));
    }
  }
  pairs.erase(pairs.begin() + count, pairs.end());
  return pairs;
}

double negative_part_integral(const std::function<double(double)>& g,
                              const std::vector<double>& grid, double eps_w, double bisect_tol) {
  if (grid.size() < 2) return 0.0;
  auto shifted = [&](double t) { return g(t) + eps_w; };
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = g(grid[k]);
  double area = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double a = grid[k - 1];
    const double b = grid[k];
    const bool na = v[k - 1] < -eps_w;
    const bool nb = v[k] < -eps_w;
    if (na && nb) {
      area += 0.5 * (std::abs(v[k - 1]) + std::abs(v[k])) * (b - a);
    } else if (na != nb) {
      const double c = bisect_crossing(shifted, a, b, v[k - 1] + eps_w, bisect_tol);
      if (na) {
        area += 0.5 * (std::abs(v[k - 1]) + eps_w) * (c - a);
      } else {
        area += 0.5 * (eps_w + std::abs(v[k])) * (b - c);
      }
    }
  }
  return area;
}

double positive_part_integral(const std::vector<double>& grid, const std::vector<double>& values,
                              double threshold) {
  double area = 0.0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    const double a = grid[k - 1];
    const double b = grid[k];
    const double va = values[k - 1] - threshold;
    const double vb = values[k] - threshold;
    if (va > 0.0 && vb > 0.0) {
      area += 0.5 * (va + vb) * (b - a);
    } else if (va > 0.0) {
      const double c = a + (b - a) * va / (va - vb);
      area += 0.5 * va * (c - a);
    } else if (vb > 0.0) {
      const double c = a + (b - a) * (-va) / (vb - va);
      area += 0.5 * vb * (b - c);
    }
  }
  return area;
}

namespace {

MeasureResult reduce_max(const StateSampler& sampler, std::vector<double> per_sample) {
  MeasureResult r;
  r.samples_used = static_cast<int>(per_sample.size());
  for (std::size_t k = 0; k < per_sample.size(); ++k) {
    if (per_sample[k] > r.value || k == 0) {
      r.value = std::max(0.0, per_sample[k]);
      r.argmax = k;
    }
  }
  r.argmax_state = sampler.states[r.argmax].matrix();
  r.per_sample = std::move(per_sample);
  return r;
}

}  // namespace

MeasureResult measure_generator(const LindbladGenerator& l, const StateSampler& sampler,
                                const std::vector<double>& grid, const WitnessOptions& options,
                                const PropagateOptions& propagate_options) {
  if (sampler.states.empty()) throw PreconditionError("measure_generator: sampler is empty");
  std::vector<double> per_sample;
  per_sample.reserve(sampler.states.size());
  for (const auto& rho0 : sampler.states) {
    const Trajectory traj = propagate(l, rho0, grid, propagate_options);
    auto g = [&](double t) {
      const Matrix rho = traj.state_at(t);
      const Matrix h = 0.5 * (rho + rho.adjoint());
      Matrix dot = l.apply(t, h);
      dot = 0.5 * (dot + dot.adjoint());
      return entropy_rate(h, dot) - theorem2_bound(l, t, h);
    };
    per_sample.push_back(negative_part_integral(g, grid, options.eps_w));
  }
  return reduce_max(sampler, std::move(per_sample));
}

MeasureResult measure_channel(const ChannelFamily& family, const StateSampler& sampler,
                              const std::vector<double>& grid, const WitnessOptions& options) {
  if (sampler.states.empty()) throw PreconditionError("measure_channel: sampler is empty");
  std::vector<double> per_sample;
  per_sample.reserve(sampler.states.size());
  for (const auto& rho0 : sampler.states) {
    auto g = [&](double t) { return witness_f_channel(family, rho0.matrix(), t, options).f; };
    per_sample.push_back(negative_part_integral(g, grid, options.eps_w));
  }
  return reduce_max(sampler, std::move(per_sample));
}

BlpResult blp_measure(const ChannelFamily& family, const std::vector<StatePair>& pairs,
                      const std::vector<double>& grid) {
  if (grid.size() < 3) throw DomainError("blp_measure: grid needs at least 3 points");
  BlpResult r;
  std::vector<Superoperator> maps;
  maps.reserve(grid.size());
  for (double t : grid) maps.push_back(family.evolution(t));
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const Matrix diff = pairs[p].first.matrix() - pairs[p].second.matrix();
    std::vector<double> dist(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
      dist[k] = 0.5 * trace_norm_hermitian(maps[k].apply(diff));
    }
    std::vector<double> sigma(grid.size());
    const std::size_t n = grid.size();
    sigma[0] = (dist[1] - dist[0]) / (grid[1] - grid[0]);
    sigma[n - 1] = (dist[n - 1] - dist[n - 2]) / (grid[n - 1] - grid[n - 2]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      sigma[k] = (dist[k + 1] - dist[k - 1]) / (grid[k + 1] - grid[k - 1]);
    }
    const double v = positive_part_integral(grid, sigma, 0.0);
    r.per_pair.push_back(v);
    if (v > r.value) {
      r.value = v;
      r.argmax = p;
    }
  }
  return r;
}

bool Sandwich::holds(double slack) const {
  const bool rel = relative_entropy.is_finite() &&
                   entropy_change >= relative_entropy.value() - slack;
  return lower <= entropy + slack && entropy <= upper + slack && rel;
}

Sandwich semigroup_sandwich(const LindbladGenerator& l, const Matrix& rho0, double t) {
  if (!l.time_independent()) {
    throw PreconditionError("semigroup_sandwich: generator depends on time");
  }
  if (!(t >= 0.0)) throw DomainError("semigroup_sandwich: t must be >= 0");
  const Superoperator s = l.superoperator(0.0);
  if ((s.matrix() - s.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-9) {
    throw PreconditionError("semigroup_sandwich: generator is not self-adjoint");
  }
  const Index d = l.dim();
  if (l.apply(0.0, Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-9) {
    throw PreconditionError("semigroup_sandwich: generator is not unital");
  }
  require_full_rank(rho0, "semigroup_sandwich");
  auto evolve = [&](double tau) {
    const Matrix m = (s.matrix() * tau).exp();
    return apply_hermitian(Superoperator(m, d, d), rho0);
  };
  const Matrix rho_t = evolve(t);
  const Matrix rho_2t = evolve(2.0 * t);
  Sandwich w;
  w.entropy = von_neumann_entropy(rho_t);
  w.lower = -(rho0 * matrix_log_on_support(rho_2t)).trace().real();
  w.upper = -(rho_2t * matrix_log_on_support(rho0)).trace().real();
  w.entropy_change = w.entropy - von_neumann_entropy(rho0);
  w.relative_entropy = relative_entropy(rho0, rho_2t);
  return w;
}

}  // namespace entdyn
