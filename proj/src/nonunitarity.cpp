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

#include "entdyn/nonunitarity.hpp"

#include "entdyn/parallel.hpp"
#include "entdyn/random.hpp"

#include <algorithm>
#include <cmath>

namespace entdyn {

Matrix apply_id_tensor(const Superoperator& phi, const Matrix& rho_ra, Index d_r) {
  const Index di = phi.dim_in();
  const Index dout = phi.dim_out();
  if (rho_ra.rows() != d_r * di || rho_ra.cols() != d_r * di) {
    throw DimensionError("apply_id_tensor: input is not on C^{d_R} (x) C^{d_in}");
  }
  Matrix out(d_r * dout, d_r * dout);
  for (Index r = 0; r < d_r; ++r) {
    for (Index s = 0; s < d_r; ++s) {
      out.block(r * dout, s * dout, dout, dout) =
          phi.apply(rho_ra.block(r * di, s * di, di, di));
    }
  }
  return out;
}

double diamond_objective(const Superoperator& phi, const Vector& psi) {
  const Index d = phi.dim_in();
  if (psi.size() != d * d) throw DimensionError("diamond_objective: psi must lie in C^{d^2}");
  return trace_norm_hermitian(apply_id_tensor(phi, psi * psi.adjoint(), d));
}

Vector maximally_entangled(Index d) {
  Vector v = Vector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
  return v / std::sqrt(static_cast<double>(d));
}

namespace {

struct StartResult {
  double value = 0.0;
  Vector x;
  std::vector<double> history;
  bool stationary = false;
};

StartResult ascend(const Superoperator& phi, Vector x, const AscentOptions& opt, Rng& rng) {
  auto f = [&](const Vector& v) { return diamond_objective(phi, v); };
  const Index n = x.size();
  x /= x.norm();
  StartResult r;
  double fx = f(x);
  r.history.push_back(fx);
  double alpha = 0.1;
  int restarts_left = opt.restarts;
  const double h = opt.gradient_step;

  for (int it = 0; it < opt.max_iterations; ++it) {
    Vector g(n);
    for (Index j = 0; j < n; ++j) {
      Vector p = x;
      Vector m = x;
      p(j) += h;
      m(j) -= h;
      const double dre = (f(p / p.norm()) - f(m / m.norm())) / (2.0 * h);
      p = x;
      m = x;
      p(j) += Complex(0.0, h);
      m(j) -= Complex(0.0, h);
      const double dim = (f(p / p.norm()) - f(m / m.norm())) / (2.0 * h);
      g(j) = Complex(dre, dim);
    }
    const Complex overlap = (x.adjoint() * g)(0, 0);
    g -= overlap.real() * x;
    const double gnorm = g.norm();
    if (gnorm < opt.tolerance) {
      r.stationary = true;
      break;
    }

    bool improved = false;
    double step = alpha;
    while (step > 1e-12) {
      Vector y = x + step * g;
      y /= y.norm();
      const double fy = f(y);
      if (fy > fx) {
        x = std::move(y);
        fx = fy;
        improved = true;
        alpha = std::min(1.0, 2.0 * step);
        break;
      }
      step *= 0.5;
    }
    if (improved) {
      r.history.push_back(fx);
      continue;
    }

    // Stagnation away from a stationary point: random local perturbations.
    bool escaped = false;
    while (restarts_left > 0 && !escaped) {
      --restarts_left;
      for (int attempt = 0; attempt < 16 && !escaped; ++attempt) {
        Vector y = x;
        for (Index j = 0; j < n; ++j) y(j) += 1e-2 * complex_normal(rng);
        y /= y.norm();
        const double fy = f(y);
        if (fy > fx) {
          x = std::move(y);
          fx = fy;
          r.history.push_back(fx);
          alpha = 0.1;
          escaped = true;
        }
      }
    }
    if (!escaped) break;
  }
  r.value = fx;
  r.x = std::move(x);
  return r;
}

void require_unital_channel(const QuantumChannel& n, const char* what) {
  if (n.dim_in() != n.dim_out()) {
    throw DimensionError(std::string(what) + ": input and output dimensions differ");
  }
  if (n.trace_behavior() != TraceBehavior::kPreserving) {
    throw PreconditionError(std::string(what) + ": map is not trace preserving");
  }
  if (unitality_class(n) != UnitalityClass::kUnital) {
    throw PreconditionError(std::string(what) + ": channel is not unital");
  }
}

Superoperator nonunitarity_map(const QuantumChannel& n) {
  const Superoperator& s = n.superoperator();
  return Superoperator::identity(n.dim_in()) - compose(s.adjoint(), s);
}

}  // namespace

OslashResult maximize_diamond_objective(const Superoperator& phi, const AscentOptions& options) {
  if (phi.dim_in() != phi.dim_out()) {
    throw DimensionError("maximize_diamond_objective: map must be square");
  }
  if (options.starts < 1) throw DomainError("maximize_diamond_objective: starts must be >= 1");
  const Index d = phi.dim_in();
  const auto results = parallel_map<StartResult>(
      static_cast<std::size_t>(options.starts), [&](std::size_t s) {
        Rng rng(options.seed + 1000003ULL * static_cast<std::uint64_t>(s));
        Vector x0 = s == 0 ? maximally_entangled(d) : haar_pure_state(d * d, rng);
        return ascend(phi, std::move(x0), options, rng);
      });
  OslashResult out;
  out.starts = options.starts;
  std::size_t best = 0;
  for (std::size_t s = 0; s < results.size(); ++s) {
    out.per_start.push_back(results[s].value);
    out.histories.push_back(results[s].history);
    if (results[s].value > results[best].value) best = s;
  }
  out.value = results[best].value;
  out.maximizer = results[best].x;
  out.converged = results[best].stationary;
  return out;
}

double oslash_objective(const QuantumChannel& n, const Vector& psi) {
  require_unital_channel(n, "oslash_objective");
  return diamond_objective(nonunitarity_map(n), psi / psi.norm());
}

OslashResult oslash_norm(const QuantumChannel& n, const AscentOptions& options) {
  require_unital_channel(n, "oslash_norm");
  return maximize_diamond_objective(nonunitarity_map(n), options);
}

double oslash_depolarizing_analytic(Index d, double q) {
  if (d < 2) throw DomainError("oslash_depolarizing_analytic: d must be >= 2");
  if (!(q >= 0.0) || q > depolarizing_max_q(d) * (1.0 + 1e-12)) {
    throw DomainError("oslash_depolarizing_analytic: q out of range");
  }
  const double d2 = static_cast<double>(d * d);
  return 2.0 * q * (2.0 - q) * (1.0 - 1.0 / d2);
}

double success_probability(double norm_value) {
  if (!(norm_value >= 0.0) || norm_value > 2.0) {
    throw DomainError("success_probability: value must lie in [0, 2]");
  }
  return 0.5 * (1.0 + 0.5 * norm_value);
}

double diamond_distance(const QuantumChannel& n1, const QuantumChannel& n2,
                        const AscentOptions& options) {
  if (n1.dim_in() != n2.dim_in() || n1.dim_out() != n2.dim_out()) {
    throw DimensionError("diamond_distance: channels have different dimensions");
  }
  return maximize_diamond_objective(n1.superoperator() - n2.superoperator(), options).value;
}

double proposition7_bound(double delta) {
  if (!(delta >= 0.0)) throw DomainError("proposition7_bound: delta must be >= 0");
  return std::sqrt(2.0 * delta) + delta;
}

Proposition7Check proposition7_check(const QuantumChannel& n, const Matrix& u,
                                     const AscentOptions& options,
                                     std::optional<double> certified_delta) {
  require_unital_channel(n, "proposition7_check");
  const QuantumChannel uc = unitary_channel(u);
  if (uc.dim_in() != n.dim_in()) {
    throw DimensionError("proposition7_check: unitary dimension mismatch");
  }
  Proposition7Check c;
  c.delta_estimate = diamond_distance(n, uc, options);
  c.oslash_estimate = oslash_norm(n, options).value;
  c.bound_from_estimate = proposition7_bound(c.delta_estimate);
  c.advisory_holds = c.oslash_estimate <= c.bound_from_estimate;
  if (certified_delta) {
    c.certified_delta = certified_delta;
    c.certified_bound = proposition7_bound(*certified_delta);
    c.holds = c.oslash_estimate <= *c.certified_bound + 1e-9;
  }
  return c;
}

}  // namespace entdyn
