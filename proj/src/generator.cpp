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

#include "entdyn/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace entdyn {

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

Matrix commutator_super(const Matrix& h) {
  const Index d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  return -kI * (kron(id, h) - kron(h.transpose(), id));
}

Matrix dissipator_super(const Matrix& a) {
  const Index d = a.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix ada = a.adjoint() * a;
  return kron(a.conjugate(), a) - 0.5 * kron(id, ada) - 0.5 * kron(ada.transpose(), id);
}

}  // namespace

RateFunction RateFunction::constant(double c) {
  RateFunction r;
  r.kind_ = "constant";
  r.params_ = {{"c", c}};
  r.terms_ = {{c, 0.0, 0.0, 0.0}};
  return r;
}

RateFunction RateFunction::cosine_squared(double a, double omega, double phi) {
  // a cos^2(x) = a/2 + (a/2) cos(2x)
  RateFunction r;
  r.kind_ = "cosine_squared";
  r.params_ = {{"a", a}, {"omega", omega}, {"phi", phi}};
  r.terms_ = {{0.5 * a, 0.0, 0.0, 0.0}, {0.5 * a, 0.0, 2.0 * omega, 2.0 * phi}};
  return r;
}

RateFunction RateFunction::exponential(double a, double k) {
  RateFunction r;
  r.kind_ = "exponential";
  r.params_ = {{"a", a}, {"k", k}};
  r.terms_ = {{a, k, 0.0, 0.0}};
  return r;
}

RateFunction RateFunction::sinusoid(double c, double a, double omega, double phi) {
  RateFunction r;
  r.kind_ = "sinusoid";
  r.params_ = {{"c", c}, {"a", a}, {"omega", omega}, {"phi", phi}};
  r.terms_ = {{c, 0.0, 0.0, 0.0}, {a, 0.0, omega, phi - 0.5 * std::numbers::pi}};
  return r;
}

RateFunction RateFunction::from_terms(std::vector<Term> terms) {
  RateFunction r;
  r.kind_ = "terms";
  r.terms_ = std::move(terms);
  return r;
}

RateFunction RateFunction::custom(std::function<double(double)> f, std::string label) {
  if (!f) throw PreconditionError("RateFunction::custom: empty callable");
  RateFunction r;
  r.kind_ = std::move(label);
  r.custom_ = std::move(f);
  return r;
}

double RateFunction::operator()(double t) const {
  if (custom_) return custom_(t);
  double acc = 0.0;
  for (const Term& term : terms_) {
    const double e = term.k == 0.0 ? 1.0 : std::exp(term.k * t);
    const double c = term.nu == 0.0 && term.phi == 0.0 ? 1.0 : std::cos(term.nu * t + term.phi);
    acc += term.a * e * c;
  }
  return acc;
}

double RateFunction::integral(double s, double t) const {
  if (s == t) return 0.0;
  if (custom_) {
    const double fa = custom_(s);
    const double fb = custom_(t);
    const double fm = custom_(0.5 * (s + t));
    const double whole = (t - s) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(custom_, s, t, fa, fm, fb, whole, 1e-12, 40);
  }
  double acc = 0.0;
  for (const Term& term : terms_) {
    if (term.k == 0.0 && term.nu == 0.0) {
      acc += term.a * std::cos(term.phi) * (t - s);
      continue;
    }
    const Complex z(term.k, term.nu);
    const Complex phase = std::polar(1.0, term.phi);
    const Complex primitive_t = phase * std::exp(z * t) / z;
    const Complex primitive_s = phase * std::exp(z * s) / z;
    acc += term.a * (primitive_t - primitive_s).real();
  }
  return acc;
}

RateFunction RateFunction::operator+(const RateFunction& other) const {
  if (custom_ || other.custom_) {
    const RateFunction lhs = *this;
    const RateFunction rhs = other;
    return custom([lhs, rhs](double t) { return lhs(t) + rhs(t); }, "custom");
  }
  std::vector<Term> terms = terms_;
  terms.insert(terms.end(), other.terms_.begin(), other.terms_.end());
  return from_terms(std::move(terms));
}

RateFunction RateFunction::operator*(double s) const {
  if (custom_) {
    const RateFunction inner = *this;
    return custom([inner, s](double t) { return s * inner(t); }, "custom");
  }
  std::vector<Term> terms = terms_;
  for (Term& term : terms) term.a *= s;
  return from_terms(std::move(terms));
}

bool RateFunction::is_constant() const {
  if (custom_) return false;
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.k == 0.0 && t.nu == 0.0; });
}

double RateFunction::sampled_min(double t0, double t1, int samples) const {
  double lo = (*this)(t0);
  for (int k = 1; k < samples; ++k) {
    lo = std::min(lo, (*this)(t0 + (t1 - t0) * k / (samples - 1)));
  }
  return lo;
}

LindbladGenerator::LindbladGenerator(Index dim) : dim_(dim) {
  if (dim < 1) throw DimensionError("LindbladGenerator: dim must be >= 1");
}

LindbladGenerator& LindbladGenerator::add_hamiltonian(RateFunction coefficient,
                                                      const Matrix& h) {
  if (h.rows() != dim_ || h.cols() != dim_) {
    throw DimensionError("add_hamiltonian: operator dimension mismatch");
  }
  const Matrix herm = hermitize(h);
  ham_super_.push_back(commutator_super(herm));
  hamiltonian_.push_back({std::move(coefficient), herm});
  return *this;
}

LindbladGenerator& LindbladGenerator::add_jump(RateFunction rate, const Matrix& a) {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw DimensionError("add_jump: operator dimension mismatch");
  }
  jump_gram_.push_back(a.adjoint() * a);
  jump_super_.push_back(dissipator_super(a));
  jumps_.push_back({std::move(rate), a});
  return *this;
}

LindbladGenerator& LindbladGenerator::set_fock_cutoff(Index cutoff) {
  if (cutoff != dim_) throw DimensionError("set_fock_cutoff: cutoff must equal dim");
  cutoff_ = cutoff;
  return *this;
}

Matrix LindbladGenerator::hamiltonian(double t) const {
  Matrix h = Matrix::Zero(dim_, dim_);
  for (const auto& term : hamiltonian_) h += term.coefficient(t) * term.op;
  return h;
}

Matrix LindbladGenerator::apply(double t, const Matrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionError("LindbladGenerator::apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  if (!hamiltonian_.empty()) {
    const Matrix h = hamiltonian(t);
    out.noalias() -= kI * (h * rho - rho * h);
  }
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const double g = jumps_[i].rate(t);
    if (g == 0.0) continue;
    const Matrix& a = jumps_[i].op;
    const Matrix& ada = jump_gram_[i];
    out.noalias() += g * (a * rho * a.adjoint());
    out.noalias() -= (0.5 * g) * (ada * rho + rho * ada);
  }
  return out;
}

Matrix LindbladGenerator::adjoint_apply(double t, const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_) {
    throw DimensionError("LindbladGenerator::adjoint_apply: dimension mismatch");
  }
  Matrix out = Matrix::Zero(dim_, dim_);
  if (!hamiltonian_.empty()) {
    const Matrix h = hamiltonian(t);
    out.noalias() += kI * (h * x - x * h);
  }
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const double g = jumps_[i].rate(t);
    if (g == 0.0) continue;
    const Matrix& a = jumps_[i].op;
    const Matrix& ada = jump_gram_[i];
    out.noalias() += g * (a.adjoint() * x * a);
    out.noalias() -= (0.5 * g) * (x * ada + ada * x);
  }
  return out;
}

Superoperator LindbladGenerator::superoperator(double t) const {
  Matrix m = Matrix::Zero(dim_ * dim_, dim_ * dim_);
  for (std::size_t j = 0; j < hamiltonian_.size(); ++j) {
    m += hamiltonian_[j].coefficient(t) * ham_super_[j];
  }
  for (std::size_t i = 0; i < jumps_.size(); ++i) m += jumps_[i].rate(t) * jump_super_[i];
  return Superoperator(std::move(m), dim_, dim_);
}

Superoperator LindbladGenerator::adjoint_superoperator(double t) const {
  return superoperator(t).adjoint();
}

bool LindbladGenerator::rates_nonnegative(double t0, double t1, int samples) const {
  return std::all_of(jumps_.begin(), jumps_.end(), [&](const JumpTerm& j) {
    return j.rate.sampled_min(t0, t1, samples) >= 0.0;
  });
}

bool LindbladGenerator::time_independent() const {
  return std::all_of(hamiltonian_.begin(), hamiltonian_.end(),
                     [](const HamiltonianTerm& h) { return h.coefficient.is_constant(); }) &&
         std::all_of(jumps_.begin(), jumps_.end(),
                     [](const JumpTerm& j) { return j.rate.is_constant(); });
}

Matrix pauli_x() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

Matrix pauli_y() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = -kI;
  m(1, 0) = kI;
  return m;
}

Matrix pauli_z() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

Matrix annihilation_operator(Index cutoff) {
  if (cutoff < 2) throw DomainError("annihilation_operator: cutoff must be >= 2");
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (Index n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

LindbladGenerator dephasing_generator(const RateFunction& gamma) {
  LindbladGenerator g(2);
  g.add_jump(gamma * 0.5, pauli_z());
  return g;
}

LindbladGenerator bosonic_generator(double gamma_plus, double gamma_minus, Index cutoff) {
  if (!(gamma_plus >= 0.0) || !(gamma_minus >= 0.0)) {
    throw DomainError("bosonic_generator: rates must be nonnegative");
  }
  const Matrix a = annihilation_operator(cutoff);
  LindbladGenerator g(cutoff);
  g.add_jump(RateFunction::constant(gamma_plus), a.adjoint());
  g.add_jump(RateFunction::constant(gamma_minus), a);
  g.set_fock_cutoff(cutoff);
  return g;
}

LindbladGenerator amplifier_generator(double n_thermal, Index cutoff) {
  return bosonic_generator(n_thermal + 1.0, n_thermal, cutoff);
}

LindbladGenerator lossy_generator(double n_thermal, Index cutoff) {
  return bosonic_generator(n_thermal, n_thermal + 1.0, cutoff);
}

LindbladGenerator additive_noise_generator(double n_thermal, Index cutoff) {
  return bosonic_generator(n_thermal, n_thermal, cutoff);
}

namespace {

Matrix lowering_qubit() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  return m;
}

}  // namespace

LindbladGenerator gadc_matched_generator(double omega) {
  const RateFunction p = RateFunction::cosine_squared(1.0, omega);
  LindbladGenerator g(2);
  g.add_jump(p, lowering_qubit());
  g.add_jump(RateFunction::constant(1.0) + p * -1.0, lowering_qubit().adjoint());
  return g;
}

LindbladGenerator gadc_time_local_generator(double omega) {
  // p = 1/2 + cos(2wt)/2, p' = w cos(2wt + pi/2).
  using Term = RateFunction::Term;
  const double half_pi = 0.5 * std::numbers::pi;
  const RateFunction down = RateFunction::from_terms({
      Term{0.5, 0.0, 0.0, 0.0},
      Term{0.5, 0.0, 2.0 * omega, 0.0},
      Term{omega, 0.0, 2.0 * omega, half_pi},
      Term{-omega, -1.0, 2.0 * omega, half_pi},
  });
  LindbladGenerator g(2);
  g.add_jump(down, lowering_qubit());
  g.add_jump(RateFunction::constant(1.0) + down * -1.0, lowering_qubit().adjoint());
  return g;
}

LindbladGenerator depolarizing_generator(Index d, double kappa) {
  if (d < 2) throw DomainError("depolarizing_generator: d must be >= 2");
  if (!(kappa >= 0.0)) throw DomainError("depolarizing_generator: kappa must be >= 0");
  const auto hw = heisenberg_weyl(d);
  LindbladGenerator g(d);
  const RateFunction rate = RateFunction::constant(kappa / static_cast<double>(d * d));
  for (std::size_t i = 1; i < hw.size(); ++i) g.add_jump(rate, hw[i]);
  return g;
}

DensityMatrix thermal_state(double n_thermal, Index cutoff, double tail_bound) {
  if (!(n_thermal >= 0.0)) throw DomainError("thermal_state: N must be >= 0");
  if (cutoff < 2) throw DomainError("thermal_state: cutoff must be >= 2");
  const double r = n_thermal / (n_thermal + 1.0);
  const double tail = std::pow(r, static_cast<double>(cutoff));
  if (tail > tail_bound) {
    throw TruncationError("thermal_state: tail mass " + std::to_string(tail) +
                          " exceeds bound; increase cutoff");
  }
  RealVector p(cutoff);
  double rn = 1.0;
  for (Index n = 0; n < cutoff; ++n) {
    p(n) = (1.0 - r) * rn;
    rn *= r;
  }
  p /= p.sum();
  return DensityMatrix::diagonal(p);
}

double fock_tail_mass(const Matrix& rho) {
  const Index c = rho.rows();
  double tail = 0.0;
  for (Index n = std::max<Index>(0, c - 2); n < c; ++n) tail += rho(n, n).real();
  return tail;
}

Matrix fock_trusted_projector(Index cutoff, Index margin) {
  if (margin < 0 || margin >= cutoff) {
    throw DomainError("fock_trusted_projector: margin must lie in [0, cutoff)");
  }
  Matrix p = Matrix::Zero(cutoff, cutoff);
  for (Index n = 0; n + margin < cutoff; ++n) p(n, n) = 1.0;
  return p;
}

}  // namespace entdyn
