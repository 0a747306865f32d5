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

#include "entdyn/serialization.hpp"

#include <charconv>
#include <cmath>

namespace entdyn {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("expected a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw DomainError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

double param(const Json& params, const char* key) { return field(params, key).get<double>(); }

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const Json& j) {
  const Index rows = field(j, "rows").get<Index>();
  const Index cols = field(j, "cols").get<Index>();
  const Json& data = field(j, "data");
  if (rows < 0 || cols < 0 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols)) {
    throw DimensionError("matrix_from_json: data does not match rows x cols");
  }
  Matrix m(rows, cols);
  std::size_t n = 0;
  for (Index i = 0; i < rows; ++i) {
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[n++]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("vector_from_json: expected an array");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

Json rate_to_json(const RateFunction& r) {
  if (r.is_custom()) {
    throw PreconditionError("rate_to_json: custom rate '" + r.kind() + "' cannot be serialized");
  }
  if (r.kind() == "terms") {
    Json terms = Json::array();
    for (const auto& t : r.terms()) {
      terms.push_back({{"a", t.a}, {"k", t.k}, {"nu", t.nu}, {"phi", t.phi}});
    }
    return {{"kind", "terms"}, {"terms", std::move(terms)}};
  }
  Json params = Json::object();
  for (const auto& [k, v] : r.params()) params[k] = v;
  return {{"kind", r.kind()}, {"params", std::move(params)}};
}

RateFunction rate_from_json(const Json& j) {
  const std::string kind = field(j, "kind").get<std::string>();
  if (kind == "terms") {
    std::vector<RateFunction::Term> terms;
    for (const Json& t : field(j, "terms")) {
      terms.push_back({param(t, "a"), param(t, "k"), param(t, "nu"), param(t, "phi")});
    }
    return RateFunction::from_terms(std::move(terms));
  }
  const Json& p = field(j, "params");
  if (kind == "constant") return RateFunction::constant(param(p, "c"));
  if (kind == "cosine_squared") {
    return RateFunction::cosine_squared(param(p, "a"), param(p, "omega"), param(p, "phi"));
  }
  if (kind == "exponential") return RateFunction::exponential(param(p, "a"), param(p, "k"));
  if (kind == "sinusoid") {
    return RateFunction::sinusoid(param(p, "c"), param(p, "a"), param(p, "omega"),
                                  param(p, "phi"));
  }
  throw DomainError("rate_from_json: unknown rate kind '" + kind + "'");
}

Json generator_to_json(const LindbladGenerator& l) {
  Json h = Json::array();
  for (const auto& term : l.hamiltonian_terms()) {
    h.push_back({{"coefficient", rate_to_json(term.coefficient)}, {"op", matrix_to_json(term.op)}});
  }
  Json jumps = Json::array();
  for (const auto& term : l.jumps()) {
    jumps.push_back({{"rate", rate_to_json(term.rate)}, {"op", matrix_to_json(term.op)}});
  }
  Json out = {{"dim", l.dim()}, {"hamiltonian", std::move(h)}, {"jumps", std::move(jumps)}};
  if (l.fock_cutoff()) out["fock_cutoff"] = *l.fock_cutoff();
  return out;
}

LindbladGenerator generator_from_json(const Json& j) {
  const Index dim = field(j, "dim").get<Index>();
  if (dim < 1) throw DimensionError("generator_from_json: dim must be >= 1");
  LindbladGenerator l(dim);
  if (j.contains("hamiltonian")) {
    for (const Json& t : j.at("hamiltonian")) {
      l.add_hamiltonian(rate_from_json(field(t, "coefficient")), matrix_from_json(field(t, "op")));
    }
  }
  if (j.contains("jumps")) {
    for (const Json& t : j.at("jumps")) {
      l.add_jump(rate_from_json(field(t, "rate")), matrix_from_json(field(t, "op")));
    }
  }
  if (j.contains("fock_cutoff")) l.set_fock_cutoff(j.at("fock_cutoff").get<Index>());
  return l;
}

Json channel_to_json(const QuantumChannel& n) {
  Json kraus = Json::array();
  for (const Matrix& k : n.kraus()) kraus.push_back(matrix_to_json(k));
  return {{"dim_in", n.dim_in()}, {"dim_out", n.dim_out()}, {"kraus", std::move(kraus)}};
}

QuantumChannel channel_from_json(const Json& j) {
  const Index din = field(j, "dim_in").get<Index>();
  const Index dout = field(j, "dim_out").get<Index>();
  std::vector<Matrix> kraus;
  for (const Json& k : field(j, "kraus")) kraus.push_back(matrix_from_json(k));
  QuantumChannel n(std::move(kraus));
  if (n.dim_in() != din || n.dim_out() != dout) {
    throw DimensionError("channel_from_json: Kraus shapes disagree with declared dimensions");
  }
  return n;
}

Json measure_to_json(const MeasureResult& m) {
  return {{"value", m.value},
          {"argmax", m.argmax},
          {"argmax_state", matrix_to_json(m.argmax_state)},
          {"samples_used", m.samples_used},
          {"per_sample", m.per_sample}};
}

Json blp_to_json(const BlpResult& b) {
  return {{"value", b.value}, {"argmax", b.argmax}, {"per_pair", b.per_pair}};
}

Json oslash_to_json(const OslashResult& r) {
  Json starts = Json::array();
  for (std::size_t s = 0; s < r.per_start.size(); ++s) {
    starts.push_back({{"value", r.per_start[s]},
                      {"accepted_steps", r.histories[s].size() - 1}});
  }
  return {{"value", r.value},
          {"success_probability", success_probability(std::min(2.0, std::max(0.0, r.value)))},
          {"lower_bound", true},
          {"converged", r.converged},
          {"maximizer", vector_to_json(r.maximizer)},
          {"starts", std::move(starts)}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, const std::vector<std::string>& header)
    : out_(out), columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw DimensionError("CsvWriter: row width mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_double(values[i]);
  out_ << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  if (traj.size() == 0) throw PreconditionError("write_trajectory_csv: empty trajectory");
  const Index d = traj.states[0].dim();
  std::vector<std::string> header{"t"};
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      header.push_back("re_" + std::to_string(i) + "_" + std::to_string(j));
      header.push_back("im_" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  header.push_back("entropy");
  header.push_back("entropy_rate");
  CsvWriter w(out, header);
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const Matrix& rho = traj.states[k].matrix();
    std::vector<double> row{traj.grid[k]};
    for (Index j = 0; j < d; ++j) {
      for (Index i = 0; i < d; ++i) {
        row.push_back(rho(i, j).real());
        row.push_back(rho(i, j).imag());
      }
    }
    row.push_back(von_neumann_entropy(rho));
    row.push_back(entropy_rate(rho, traj.derivatives[k]));
    w.row(row);
  }
}

void write_witness_csv(std::ostream& out, const std::vector<WitnessReport>& reports) {
  CsvWriter w(out, {"t", "rate", "bound", "f", "nonunitality", "test_a", "test_b", "test_c"});
  for (const auto& r : reports) {
    w.row({r.time, r.entropy_rate, r.theorem2_bound, r.f_value, r.nonunitality,
           r.test_a_passed ? 1.0 : 0.0, r.test_b_passed ? 1.0 : 0.0, r.test_c_passed ? 1.0 : 0.0});
  }
}

}  // namespace entdyn
