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

// JSON documents for matrices, rates, generators, channels and results, and
// delimited-text tables. Doubles are written in shortest round-trip form, so
// reading back a written document reproduces every bit.

#pragma once

#include "entdyn/nonunitarity.hpp"
#include "entdyn/witnesses.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace entdyn {

using Json = nlohmann::json;

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

/// [[re, im], ...].
Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

/// {"kind": tag, "params": {...}} for builtin tags, {"kind": "terms",
/// "terms": [{"a","k","nu","phi"}, ...]} otherwise. Custom callables cannot be
/// serialized and throw PreconditionError.
Json rate_to_json(const RateFunction& r);
RateFunction rate_from_json(const Json& j);

/// {"dim", "fock_cutoff"?, "hamiltonian": [{"coefficient", "op"}], "jumps": [{"rate", "op"}]}.
Json generator_to_json(const LindbladGenerator& l);
LindbladGenerator generator_from_json(const Json& j);

/// {"dim_in", "dim_out", "kraus": [matrix, ...]}.
Json channel_to_json(const QuantumChannel& n);
QuantumChannel channel_from_json(const Json& j);

Json measure_to_json(const MeasureResult& m);
Json blp_to_json(const BlpResult& b);
/// Includes the success probability and per-start diagnostics.
Json oslash_to_json(const OslashResult& r);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

/// Comma-separated table writer; cells are formatted with format_double.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);
  void row(const std::vector<double>& values);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

/// Columns: t, then re_<i>_<j> and im_<i>_<j> for the column-stacked state
/// (index i + j*d, i the row), then entropy and entropy_rate.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);

/// Columns: t, rate, bound, f, nonunitality, test_a, test_b, test_c (flags as
/// 0/1).
void write_witness_csv(std::ostream& out, const std::vector<WitnessReport>& reports);

}  // namespace entdyn
