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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entdyn/random.hpp"
#include "entdyn/serialization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

using namespace entdyn;

TEST_CASE("matrix and vector round trips are bit-exact") {
  Rng rng(1);
  const Matrix m = random_matrix(3, 5, rng) * 1e-7;
  const Json j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 5);
  // Row-major [re, im] pairs.
  CHECK(j["data"][1][0].get<double>() == m(0, 1).real());
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);

  const Vector v = haar_pure_state(6, rng);
  CHECK(vector_from_json(Json::parse(vector_to_json(v).dump())) == v);

  Json bad = j;
  bad["rows"] = 4;
  CHECK_THROWS_AS(matrix_from_json(bad), DimensionError);
  CHECK_THROWS_AS(matrix_from_json(Json::object()), DomainError);
}

TEST_CASE("rate round trips") {
  using Term = RateFunction::Term;
  const std::vector<RateFunction> rates = {
      RateFunction::constant(0.3),
      RateFunction::cosine_squared(1.0, 5.0, 0.1),
      RateFunction::exponential(2.0, -0.7),
      RateFunction::sinusoid(0.5, 1.0, 2.0, 0.25),
      RateFunction::from_terms({Term{0.5, -1.0, 3.0, 0.2}, Term{1.5, 0.0, 0.0, 0.0}}),
      RateFunction::constant(1.0) + RateFunction::cosine_squared(1.0, 2.0) * -1.0,
  };
  for (const auto& r : rates) {
    const Json j = rate_to_json(r);
    const RateFunction back = rate_from_json(Json::parse(j.dump()));
    CHECK(rate_to_json(back) == j);
    for (double t : {0.0, 0.37, 1.9, 4.2}) CHECK(back(t) == r(t));
  }
  CHECK_THROWS_AS(rate_to_json(RateFunction::custom([](double t) { return t; }, "ramp")),
                  PreconditionError);
  CHECK_THROWS_AS(rate_from_json(Json{{"kind", "constant"}, {"params", Json::object()}}),
                  DomainError);
}

TEST_CASE("generator round trip") {
  Rng rng(2);
  LindbladGenerator l(3);
  l.add_hamiltonian(RateFunction::cosine_squared(0.4, 1.3), random_hermitian(3, rng));
  l.add_jump(RateFunction::sinusoid(0.5, 0.2, 1.0), random_matrix(3, 3, rng));
  l.add_jump(RateFunction::exponential(1.0, -0.5), random_matrix(3, 3, rng));
  const Json j = generator_to_json(l);
  const LindbladGenerator back = generator_from_json(Json::parse(j.dump()));
  CHECK(generator_to_json(back) == j);
  for (double t : {0.0, 0.8, 2.5}) {
    CHECK(back.superoperator(t).matrix() == l.superoperator(t).matrix());
  }
  CHECK_FALSE(j.contains("fock_cutoff"));

  const LindbladGenerator amp = amplifier_generator(0.2, 10);
  const LindbladGenerator amp_back = generator_from_json(generator_to_json(amp));
  REQUIRE(amp_back.fock_cutoff().has_value());
  CHECK(*amp_back.fock_cutoff() == 10);

  LindbladGenerator custom(2);
  custom.add_jump(RateFunction::custom([](double) { return 1.0; }), pauli_z());
  CHECK_THROWS_AS(generator_to_json(custom), PreconditionError);
}

TEST_CASE("channel round trip") {
  Rng rng(3);
  const QuantumChannel n = random_channel(2, 3, 4, rng);
  const Json j = channel_to_json(n);
  CHECK(j["dim_in"] == 2);
  CHECK(j["dim_out"] == 3);
  const QuantumChannel back = channel_from_json(Json::parse(j.dump()));
  CHECK(back.superoperator().matrix() == n.superoperator().matrix());
  Json bad = j;
  bad["dim_out"] = 2;
  CHECK_THROWS_AS(channel_from_json(bad), DimensionError);
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5e-10) == "-2.5e-10");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(std::nan("")) == "nan");
  const double x = 0.6578174303942945;
  CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv writers") {
  std::ostringstream out;
  CsvWriter w(out, {"t", "value"});
  w.row({0.0, 0.5});
  w.row({1e-3, -1.0});
  CHECK(out.str() == "t,value\n0,0.5\n0.001,-1\n");
  CHECK_THROWS_AS(w.row({1.0}), DimensionError);

  const LindbladGenerator l = dephasing_generator(RateFunction::constant(1.0));
  Rng rng(4);
  const Trajectory traj = propagate(l, random_full_rank_state(2, rng), uniform_grid(0.0, 1.0, 4));
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  std::istringstream in(csv.str());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "t,re_0_0,im_0_0,re_1_0,im_1_0,re_0_1,im_0_1,re_1_1,im_1_1,entropy,entropy_rate");
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 5);

  std::ostringstream wcsv;
  write_witness_csv(wcsv, witness_reports(l, traj));
  CHECK(wcsv.str().rfind("t,rate,bound,f,nonunitality,test_a,test_b,test_c\n", 0) == 0);
}

TEST_CASE("result serializers") {
  const OslashResult r = oslash_norm(depolarizing(2, 0.5), [] {
    AscentOptions o;
    o.starts = 3;
    return o;
  }());
  const Json j = oslash_to_json(r);
  CHECK(j["value"].get<double>() == r.value);
  CHECK(j["lower_bound"] == true);
  CHECK(j["starts"].size() == 3);
  CHECK(j["success_probability"].get<double>() == success_probability(r.value));
}
