#include "flatdpp/diagnostics.hpp"
#include "flatdpp/serialize.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace flatdpp;

TEST_CASE("matrices round trip bit for bit") {
  Matrix m(2, 3);
  m << 1.0, -0.0, 1e-300, std::nextafter(1.0, 2.0), 3.14159, -7.5;
  const Matrix back = matrix_from_json(matrix_to_json(m));
  REQUIRE(back.rows() == 2);
  REQUIRE(back.cols() == 3);
  CHECK(std::memcmp(back.data(), m.data(), sizeof(double) * 6) == 0);
  CHECK(matrix_from_json(matrix_to_json(Matrix(3, 0))).rows() == 3);

  nlohmann::json bad = matrix_to_json(m);
  bad["rows"] = 3;
  CHECK_THROWS_AS(matrix_from_json(bad), Error);
  CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"rows", 1}}), Error);
}

TEST_CASE("ensembles round trip") {
  const Nnp e = random_nnp(6, 2, 4);
  const nlohmann::json j = nnp_to_json(e);
  CHECK(j["n"] == 6);
  CHECK(j["p"] == 2);
  const Nnp back = nnp_from_json(nlohmann::json::parse(j.dump()));
  CHECK(back.L() == e.L());
  CHECK(back.V() == e.V());
  CHECK(log_normalizer(back) == log_normalizer(e));

  nlohmann::json wrong = j;
  wrong["p"] = 1;
  CHECK_THROWS_AS(nnp_from_json(wrong), Error);
}

TEST_CASE("limit documents carry their metadata") {
  const PointSet ps = generate_points(PointGenerator::uniform, 9, 2, 22);
  const auto res = fixed_size_limit(ps, builtin_kernel("gaussian"), 4);
  const nlohmann::json j = limit_to_json(res);
  CHECK(j["regime"] == "NonMagicWronskian(k=2)");
  CHECK(j["metadata"]["regime_kind"] == "NonMagicWronskian");
  CHECK(j["metadata"]["r"] == "inf");
  CHECK(j["metadata"]["d"] == 2);
  CHECK(j["metadata"]["fixed_size"] == 4);
  CHECK(j["metadata"]["bracket"] == nlohmann::json::array({3, 6}));
  const Nnp back = nnp_from_json(j);
  CHECK(back.L() == res.process.L());

  const auto vary = varying_size_limit(ps, builtin_kernel("exponential"), 1, 0.5);
  const nlohmann::json jv = limit_to_json(vary);
  CHECK(jv["metadata"]["r"] == 1);
  CHECK(jv["metadata"]["fixed_size"].is_null());
  CHECK(jv["metadata"]["scaling_p"] == 1);
  CHECK(jv["metadata"]["alpha"] == 0.5);
}

TEST_CASE("kernels described in JSON") {
  CHECK(kernel_from_json({{"name", "matern32"}}).smoothness() == SmoothnessOrder::finite(2));
  CHECK(kernel_from_json({{"name", "gaussian"}, {"truncation", 6}}).truncation() == 6);
  const auto k = kernel_from_json({{"coeffs", {1.0, 0.0, -1.0, 0.5}}, {"eval", "series"}});
  CHECK(k.smoothness() == SmoothnessOrder::finite(2));
  CHECK(k(1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(kernel_from_json({{"coeffs", {1.0}}, {"eval", "closed"}}), Error);
  CHECK_THROWS_AS(kernel_from_json({{"other", 1}}), Error);
  CHECK_THROWS_AS(kernel_from_json({{"name", 3}}), Error);
  CHECK_THROWS_AS(read_json_file("/nonexistent/kernel.json"), IoError);
}

TEST_CASE("csv output") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -2.5}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
  CHECK(format_double(0.5) == "0.5");

  std::ostringstream out;
  write_distribution_csv(out, SubsetDistribution(2, {1, 3}, {0.25, 0.75}));
  CHECK(out.str() == "subset_mask,probability\n1,0.25\n3,0.75\n");

  std::ostringstream curve;
  write_curve_csv(curve, ConvergenceCurve{{1.0, 0.1}, {0.5, 0.125}, "x"});
  CHECK(curve.str() == "epsilon,value\n1,0.5\n0.10000000000000001,0.125\n");
}
