#include "flatdpp/diagnostics.hpp"
#include "flatdpp/flatlimit.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace flatdpp;

namespace {

const PointSet& line8() {
  static const PointSet ps = generate_points(PointGenerator::uniform, 8, 1, 21);
  return ps;
}

const PointSet& plane9() {
  static const PointSet ps = generate_points(PointGenerator::uniform, 9, 2, 22);
  return ps;
}

void check_cpd(const Nnp& e) {
  if (e.Ltilde().size() == 0) return;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(e.Ltilde(), Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() >= -e.psd_tol());
}

// Law over m-subsets with weights w(X), normalized.
template <class F>
SubsetDistribution law_from(int n, int m, F weight) {
  std::vector<Mask> masks;
  std::vector<double> logw;
  for (Mask x = 0; x < (Mask{1} << n); ++x) {
    if (subset_size(x) != m) continue;
    masks.push_back(x);
    logw.push_back(std::log(weight(from_mask(x))));
  }
  return SubsetDistribution::from_log_weights(n, masks, logw);
}

}  // namespace

TEST_CASE("fixed-size dispatch on the line") {
  const auto g = builtin_kernel("gaussian");
  const auto e = builtin_kernel("exponential");
  const auto m32 = builtin_kernel("matern32");
  CHECK(fixed_size_limit(line8(), g, 5).regime_label() == "ProjectionSmooth(k=4)");
  CHECK(fixed_size_limit(line8(), e, 5).regime_label() == "FiniteSmoothness(r=1)");
  CHECK(fixed_size_limit(line8(), e, 1).regime_label() == "ProjectionSmooth(k=0)");
  CHECK(fixed_size_limit(line8(), m32, 2).regime_label() == "ProjectionSmooth(k=1)");
  CHECK(fixed_size_limit(line8(), m32, 3).regime_label() == "FiniteSmoothness(r=2)");
  CHECK(fixed_size_limit(line8(), g, 8).regime_label() == "FullSetAlmostSurely");
  CHECK_THROWS_AS(fixed_size_limit(line8(), g, 9), Error);
  CHECK_THROWS_AS(fixed_size_limit(line8(), g, 0), Error);
}

TEST_CASE("fixed-size dispatch in the plane") {
  const auto g = builtin_kernel("gaussian");
  const auto res6 = fixed_size_limit(plane9(), g, 6);
  CHECK(res6.regime_label() == "ProjectionSmooth(k=2)");
  const auto res4 = fixed_size_limit(plane9(), g, 4);
  CHECK(res4.regime_label() == "NonMagicWronskian(k=2)");
  CHECK(res4.bracket == std::pair<std::uint64_t, std::uint64_t>{3, 6});
  CHECK(res4.process.p() == 3);
  CHECK(res4.wronskian_condition >= 1.0);
  CHECK(fixed_size_limit(plane9(), builtin_kernel("matern32"), 4).regime_label() ==
        "FiniteSmoothness(r=2)");
  CHECK(fixed_size_limit(plane9(), builtin_kernel("matern52-like"), 4).regime_label() ==
        "NonMagicWronskian(k=2)");
}

TEST_CASE("one-dimensional dispatch never needs a Wronskian") {
  std::vector<SmoothnessOrder> orders{SmoothnessOrder::infinite()};
  for (int r = 1; r <= 12; ++r) orders.push_back(SmoothnessOrder::finite(r));
  for (const auto& r : orders)
    for (int m = 1; m <= 12; ++m) {
      const auto [regime, param] = fixed_size_regime(1, r, m);
      CHECK(regime != Regime::non_magic_wronskian);
      if (regime == Regime::projection_smooth) CHECK(param == m - 1);
    }
}

TEST_CASE("smooth limit is the squared Vandermonde law") {
  const auto res = fixed_size_limit(line8(), builtin_kernel("gaussian"), 4);
  const auto got = brute_force_distribution(res.process, 4);
  const auto want = law_from(8, 4, [](const Subset& s) {
    double v = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        const double d = line8().point(s[i])(0) - line8().point(s[j])(0);
        v *= d * d;
      }
    return v;
  });
  CHECK(tv_distance(got, want) < 1e-10);
}

TEST_CASE("exponential limit weights products of consecutive gaps") {
  const auto res = fixed_size_limit(line8(), builtin_kernel("exponential"), 4);
  const auto got = brute_force_distribution(res.process, 4);
  const auto want = law_from(8, 4, [](const Subset& s) {
    std::vector<double> x;
    for (int i : s) x.push_back(line8().point(i)(0));
    std::sort(x.begin(), x.end());
    double v = 1.0;
    for (std::size_t i = 1; i < x.size(); ++i) v *= x[i] - x[i - 1];
    return v;
  });
  CHECK(tv_distance(got, want) < 1e-10);
}

TEST_CASE("varying-size dispatch") {
  const auto g = builtin_kernel("gaussian");
  const auto e = builtin_kernel("exponential");
  const auto m32 = builtin_kernel("matern32");

  const auto gp3 = varying_size_limit(line8(), g, 3, 1.0);
  CHECK(gp3.regime_label() == "VaryingProjection(l=2)");
  CHECK(gp3.fixed_size == 2);
  CHECK(varying_size_limit(line8(), g, 4, 1.0).regime_label() == "VaryingWronskian(l=2)");
  CHECK(varying_size_limit(line8(), g, 0, 1.0).regime_label() == "VaryingWronskian(l=0)");

  const auto ep1 = varying_size_limit(line8(), e, 1, 0.5);
  CHECK(ep1.regime_label() == "VaryingFiniteSmoothness(r=1)");
  CHECK((ep1.process.L() + 0.5 * distance_power_matrix(line8(), 1)).norm() < 1e-14);
  CHECK(ep1.process.p() == 1);

  const auto ep3 = varying_size_limit(line8(), e, 3, 1.0);
  CHECK(ep3.regime_label() == "FullSetAlmostSurely");
  CHECK(ep3.fixed_size == 8);

  CHECK(varying_size_limit(line8(), m32, 2, 1.0).regime_label() == "VaryingWronskian(l=1)");
  const auto m3 = varying_size_limit(line8(), m32, 3, 2.0);
  CHECK(m3.regime_label() == "VaryingFiniteSmoothness(r=2)");
  CHECK((m3.process.L() - (2.0 / 3.0) * distance_power_matrix(line8(), 3)).norm() < 1e-12);

  // P_{l-1} >= n: p = 17 gives l = 9 and P_8 = 9 > 8 points.
  CHECK(varying_size_limit(line8(), g, 17, 1.0).regime_label() == "FullSetAlmostSurely");
  CHECK_THROWS_AS(varying_size_limit(line8(), g, 2, 0.0), Error);
  CHECK_THROWS_AS(varying_size_limit(line8(), g, -1, 1.0), Error);
}

TEST_CASE("wrong-signed odd coefficient is rejected") {
  const auto bad = StationaryKernel::from_coefficients({1.0, 1.0, 0.5, 0.1});
  CHECK_THROWS_AS(varying_size_limit(line8(), bad, 1, 1.0), Error);
  const auto good = StationaryKernel::from_coefficients({1.0, -1.0, 0.5, -0.1});
  CHECK_NOTHROW(varying_size_limit(line8(), good, 1, 1.0));
}

TEST_CASE("missing Taylor coefficients are reported") {
  const auto short_gauss = builtin_kernel("gaussian", 2);
  CHECK_THROWS_AS(fixed_size_limit(plane9(), short_gauss, 8), Error);
}

TEST_CASE("limit size law agrees with the ensemble size law") {
  const std::vector<std::pair<std::string, int>> cases{
      {"gaussian", 0}, {"gaussian", 2}, {"gaussian", 4}, {"exponential", 1},
      {"matern32", 2}, {"matern32", 3}, {"sin-exp", 3},  {"matern52-like", 5}};
  for (const auto& [name, p] : cases) {
    const auto k = builtin_kernel(name);
    for (const PointSet* ps : {&line8(), &plane9()}) {
      const auto res = varying_size_limit(*ps, k, p, 0.8);
      const auto a = limit_size_distribution(*ps, k, p, 0.8);
      const auto b = size_distribution(res.process);
      CHECK(tv_distance(a, b) < 1e-10);
      check_cpd(res.process);
    }
  }
}

TEST_CASE("every produced limit is conditionally positive semi-definite") {
  for (const auto& name : builtin_kernel_names()) {
    const auto k = builtin_kernel(name);
    for (int m = 1; m <= 9; ++m) check_cpd(fixed_size_limit(plane9(), k, m).process);
    for (int m = 1; m <= 8; ++m) check_cpd(fixed_size_limit(line8(), k, m).process);
  }
}

TEST_CASE("varying limit conditioned on its size is the fixed-size limit") {
  const auto e = builtin_kernel("exponential");
  const auto vary = varying_size_limit(line8(), e, 1, 1.3);
  for (int m = 2; m <= 7; ++m) {
    const auto fixed = fixed_size_limit(line8(), e, m);
    CHECK(tv_distance(brute_force_distribution(vary.process, m),
                      brute_force_distribution(fixed.process, m)) < 1e-10);
  }
}

TEST_CASE("default ensemble") {
  const auto e = builtin_kernel("exponential");
  const Nnp d1 = default_ensemble(line8(), 1.0, 0.7);
  const auto vary = varying_size_limit(line8(), e, 1, 0.7);
  CHECK(tv_distance(brute_force_distribution(d1), brute_force_distribution(vary.process)) < 1e-12);

  const Nnp d3 = default_ensemble(plane9(), 3.0, 1.0);
  CHECK(d3.p() == 3);
  check_cpd(d3);
  CHECK_THROWS_AS(default_ensemble(line8(), 2.0, 1.0), Error);
  CHECK_THROWS_AS(default_ensemble(line8(), 1.0, -1.0), Error);
  CHECK_THROWS_AS(default_ensemble(line8(), -1.0, 1.0), Error);
}

TEST_CASE("scaled ensembles") {
  const auto g = builtin_kernel("gaussian");
  const Nnp a = scaled_ensemble(line8(), g, 0.5, 0, 1.0);
  CHECK((a.L() - kernel_matrix(g, line8(), 0.5)).norm() == 0.0);
  const Nnp b = scaled_ensemble(line8(), g, 0.5, 2, 3.0);
  CHECK((b.L() - 12.0 * kernel_matrix(g, line8(), 0.5)).norm() < 1e-13);
  CHECK(b.p() == 0);
}

TEST_CASE("recipes rebuild the same ensemble") {
  const auto res = fixed_size_limit(plane9(), builtin_kernel("gaussian"), 4);
  const Nnp again = res.recipe.build_nnp(plane9());
  CHECK((again.L() - res.process.L()).norm() == 0.0);
  CHECK((again.V() - res.process.V()).norm() == 0.0);
}
