#include "flatdpp/diagnostics.hpp"
#include "flatdpp/sampling.hpp"

#include <doctest.h>

using namespace flatdpp;

TEST_CASE("degenerate ensembles are sampled deterministically") {
  RngState rng(1);
  const Nnp full = make_nnp(Matrix::Zero(4, 4), Matrix::Identity(4, 4));
  const Nnp empty = make_nnp(Matrix::Zero(4, 4));
  for (int t = 0; t < 20; ++t) {
    CHECK(sample(full, rng) == Subset{0, 1, 2, 3});
    CHECK(sample(empty, rng).empty());
  }
  Matrix u = Matrix::Zero(5, 1);
  u(2, 0) = 1.0;
  CHECK(sample_projection(u, rng) == Subset{2});
  CHECK(sample_projection(Matrix(5, 0), rng).empty());
}

TEST_CASE("sample sizes stay in [p, p+q]") {
  for (int p = 0; p <= 3; ++p) {
    const Nnp e = random_nnp(8, p, 300 + static_cast<std::uint64_t>(p));
    RngState rng(9);
    for (int t = 0; t < 200; ++t) {
      const Subset x = sample(e, rng);
      CHECK(static_cast<Index>(x.size()) >= e.p());
      CHECK(static_cast<Index>(x.size()) <= e.p() + e.q());
      CHECK(std::is_sorted(x.begin(), x.end()));
    }
    for (int m = p; m <= 8; ++m) CHECK(static_cast<int>(sample_fixed(e, m, rng).size()) == m);
  }
}

TEST_CASE("seeds reproduce draws") {
  const Nnp e = random_nnp(7, 1, 3);
  RngState a(42);
  RngState b(42);
  for (int t = 0; t < 50; ++t) {
    CHECK(sample(e, a) == sample(e, b));
    CHECK(sample_fixed(e, 3, a) == sample_fixed(e, 3, b));
  }
}

TEST_CASE("sampler preconditions") {
  RngState rng(0);
  CHECK_THROWS_AS(sample_projection(Matrix::Ones(3, 1), rng), Error);
  CHECK_THROWS_AS(sample_projection(Matrix::Identity(2, 3), rng), Error);
  const Nnp e = random_nnp(5, 2, 1);
  CHECK_THROWS_AS(sample_fixed(e, 1, rng), Error);
  CHECK_THROWS_AS(sample_fixed(e, 6, rng), Error);
}

TEST_CASE("projection sampler matches squared minors") {
  Eigen::HouseholderQR<Matrix> qr(Matrix::Random(6, 2));
  const Matrix u = qr.householderQ() * Matrix::Identity(6, 2);
  const Nnp e = make_nnp(Matrix::Zero(6, 6), u);
  const auto exact = brute_force_distribution(e);
  for (Mask x : exact.masks()) {
    const Subset s = from_mask(x);
    if (s.size() != 2) {
      CHECK(exact.probability(x) == 0.0);
      continue;
    }
    Matrix ux(2, 2);
    ux << u.row(s[0]), u.row(s[1]);
    CHECK(exact.probability(x) == doctest::Approx(ux.determinant() * ux.determinant()));
  }
  const auto chk = empirical_check([&](RngState& r) { return sample_projection(u, r); }, exact, 200000, 17);
  CHECK(chk.tv < 0.02);
}

TEST_CASE("fixed-size sampler matches the conditioned law") {
  const Nnp e = random_nnp(6, 1, 12);
  const auto exact = brute_force_distribution(e, 3);
  const auto chk = empirical_check([&](RngState& r) { return sample_fixed(e, 3, r); }, exact, 200000, 5);
  CHECK(chk.tv < 0.02);
  CHECK(chk.size_tv < 1e-12);
}
