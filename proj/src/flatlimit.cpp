#include "flatdpp/flatlimit.hpp"

#include "flatdpp/wronskian.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace flatdpp {

namespace {

double sign_power(int r) { return r % 2 == 0 ? 1.0 : -1.0; }

std::pair<std::uint64_t, std::uint64_t> bracket_of(int k, int d) {
  return {count_poly(k - 1, d), count_poly(k, d)};
}

void check_fits(const FlatLimitResult& res, int m) {
  const Index lo = res.process.p();
  const Index hi = res.process.p() + res.process.q();
  if (m < lo || m > hi) {
    throw Error("limit ensemble " + res.regime_label() + " cannot produce samples of size " +
                std::to_string(m) + " on this point set (support [" + std::to_string(lo) + ", " +
                std::to_string(hi) + "])");
  }
}

// Monomials in coordinates relative to the centroid. A shift maps V to V B
// with B unit triangular, so every bordered determinant is unchanged.
PointSet centered(const PointSet& ps) {
  RowMatrix c = ps.coords();
  c.rowwise() -= c.colwise().mean();
  return PointSet(std::move(c));
}

}  // namespace

std::pair<Matrix, Matrix> LimitRecipe::build(const PointSet& ps) const {
  const Index n = ps.size();
  switch (kind_) {
    case Kind::full_set:
      return {Matrix::Zero(n, n), Matrix::Identity(n, n)};
    case Kind::projection:
      return {Matrix::Zero(n, n), vandermonde(centered(ps), degree_)};
    case Kind::wronskian: {
      const PointSet c = centered(ps);
      const Matrix vk = vandermonde_block(c, degree_);
      Matrix l = scale_ * vk * w_bar_ * vk.transpose();
      return {0.5 * (l + l.transpose()), vandermonde(c, degree_ - 1)};
    }
    case Kind::distance:
      return {scale_ * distance_power_matrix(ps, power_), vandermonde(centered(ps), degree_)};
  }
  throw Error("unknown limit recipe");
}

Nnp LimitRecipe::build_nnp(const PointSet& ps) const {
  auto [l, v] = build(ps);
  return make_nnp(std::move(l), std::move(v));
}

std::string regime_name(Regime r) {
  switch (r) {
    case Regime::projection_smooth: return "ProjectionSmooth";
    case Regime::non_magic_wronskian: return "NonMagicWronskian";
    case Regime::finite_smoothness: return "FiniteSmoothness";
    case Regime::full_set_almost_surely: return "FullSetAlmostSurely";
    case Regime::varying_projection: return "VaryingProjection";
    case Regime::varying_wronskian: return "VaryingWronskian";
    case Regime::varying_finite_smoothness: return "VaryingFiniteSmoothness";
  }
  return "Unknown";
}

std::string FlatLimitResult::regime_label() const {
  const std::string base = regime_name(regime);
  switch (regime) {
    case Regime::projection_smooth:
    case Regime::non_magic_wronskian:
      return base + "(k=" + std::to_string(parameter) + ")";
    case Regime::finite_smoothness:
    case Regime::varying_finite_smoothness:
      return base + "(r=" + std::to_string(parameter) + ")";
    case Regime::varying_projection:
    case Regime::varying_wronskian:
      return base + "(l=" + std::to_string(parameter) + ")";
    case Regime::full_set_almost_surely:
      break;
  }
  return base;
}

std::pair<Regime, int> fixed_size_regime(int d, SmoothnessOrder r, int m) {
  const int k = degree_bracket(static_cast<std::uint64_t>(m), d);
  if (!r.admits_degree(k)) return {Regime::finite_smoothness, r.value()};
  if (static_cast<std::uint64_t>(m) == count_poly(k, d)) return {Regime::projection_smooth, k};
  return {Regime::non_magic_wronskian, k};
}

std::pair<Regime, int> varying_size_regime(int d, SmoothnessOrder r, int n, int p) {
  if (p < 0) throw Error("scaling exponent p must be >= 0");
  const int l = p % 2 == 0 ? p / 2 : (p + 1) / 2;
  if (count_poly(l - 1, d) >= static_cast<std::uint64_t>(n)) return {Regime::full_set_almost_surely, 0};
  if (r.is_infinite() || 2 * r.value() > p + 1) {
    return {p % 2 != 0 ? Regime::varying_projection : Regime::varying_wronskian, l};
  }
  if (2 * r.value() < p + 1) return {Regime::full_set_almost_surely, 0};
  return {Regime::varying_finite_smoothness, r.value()};
}

FlatLimitResult fixed_size_limit(const PointSet& ps, const StationaryKernel& kernel, int m) {
  const int n = static_cast<int>(ps.size());
  const int d = static_cast<int>(ps.dim());
  if (m < 1 || m > n) {
    throw Error("fixed size m=" + std::to_string(m) + " must lie in [1, n=" + std::to_string(n) + "]");
  }
  const SmoothnessOrder r = kernel.smoothness();
  const auto bracket = bracket_of(degree_bracket(static_cast<std::uint64_t>(m), d), d);

  if (m == n) {
    LimitRecipe recipe = LimitRecipe::full_set();
    return {.regime = Regime::full_set_almost_surely, .parameter = 0, .process = recipe.build_nnp(ps),
            .fixed_size = n, .dim = d, .smoothness = r, .scaling_p = std::nullopt,
            .alpha = std::nullopt, .bracket = bracket, .recipe = recipe};
  }

  const auto [regime, parameter] = fixed_size_regime(d, r, m);
  double cond = 1.0;
  std::optional<LimitRecipe> recipe;
  switch (regime) {
    case Regime::projection_smooth:
      recipe = LimitRecipe::projection(parameter);
      break;
    case Regime::non_magic_wronskian: {
      const SchurBlock sb = schur_block(wronskian_matrix(kernel, parameter, d), parameter, d);
      cond = sb.condition_number;
      recipe = LimitRecipe::wronskian(parameter, sb.block, 1.0);
      break;
    }
    default:
      recipe = LimitRecipe::distance(2 * parameter - 1, parameter - 1, sign_power(parameter));
      break;
  }
  FlatLimitResult res{.regime = regime, .parameter = parameter, .process = recipe->build_nnp(ps),
                      .fixed_size = m, .dim = d, .smoothness = r, .scaling_p = std::nullopt,
                      .alpha = std::nullopt, .bracket = bracket,
                      .wronskian_condition = cond, .recipe = *recipe};
  check_fits(res, m);
  return res;
}

FlatLimitResult varying_size_limit(const PointSet& ps, const StationaryKernel& kernel, int p,
                                   double alpha) {
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  const int n = static_cast<int>(ps.size());
  const int d = static_cast<int>(ps.dim());
  const SmoothnessOrder r = kernel.smoothness();
  const auto [regime, parameter] = varying_size_regime(d, r, n, p);
  const int l = p % 2 == 0 ? p / 2 : (p + 1) / 2;

  FlatLimitResult res{.regime = regime, .parameter = parameter,
                      .process = LimitRecipe::full_set().build_nnp(ps), .fixed_size = std::nullopt,
                      .dim = d, .smoothness = r, .scaling_p = p, .alpha = alpha,
                      .bracket = bracket_of(l, d)};
  switch (regime) {
    case Regime::full_set_almost_surely:
      res.fixed_size = n;
      return res;
    case Regime::varying_projection:
      res.recipe = LimitRecipe::projection(l - 1);
      res.fixed_size = static_cast<int>(res.bracket.first);
      break;
    case Regime::varying_wronskian: {
      const SchurBlock sb = schur_block(wronskian_matrix(kernel, l, d), l, d);
      res.wronskian_condition = sb.condition_number;
      res.recipe = LimitRecipe::wronskian(l, sb.block, alpha);
      break;
    }
    default: {
      const int rv = parameter;
      const double f = kernel.coefficient(2 * rv - 1);
      if (!(sign_power(rv) * f > 0.0)) {
        throw Error("varying-size limit with r = (p+1)/2 requires sign(f_{2r-1}) = (-1)^r; kernel has f_" +
                    std::to_string(2 * rv - 1) + " = " + std::to_string(f));
      }
      res.recipe = LimitRecipe::distance(2 * rv - 1, rv - 1, alpha * f);
      break;
    }
  }
  res.process = res.recipe.build_nnp(ps);
  if (res.fixed_size) check_fits(res, *res.fixed_size);
  return res;
}

std::vector<double> limit_size_distribution(const PointSet& ps, const StationaryKernel& kernel,
                                            int p, double alpha) {
  const FlatLimitResult res = varying_size_limit(ps, kernel, p, alpha);
  const int n = static_cast<int>(ps.size());
  std::vector<double> out(static_cast<std::size_t>(n) + 1, 0.0);
  if (res.fixed_size) {
    out[static_cast<std::size_t>(*res.fixed_size)] = 1.0;
    return out;
  }
  const auto [l, v] = res.recipe.build(ps);
  const Matrix q = orthonormal_basis(v);
  const Matrix proj = Matrix::Identity(n, n) - q * q.transpose();
  const Matrix mt = proj * l * proj;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (mt + mt.transpose()), Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  const double tol = 1e-10 * (1.0 + ev.cwiseAbs().maxCoeff());
  if (ev(0) < -tol) throw Error("projected limit matrix is not positive semi-definite");
  std::vector<double> lam;
  for (Index i = 0; i < ev.size(); ++i)
    if (ev(i) > tol) lam.push_back(ev(i));
  const auto le = log_elementary_symmetric_all(lam);
  double lz = 0.0;
  for (double x : lam) lz += std::log1p(x);
  const std::size_t base = static_cast<std::size_t>(q.cols());
  for (std::size_t j = 0; j < le.size() && base + j <= static_cast<std::size_t>(n); ++j)
    out[base + j] = std::exp(le[j] - lz);
  return out;
}

Nnp scaled_ensemble(const PointSet& ps, const StationaryKernel& kernel, double eps, int p,
                    double alpha) {
  if (p < 0) throw Error("scaling exponent p must be >= 0");
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  const double scale = alpha * std::pow(eps, -p);
  return make_nnp(scale * kernel_matrix(kernel, ps, eps));
}

Nnp default_ensemble(const PointSet& ps, double beta, double gamma) {
  if (!(beta > 0.0)) throw Error("beta must be positive");
  const double half = beta / 2.0;
  if (std::abs(half - std::round(half)) < 1e-12) throw Error("beta must not be an even integer");
  if (!(gamma >= 0.0)) throw Error("gamma must be nonnegative");
  const int c = static_cast<int>(std::ceil(half));
  const Index n = ps.size();
  Matrix l(n, n);
  const double coeff = gamma * sign_power(c);
  for (Index i = 0; i < n; ++i) {
    l(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = coeff * std::pow(ps.distance(i, j), beta);
      l(i, j) = v;
      l(j, i) = v;
    }
  }
  return make_nnp(std::move(l), vandermonde(ps, c - 1));
}

}  // namespace flatdpp
