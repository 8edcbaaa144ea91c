#include "flatdpp/kernels.hpp"

#include <cmath>
#include <numbers>

namespace flatdpp {

namespace {

using Series = std::vector<double>;

Series exp_neg_series(int J) {
  Series s(static_cast<std::size_t>(J) + 1);
  double term = 1.0;
  for (int j = 0; j <= J; ++j) {
    s[static_cast<std::size_t>(j)] = term;
    term *= -1.0 / (j + 1);
  }
  return s;
}

Series multiply(const Series& a, const Series& b, int J) {
  Series out(static_cast<std::size_t>(J) + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(J); ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(J); ++j)
      out[i + j] += a[i] * b[j];
  return out;
}

Series gaussian_series(int J) {
  Series s(static_cast<std::size_t>(J) + 1, 0.0);
  double term = 1.0;
  for (int j = 0; 2 * j <= J; ++j) {
    s[static_cast<std::size_t>(2 * j)] = term;
    term *= -1.0 / (j + 1);
  }
  return s;
}

// sin(d + pi/4) = (sin d + cos d) / sqrt(2)
Series shifted_sine_series(int J) {
  Series s(static_cast<std::size_t>(J) + 1);
  double fact = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= j;
    const int phase = j % 4;
    const double sign = (phase == 0 || phase == 1) ? 1.0 : -1.0;
    s[static_cast<std::size_t>(j)] = sign / (fact * std::numbers::sqrt2);
  }
  return s;
}

std::string_view canonical(std::string_view name) {
  if (name == "gaussian") return "gaussian";
  if (name == "exponential") return "exponential";
  if (name == "matern32" || name == "(1+δ)e^{−δ}" || name == "(1+d)e^{-d}") return "matern32";
  if (name == "sin-exp" || name == "sin(δ+π/4)e^{−δ}" || name == "sin(d+pi/4)e^{-d}")
    return "sin-exp";
  if (name == "matern52-like" || name == "(3+3δ+δ²)e^{−δ}" || name == "(3+3d+d^2)e^{-d}")
    return "matern52-like";
  return {};
}

HighPrecision horner(const std::vector<double>& c, const HighPrecision& x) {
  HighPrecision acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + HighPrecision(*it);
  return acc;
}

}  // namespace

SmoothnessOrder SmoothnessOrder::finite(int r) {
  if (r < 1) throw Error("smoothness order must be >= 1");
  return SmoothnessOrder(r, false);
}

int SmoothnessOrder::value() const {
  if (infinite_) throw Error("smoothness order is infinite");
  return value_;
}

std::string SmoothnessOrder::to_string() const {
  return infinite_ ? "inf" : std::to_string(value_);
}

SmoothnessOrder smoothness_order(std::span<const double> taylor) {
  if (taylor.empty()) throw Error("empty Taylor coefficient vector");
  for (std::size_t j = 1; j < taylor.size(); j += 2) {
    if (std::abs(taylor[j]) > kOddCoefficientTolerance)
      return SmoothnessOrder::finite(static_cast<int>((j + 1) / 2));
  }
  return SmoothnessOrder::infinite();
}

StationaryKernel::StationaryKernel(KernelFamily family, std::string name,
                                   std::vector<double> taylor,
                                   std::function<double(double)> evaluator)
    : family_(family),
      name_(std::move(name)),
      taylor_(std::move(taylor)),
      smoothness_(smoothness_order(taylor_)),
      evaluator_(std::move(evaluator)) {}

StationaryKernel StationaryKernel::from_coefficients(std::vector<double> taylor,
                                                     std::function<double(double)> evaluator) {
  if (taylor.empty()) throw Error("kernel needs at least one Taylor coefficient");
  for (double c : taylor)
    if (!std::isfinite(c)) throw Error("Taylor coefficients must be finite");
  return StationaryKernel(KernelFamily::series, "series", std::move(taylor), std::move(evaluator));
}

double StationaryKernel::operator()(double delta) const {
  switch (family_) {
    case KernelFamily::gaussian:
      return std::exp(-delta * delta);
    case KernelFamily::exponential:
      return std::exp(-delta);
    case KernelFamily::matern32:
      return (1.0 + delta) * std::exp(-delta);
    case KernelFamily::sin_exp:
      return std::sin(delta + std::numbers::pi / 4) * std::exp(-delta);
    case KernelFamily::matern52_like:
      return (3.0 + 3.0 * delta + delta * delta) * std::exp(-delta);
    case KernelFamily::series:
      break;
  }
  if (evaluator_) return evaluator_(delta);
  double acc = 0.0;
  for (auto it = taylor_.rbegin(); it != taylor_.rend(); ++it) acc = acc * delta + *it;
  return acc;
}

HighPrecision StationaryKernel::evaluate(const HighPrecision& delta) const {
  using boost::multiprecision::cos;
  using boost::multiprecision::exp;
  using boost::multiprecision::sin;
  using boost::multiprecision::sqrt;
  switch (family_) {
    case KernelFamily::gaussian:
      return exp(-delta * delta);
    case KernelFamily::exponential:
      return exp(-delta);
    case KernelFamily::matern32:
      return (1 + delta) * exp(-delta);
    case KernelFamily::sin_exp:
      return (sin(delta) + cos(delta)) / sqrt(HighPrecision(2)) * exp(-delta);
    case KernelFamily::matern52_like:
      return (3 + 3 * delta + delta * delta) * exp(-delta);
    case KernelFamily::series:
      break;
  }
  return horner(taylor_, delta);
}

double StationaryKernel::coefficient(int j) const {
  if (j < 0 || j > truncation()) {
    throw Error("Taylor coefficient f_" + std::to_string(j) + " not available (truncation J=" +
                std::to_string(truncation()) + ")");
  }
  return taylor_[static_cast<std::size_t>(j)];
}

StationaryKernel builtin_kernel(std::string_view name, int truncation) {
  if (truncation < 1) throw Error("Taylor truncation must be >= 1");
  const int J = truncation;
  const std::string_view canon = canonical(name);
  if (canon == "gaussian")
    return StationaryKernel(KernelFamily::gaussian, "gaussian", gaussian_series(J), {});
  if (canon == "exponential")
    return StationaryKernel(KernelFamily::exponential, "exponential", exp_neg_series(J), {});
  if (canon == "matern32")
    return StationaryKernel(KernelFamily::matern32, "matern32",
                            multiply({1.0, 1.0}, exp_neg_series(J), J), {});
  if (canon == "sin-exp")
    return StationaryKernel(KernelFamily::sin_exp, "sin-exp",
                            multiply(shifted_sine_series(J), exp_neg_series(J), J), {});
  if (canon == "matern52-like")
    return StationaryKernel(KernelFamily::matern52_like, "matern52-like",
                            multiply({3.0, 3.0, 1.0}, exp_neg_series(J), J), {});
  throw Error("unknown kernel '" + std::string(name) + "'");
}

std::vector<std::string> builtin_kernel_names() {
  return {"gaussian", "exponential", "matern32", "sin-exp", "matern52-like"};
}

Matrix kernel_matrix(const StationaryKernel& k, const PointSet& ps, double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  const Index n = ps.size();
  Matrix out(n, n);
  const double f0 = k(0.0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    out(i, i) = f0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = k(eps * ps.distance(i, j));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

std::vector<HighPrecision> kernel_matrix_precise(const StationaryKernel& k, const PointSet& ps,
                                                 double eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  const Index n = ps.size();
  const HighPrecision e(eps);
  const HighPrecision f0 = k.evaluate(HighPrecision(0));
  std::vector<HighPrecision> out(static_cast<std::size_t>(n * n));
  for (Index i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i * n + i)] = f0;
    for (Index j = i + 1; j < n; ++j) {
      HighPrecision sq = 0;
      for (Index c = 0; c < ps.dim(); ++c) {
        const HighPrecision diff = HighPrecision(ps.coords()(i, c)) - HighPrecision(ps.coords()(j, c));
        sq += diff * diff;
      }
      const HighPrecision v = k.evaluate(e * boost::multiprecision::sqrt(sq));
      out[static_cast<std::size_t>(i * n + j)] = v;
      out[static_cast<std::size_t>(j * n + i)] = v;
    }
  }
  return out;
}

}  // namespace flatdpp
