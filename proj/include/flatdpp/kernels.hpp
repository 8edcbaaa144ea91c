#pragma once

#include "flatdpp/geometry.hpp"
#include "flatdpp/precision.hpp"

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatdpp {

/// Smoothness order r of a stationary kernel: index of the first nonzero
/// odd Taylor coefficient f_{2r-1}, or infinite when none is nonzero.
class SmoothnessOrder {
 public:
  static SmoothnessOrder finite(int r);
  static SmoothnessOrder infinite() { return SmoothnessOrder(0, true); }

  bool is_infinite() const { return infinite_; }
  /// Finite value; throws when infinite.
  int value() const;
  /// True when polynomial degree k satisfies k <= r - 1.
  bool admits_degree(int k) const { return infinite_ || k <= value_ - 1; }
  std::string to_string() const;

  friend bool operator==(const SmoothnessOrder&, const SmoothnessOrder&) = default;

 private:
  SmoothnessOrder(int v, bool inf) : value_(v), infinite_(inf) {}
  int value_;
  bool infinite_;
};

/// Odd coefficients with magnitude at or below this count as zero.
inline constexpr double kOddCoefficientTolerance = 1e-14;

/// Smallest r with |f_{2r-1}| > 1e-14, or infinite.
SmoothnessOrder smoothness_order(std::span<const double> taylor);

enum class KernelFamily { gaussian, exponential, matern32, sin_exp, matern52_like, series };

/// Stationary kernel kappa(x, y) = f(||x - y||): exact evaluator plus the
/// truncated Taylor coefficients f_j = f^{(j)}(0) / j!.
class StationaryKernel {
 public:
  static constexpr int kDefaultTruncation = 16;

  /// Custom kernel from explicit coefficients. Without an evaluator, f is
  /// the truncated series itself. With one, the evaluator is used in double
  /// precision and the series in extended precision.
  static StationaryKernel from_coefficients(std::vector<double> taylor,
                                            std::function<double(double)> evaluator = {});

  double operator()(double delta) const;
  HighPrecision evaluate(const HighPrecision& delta) const;

  const std::vector<double>& taylor() const { return taylor_; }
  /// f_j, throwing when j exceeds the stored truncation.
  double coefficient(int j) const;
  int truncation() const { return static_cast<int>(taylor_.size()) - 1; }
  SmoothnessOrder smoothness() const { return smoothness_; }
  KernelFamily family() const { return family_; }
  /// Canonical catalog name, or "series".
  const std::string& name() const { return name_; }

 private:
  friend StationaryKernel builtin_kernel(std::string_view name, int truncation);
  StationaryKernel(KernelFamily family, std::string name, std::vector<double> taylor,
                   std::function<double(double)> evaluator);

  KernelFamily family_;
  std::string name_;
  std::vector<double> taylor_;
  SmoothnessOrder smoothness_;
  std::function<double(double)> evaluator_;
};

/// Catalog: "gaussian" exp(-d^2), "exponential" exp(-d), "matern32"
/// (1+d)exp(-d), "sin-exp" sin(d+pi/4)exp(-d), "matern52-like"
/// (3+3d+d^2)exp(-d). The display forms "(1+δ)e^{−δ}",
/// "sin(δ+π/4)e^{−δ}" and "(3+3δ+δ²)e^{−δ}" are accepted as aliases.
StationaryKernel builtin_kernel(std::string_view name,
                                int truncation = StationaryKernel::kDefaultTruncation);

/// Names of the five catalog kernels, canonical spelling.
std::vector<std::string> builtin_kernel_names();

/// [ f(eps ||x_i - x_j||) ]_{ij}.
Matrix kernel_matrix(const StationaryKernel& k, const PointSet& ps, double eps);

/// Same matrix in extended precision (row-major), distances computed from the
/// stored double coordinates at the current thread precision.
std::vector<HighPrecision> kernel_matrix_precise(const StationaryKernel& k, const PointSet& ps,
                                                 double eps);

}  // namespace flatdpp
