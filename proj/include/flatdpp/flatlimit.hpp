#pragma once

#include "flatdpp/ensembles.hpp"
#include "flatdpp/kernels.hpp"
#include "flatdpp/polybasis.hpp"

#include <optional>
#include <string>
#include <utility>

namespace flatdpp {

enum class Regime {
  projection_smooth,
  non_magic_wronskian,
  finite_smoothness,
  full_set_almost_surely,
  varying_projection,
  varying_wronskian,
  varying_finite_smoothness,
};

/// Recipe for the limiting (L; V) as a function of the ground set, so that
/// the same limit can be rebuilt on augmented point sets.
class LimitRecipe {
 public:
  enum class Kind { full_set, projection, wronskian, distance };

  static LimitRecipe full_set() { return LimitRecipe(Kind::full_set, 0, 0, Matrix(), 0.0); }
  /// (0; V_{<=degree})
  static LimitRecipe projection(int degree) { return LimitRecipe(Kind::projection, degree, 0, Matrix(), 0.0); }
  /// (scale V_k W V_k^T; V_{<k})
  static LimitRecipe wronskian(int k, Matrix w_bar, double scale) {
    return LimitRecipe(Kind::wronskian, k, 0, std::move(w_bar), scale);
  }
  /// (coeff D^{(power)}; V_{<=degree})
  static LimitRecipe distance(int power, int degree, double coeff) {
    return LimitRecipe(Kind::distance, degree, power, Matrix(), coeff);
  }

  Kind kind() const { return kind_; }
  std::pair<Matrix, Matrix> build(const PointSet& ps) const;
  Nnp build_nnp(const PointSet& ps) const;

 private:
  LimitRecipe(Kind kind, int degree, int power, Matrix w_bar, double scale)
      : kind_(kind), degree_(degree), power_(power), w_bar_(std::move(w_bar)), scale_(scale) {}

  Kind kind_;
  int degree_;
  int power_;
  Matrix w_bar_;
  double scale_;
};

struct FlatLimitResult {
  Regime regime;
  /// k, r or l depending on the regime; 0 for the full set.
  int parameter = 0;
  Nnp process;
  /// Sample size when the limit has a fixed size.
  std::optional<int> fixed_size;
  int dim = 1;
  SmoothnessOrder smoothness = SmoothnessOrder::infinite();
  /// Scaling exponent and multiplier for varying-size limits.
  std::optional<int> scaling_p;
  std::optional<double> alpha;
  /// (P_{k-1,d}, P_{k,d}) for fixed-size limits; (P_{l-1,d}, P_{l,d}) for varying ones.
  std::pair<std::uint64_t, std::uint64_t> bracket{0, 0};
  double wronskian_condition = 1.0;
  LimitRecipe recipe = LimitRecipe::full_set();

  /// e.g. "ProjectionSmooth(k=4)", "FullSetAlmostSurely".
  std::string regime_label() const;
};

std::string regime_name(Regime r);

/// Regime selected for a fixed-size limit of size m < n, with its parameter
/// (k or r).
std::pair<Regime, int> fixed_size_regime(int d, SmoothnessOrder r, int m);
/// Regime selected for the varying-size scaling exponent p, with its
/// parameter (l or r; 0 for the full set).
std::pair<Regime, int> varying_size_regime(int d, SmoothnessOrder r, int n, int p);

/// Limit of DPP_m(L(eps)) as eps -> 0.
FlatLimitResult fixed_size_limit(const PointSet& ps, const StationaryKernel& kernel, int m);

/// Limit of DPP(alpha eps^{-p} L(eps)) as eps -> 0.
FlatLimitResult varying_size_limit(const PointSet& ps, const StationaryKernel& kernel, int p,
                                   double alpha);

/// Limiting law of the size for the varying-size scaling, m = 0..n, computed
/// from the spectrum of the projected limit matrix.
std::vector<double> limit_size_distribution(const PointSet& ps, const StationaryKernel& kernel,
                                            int p, double alpha);

/// Pre-limit L-ensemble alpha eps^{-p} L(eps) with V empty, in double precision.
Nnp scaled_ensemble(const PointSet& ps, const StationaryKernel& kernel, double eps, int p,
                    double alpha);

/// (gamma (-1)^{ceil(beta/2)} ||x - y||^beta; V_{<= ceil(beta/2) - 1}) for
/// beta > 0 not an even integer and gamma >= 0.
Nnp default_ensemble(const PointSet& ps, double beta, double gamma);

}  // namespace flatdpp
