#pragma once

#include "flatdpp/ensembles.hpp"
#include "flatdpp/flatlimit.hpp"
#include "flatdpp/sampling.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flatdpp {

/// Exhaustive law of the ensemble, over all 2^n subsets or over m-subsets.
/// The enumerated normalizer is checked against the spectral one (rel 1e-8).
SubsetDistribution brute_force_distribution(const Nnp& e, std::optional<int> m = std::nullopt,
                                            Execution exec = Execution::parallel);

/// sum_A |P(A) - Q(A)| (no factor 1/2; ranges over [0, 2]).
double tv_distance(const SubsetDistribution& a, const SubsetDistribution& b);
double tv_distance(std::span<const double> a, std::span<const double> b);

/// log weight of "every point of this set is in the sample", up to a constant
/// that does not depend on the set. digits > 0 asks the caller to run eval
/// under that HighPrecision default.
struct SetLogWeight {
  std::function<double(const PointSet&)> eval;
  unsigned digits = 0;
};

/// det f(eps ||x_i - x_j||) in extended precision, for sets of up to
/// max_size points.
SetLogWeight kernel_set_weight(const StationaryKernel& kernel, double eps, int max_size);
/// Folded bordered determinant of the limit (L; V) rebuilt on the set.
SetLogWeight limit_set_weight(const LimitRecipe& recipe);

/// Density of the last point of an m-sample given the other m-1 points y:
/// proportional to the weight of y plus x, normalized over the grid rows.
/// Grid rows that coincide with a point of y get 0.
std::vector<double> conditional_density(const SetLogWeight& weight, const RowMatrix& y,
                                        const RowMatrix& grid, Execution exec = Execution::parallel);

/// Same on a fixed ground set: P(X = y + {c} | y in X, |X| = |y|+1) over c in
/// candidates, from bordered determinants.
std::vector<double> conditional_density(const Nnp& e, const Subset& y, const Subset& candidates);

/// diag(K) without m; brute-force marginals of the m-conditioned law with m.
std::vector<double> inclusion_probabilities(const Nnp& e, std::optional<int> m = std::nullopt);

enum class CurveMode { full_law, conditional, size_law, inclusion };

/// Either a fixed size m or a varying-size scaling (p, alpha).
struct LimitTarget {
  std::optional<int> m;
  int p = 0;
  double alpha = 1.0;

  static LimitTarget fixed(int m) { return {m, 0, 1.0}; }
  static LimitTarget varying(int p, double alpha) { return {std::nullopt, p, alpha}; }
};

struct ConvergenceCurve {
  std::vector<double> epsilons;
  std::vector<double> values;
  std::string target;
};

/// TV (max abs gap for inclusion) between the eps-ensemble and its flat limit,
/// one value per eps. Conditional mode conditions on the indices y (default
/// 0..m-2) and compares the law of the remaining point.
ConvergenceCurve convergence_curve(const PointSet& ps, const StationaryKernel& kernel,
                                   const LimitTarget& target, std::span<const double> epsilons,
                                   CurveMode mode, const Subset& y = {},
                                   Execution exec = Execution::parallel);

struct EmpiricalCheck {
  double tv = 0.0;
  /// Contribution of each sample size to tv; sums to tv.
  std::vector<double> per_size_tv;
  /// TV between empirical and exact size histograms.
  double size_tv = 0.0;
};

EmpiricalCheck empirical_check(const std::function<Subset(RngState&)>& sampler,
                               const SubsetDistribution& exact, int nsamples, std::uint64_t seed);

/// Random valid extended L-ensemble: V Gaussian n x p, L = A A^T + B V^T + V B^T.
Nnp random_nnp(int n, int p, std::uint64_t seed);

}  // namespace flatdpp
