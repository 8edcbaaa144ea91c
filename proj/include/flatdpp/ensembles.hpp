#pragma once

#include "flatdpp/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace flatdpp {

struct NnpTolerances {
  /// ||L - L^T||_inf <= symmetry * ||L||_inf.
  double symmetry = 1e-10;
  /// psd_tol = psd_rel * (1 + max |eigenvalue of L~|).
  double psd_rel = 1e-10;
};

/// Extended L-ensemble (L; V): L symmetric n x n, V n x p of full column
/// rank, L conditionally positive semi-definite with respect to V. Spectral
/// data of L~ = (I - QQ^T) L (I - QQ^T) is computed once at construction.
class Nnp {
 public:
  Index n() const { return l_.rows(); }
  Index p() const { return v_.cols(); }
  Index q() const { return lambda_.size(); }

  const Matrix& L() const { return l_; }
  const Matrix& V() const { return v_; }
  const Matrix& Q() const { return q_; }
  const Matrix& Ltilde() const { return ltilde_; }
  /// Positive eigenvalues of L~ (ascending) and their eigenvectors.
  const Vector& lambda() const { return lambda_; }
  const Matrix& Utilde() const { return utilde_; }
  double log_det_vtv() const { return log_det_vtv_; }
  double psd_tol() const { return psd_tol_; }
  const NnpTolerances& tolerances() const { return tol_; }

 private:
  friend Nnp make_nnp(Matrix L, Matrix V, NnpTolerances tol);
  Nnp() = default;

  Matrix l_, v_, q_, ltilde_, utilde_;
  Vector lambda_;
  double log_det_vtv_ = 0.0;
  double psd_tol_ = 0.0;
  NnpTolerances tol_;
};

/// Validates and caches. Throws on asymmetric L, mismatched sizes,
/// rank-deficient V, or min eigenvalue of L~ below -psd_tol.
Nnp make_nnp(Matrix L, Matrix V = Matrix(), NnpTolerances tol = {});

/// Raw determinant of [[L_X, V_X], [V_X^T, 0]].
SignedLog bordered_log_det(const Nnp& e, const Subset& x);
/// Same for the whole ground set of unvalidated matrices (V may be n x 0).
SignedLog bordered_log_det(const Matrix& L, const Matrix& V);

/// log of (-1)^p times the bordered determinant; -inf when it vanishes
/// (including |X| < p) or when rounding leaves it on the wrong side of 0.
double log_unnorm_prob(const Nnp& e, const Subset& x);
double log_unnorm_prob(const Nnp& e, Mask x);

/// log |Z| = sum log(1 + lambda~) + log det(V^T V).
double log_normalizer(const Nnp& e);

/// K = QQ^T + L~ (I + L~)^{-1}.
Matrix marginal_kernel(const Nnp& e);

/// Inverse of marginal_kernel: eigenvalues >= 1 - unit_tol span V, the rest
/// give L = K (I - K)^+. Throws when an eigenvalue of K leaves
/// [-unit_tol, 1 + unit_tol].
Nnp from_marginal_kernel(const Matrix& k, double unit_tol = 1e-8);

/// e_k(values) by the recurrence over prod (1 + t v_i); 0 for k > size.
double elementary_symmetric(std::span<const double> values, int k);
/// e_0 .. e_n of the values.
std::vector<double> elementary_symmetric_all(std::span<const double> values);
/// log e_0 .. log e_n for nonnegative values, computed in log space.
std::vector<double> log_elementary_symmetric_all(std::span<const double> values);

/// P(|X| = m) for m = 0..n.
std::vector<double> size_distribution(const Nnp& e);

/// log P(X) under the ensemble conditioned on |X| = m. Throws unless
/// p <= m <= p + q.
double fixed_size_log_prob(const Nnp& e, const Subset& x, int m);
double fixed_size_log_prob(const Nnp& e, Mask x, int m);

/// Normalized law over subsets of {0..n-1}, stored densely over an ascending
/// list of masks (every mask not listed has probability 0).
class SubsetDistribution {
 public:
  SubsetDistribution(int n, std::vector<Mask> masks, std::vector<double> probs);

  /// Normalizes the given log-weights; also returns the log normalizer.
  static SubsetDistribution from_log_weights(int n, std::vector<Mask> masks,
                                             std::span<const double> log_weights,
                                             double* log_normalizer = nullptr);

  int ground_size() const { return n_; }
  const std::vector<Mask>& masks() const { return masks_; }
  const std::vector<double>& probs() const { return probs_; }

  double probability(Mask x) const;
  double probability(const Subset& x) const { return probability(to_mask(x)); }

  /// P(X contains A).
  double marginal(Mask a) const;
  std::vector<double> inclusion() const;
  std::vector<double> size_marginal() const;
  /// Law conditioned on |X| = m; throws if that event has probability 0.
  SubsetDistribution restrict_to_size(int m) const;

 private:
  int n_;
  std::vector<Mask> masks_;
  std::vector<double> probs_;
};

}  // namespace flatdpp
