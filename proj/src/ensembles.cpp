#include "flatdpp/ensembles.hpp"

#include "flatdpp/enumeration.hpp"
#include "flatdpp/polybasis.hpp"
#include "flatdpp/precision.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <limits>

namespace flatdpp {

Nnp make_nnp(Matrix L, Matrix V, NnpTolerances tol) {
  const Index n = L.rows();
  if (L.cols() != n) throw Error("L must be square");
  if (n < 1) throw Error("ensemble needs n >= 1");
  if (V.size() == 0) V.resize(n, 0);
  if (V.rows() != n) throw Error("V must have as many rows as L");
  const Index p = V.cols();
  if (p > n) throw Error("V has more columns than rows");
  if (!L.allFinite() || !V.allFinite()) throw Error("ensemble matrices must be finite");

  const double lnorm = L.cwiseAbs().rowwise().sum().maxCoeff();
  const double asym = (L - L.transpose()).cwiseAbs().rowwise().sum().maxCoeff();
  if (asym > tol.symmetry * lnorm) throw Error("L is not symmetric");

  Nnp e;
  e.tol_ = tol;
  e.l_ = 0.5 * (L + L.transpose());
  e.v_ = std::move(V);

  if (p > 0) {
    Eigen::JacobiSVD<Matrix> svd(e.v_);
    const Vector& s = svd.singularValues();
    const double thresh =
        static_cast<double>(std::max(n, p)) * std::numeric_limits<double>::epsilon() * s(0);
    if (!(s(p - 1) > thresh)) throw Error("V is rank deficient");
    e.log_det_vtv_ = 2.0 * s.array().log().sum();
    e.q_ = orthonormal_basis(e.v_);
    if (e.q_.cols() != p) throw Error("V is rank deficient");
  } else {
    e.q_.resize(n, 0);
  }

  const Matrix proj = Matrix::Identity(n, n) - e.q_ * e.q_.transpose();
  Matrix lt = proj * e.l_ * proj;
  e.ltilde_ = 0.5 * (lt + lt.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> eig(e.ltilde_);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition of L~ failed");
  const Vector& ev = eig.eigenvalues();
  const double max_abs = ev.cwiseAbs().maxCoeff();
  e.psd_tol_ = tol.psd_rel * (1.0 + max_abs);
  if (ev(0) < -e.psd_tol_) {
    throw Error("L is not conditionally positive semi-definite with respect to V (min eigenvalue " +
                std::to_string(ev(0)) + ")");
  }
  Index first = 0;
  while (first < n && ev(first) <= e.psd_tol_) ++first;
  e.lambda_ = ev.tail(n - first);
  e.utilde_ = eig.eigenvectors().rightCols(n - first);
  return e;
}

SignedLog bordered_log_det(const Nnp& e, const Subset& x) {
  const int m = static_cast<int>(x.size());
  const int p = static_cast<int>(e.p());
  if (m < p) return {};
  const int s = m + p;
  std::vector<double> a(static_cast<std::size_t>(s * s), 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[static_cast<std::size_t>(i * s + j)] = e.L()(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(j)]);
    for (int c = 0; c < p; ++c) {
      const double v = e.V()(x[static_cast<std::size_t>(i)], c);
      a[static_cast<std::size_t>(i * s + m + c)] = v;
      a[static_cast<std::size_t>((m + c) * s + i)] = v;
    }
  }
  return log_abs_det_inplace(a, s);
}

SignedLog bordered_log_det(const Matrix& L, const Matrix& V) {
  const Index m = L.rows();
  const Index p = V.cols();
  if (L.cols() != m || (p > 0 && V.rows() != m)) throw Error("bordered matrix blocks do not match");
  if (m < p) return {};
  const Index s = m + p;
  std::vector<double> a(static_cast<std::size_t>(s * s), 0.0);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) a[static_cast<std::size_t>(i * s + j)] = L(i, j);
    for (Index c = 0; c < p; ++c) {
      a[static_cast<std::size_t>(i * s + m + c)] = V(i, c);
      a[static_cast<std::size_t>((m + c) * s + i)] = V(i, c);
    }
  }
  return log_abs_det_inplace(a, static_cast<int>(s));
}

double log_unnorm_prob(const Nnp& e, const Subset& x) {
  const SignedLog d = bordered_log_det(e, x);
  const int folded = e.p() % 2 == 0 ? d.sign : -d.sign;
  return folded > 0 ? d.log_abs : kNegInf;
}

double log_unnorm_prob(const Nnp& e, Mask x) { return log_unnorm_prob(e, from_mask(x)); }

double log_normalizer(const Nnp& e) {
  return e.lambda().array().log1p().sum() + e.log_det_vtv();
}

Matrix marginal_kernel(const Nnp& e) {
  const Vector w = e.lambda().array() / (1.0 + e.lambda().array());
  Matrix k = e.Q() * e.Q().transpose() + e.Utilde() * w.asDiagonal() * e.Utilde().transpose();
  return 0.5 * (k + k.transpose());
}

Nnp from_marginal_kernel(const Matrix& k, double unit_tol) {
  const Index n = k.rows();
  if (k.cols() != n || n < 1) throw Error("marginal kernel must be square and nonempty");
  const Matrix sym = 0.5 * (k + k.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  if (eig.info() != Eigen::Success) throw Error("eigendecomposition of K failed");
  const Vector& mu = eig.eigenvalues();
  if (mu(n - 1) > 1.0 + unit_tol) throw Error("marginal kernel has an eigenvalue above 1");
  if (mu(0) < -unit_tol) throw Error("marginal kernel has a negative eigenvalue");
  std::vector<Index> unit;
  Matrix L = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    if (mu(i) >= 1.0 - unit_tol) {
      unit.push_back(i);
      continue;
    }
    const double m = std::max(mu(i), 0.0);
    L += (m / (1.0 - m)) * eig.eigenvectors().col(i) * eig.eigenvectors().col(i).transpose();
  }
  Matrix V(n, static_cast<Index>(unit.size()));
  for (std::size_t c = 0; c < unit.size(); ++c) V.col(static_cast<Index>(c)) = eig.eigenvectors().col(unit[c]);
  return make_nnp(std::move(L), std::move(V));
}

double elementary_symmetric(std::span<const double> values, int k) {
  if (k < 0) throw Error("elementary symmetric order must be >= 0");
  if (k > static_cast<int>(values.size())) return 0.0;
  return elementary_symmetric_all(values)[static_cast<std::size_t>(k)];
}

std::vector<double> elementary_symmetric_all(std::span<const double> values) {
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j >= 1; --j) e[j] += values[i] * e[j - 1];
  return e;
}

std::vector<double> log_elementary_symmetric_all(std::span<const double> values) {
  std::vector<double> e(values.size() + 1, kNegInf);
  e[0] = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0) throw Error("log elementary symmetric polynomials need nonnegative values");
    const double lv = std::log(values[i]);
    for (std::size_t j = i + 1; j >= 1; --j) e[j] = log_add_exp(e[j], lv + e[j - 1]);
  }
  return e;
}

std::vector<double> size_distribution(const Nnp& e) {
  const std::vector<double> lam(e.lambda().data(), e.lambda().data() + e.q());
  const auto le = log_elementary_symmetric_all(lam);
  const double lz = e.lambda().array().log1p().sum();
  std::vector<double> out(static_cast<std::size_t>(e.n()) + 1, 0.0);
  for (Index j = 0; j <= e.q(); ++j) out[static_cast<std::size_t>(e.p() + j)] = std::exp(le[static_cast<std::size_t>(j)] - lz);
  return out;
}

double fixed_size_log_prob(const Nnp& e, const Subset& x, int m) {
  if (m < e.p() || m > e.p() + e.q()) {
    throw Error("fixed size " + std::to_string(m) + " outside [p, p+q] = [" + std::to_string(e.p()) +
                ", " + std::to_string(e.p() + e.q()) + "]");
  }
  if (static_cast<int>(x.size()) != m) return kNegInf;
  const std::vector<double> lam(e.lambda().data(), e.lambda().data() + e.q());
  const auto le = log_elementary_symmetric_all(lam);
  return log_unnorm_prob(e, x) - le[static_cast<std::size_t>(m - e.p())] - e.log_det_vtv();
}

double fixed_size_log_prob(const Nnp& e, Mask x, int m) { return fixed_size_log_prob(e, from_mask(x), m); }

SubsetDistribution::SubsetDistribution(int n, std::vector<Mask> masks, std::vector<double> probs)
    : n_(n), masks_(std::move(masks)), probs_(std::move(probs)) {
  if (n < 0 || n > 64) throw Error("subset distribution ground size out of range");
  if (masks_.size() != probs_.size()) throw Error("masks and probabilities differ in length");
  double total = 0.0;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (i > 0 && masks_[i] <= masks_[i - 1]) throw Error("subset masks must be strictly ascending");
    if (n < 64 && (masks_[i] >> n) != 0) throw Error("subset mask outside the ground set");
    if (!(probs_[i] >= 0.0)) throw Error("negative subset probability");
    total += probs_[i];
  }
  if (std::abs(total - 1.0) > 1e-10) throw Error("subset probabilities do not sum to 1");
}

SubsetDistribution SubsetDistribution::from_log_weights(int n, std::vector<Mask> masks,
                                                        std::span<const double> log_weights,
                                                        double* log_normalizer) {
  std::vector<double> probs;
  const double lz = enumeration::normalize_log_weights(log_weights, probs);
  if (log_normalizer != nullptr) *log_normalizer = lz;
  return SubsetDistribution(n, std::move(masks), std::move(probs));
}

double SubsetDistribution::probability(Mask x) const {
  auto it = std::lower_bound(masks_.begin(), masks_.end(), x);
  if (it == masks_.end() || *it != x) return 0.0;
  return probs_[static_cast<std::size_t>(it - masks_.begin())];
}

double SubsetDistribution::marginal(Mask a) const {
  double out = 0.0;
  for (std::size_t i = 0; i < masks_.size(); ++i)
    if ((masks_[i] & a) == a) out += probs_[i];
  return out;
}

std::vector<double> SubsetDistribution::inclusion() const {
  std::vector<double> out(static_cast<std::size_t>(n_), 0.0);
  for (std::size_t i = 0; i < masks_.size(); ++i)
    for (int j : from_mask(masks_[i])) out[static_cast<std::size_t>(j)] += probs_[i];
  return out;
}

std::vector<double> SubsetDistribution::size_marginal() const {
  std::vector<double> out(static_cast<std::size_t>(n_) + 1, 0.0);
  for (std::size_t i = 0; i < masks_.size(); ++i) out[static_cast<std::size_t>(subset_size(masks_[i]))] += probs_[i];
  return out;
}

SubsetDistribution SubsetDistribution::restrict_to_size(int m) const {
  std::vector<Mask> masks;
  std::vector<double> probs;
  double total = 0.0;
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (subset_size(masks_[i]) != m) continue;
    masks.push_back(masks_[i]);
    probs.push_back(probs_[i]);
    total += probs_[i];
  }
  if (!(total > 0.0)) throw Error("conditioning on a size of probability zero");
  for (double& p : probs) p /= total;
  return SubsetDistribution(n_, std::move(masks), std::move(probs));
}

}  // namespace flatdpp
