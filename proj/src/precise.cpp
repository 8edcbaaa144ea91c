#include "flatdpp/precise.hpp"

#include "flatdpp/enumeration.hpp"

#include <algorithm>
#include <cmath>

namespace flatdpp {

unsigned digits_for_flat_minors(double eps, int max_size) {
  const double decades = eps < 1.0 ? std::ceil(std::log10(1.0 / eps)) : 0.0;
  const double s = std::max(max_size, 1);
  const double need = 30.0 + (decades + 1.0) * s * (s - 1.0);
  return static_cast<unsigned>(std::min(need, 4000.0));
}

KernelEnsemble::KernelEnsemble(PointSet ps, StationaryKernel kernel, double eps, double alpha, int p,
                               std::optional<int> max_size)
    : ps_(std::move(ps)), kernel_(std::move(kernel)), eps_(eps) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  if (!(alpha > 0.0)) throw Error("alpha must be positive");
  if (p < 0) throw Error("scaling exponent p must be >= 0");
  const int n = static_cast<int>(ps_.size());
  max_size_ = max_size.value_or(n);
  if (max_size_ < 0 || max_size_ > n) throw Error("max subset size out of range");
  log_scale_ = std::log(alpha) - p * std::log(eps);
  digits_ = digits_for_flat_minors(eps, max_size_);
  PrecisionScope scope(digits_);
  matrix_ = kernel_matrix_precise(kernel_, ps_, eps);
}

double KernelEnsemble::log_det_at_current_precision(Mask x) const {
  const Subset s = from_mask(x);
  const int m = static_cast<int>(s.size());
  if (m > max_size_) throw Error("subset larger than the ensemble's max size");
  if (m == 0) return 0.0;
  const auto n = static_cast<std::size_t>(ps_.size());
  std::vector<HighPrecision> a(static_cast<std::size_t>(m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      a[static_cast<std::size_t>(i * m + j)] =
          matrix_[static_cast<std::size_t>(s[static_cast<std::size_t>(i)]) * n + static_cast<std::size_t>(s[static_cast<std::size_t>(j)])];
  const SignedLog d = log_abs_det_inplace(a, m);
  if (d.sign < 0) throw Error("negative principal minor: kernel matrix is not positive definite");
  if (d.sign == 0) return kNegInf;
  return d.log_abs + m * log_scale_;
}

double KernelEnsemble::log_det(Mask x) const {
  PrecisionScope scope(digits_);
  return log_det_at_current_precision(x);
}

SubsetDistribution KernelEnsemble::distribution(std::optional<int> m, Execution exec) const {
  const int n = static_cast<int>(ps_.size());
  std::vector<Mask> masks = m ? enumeration::fixed_size_masks(n, *m) : enumeration::all_masks(n);
  if (m && (*m < 0 || *m > n)) throw Error("fixed size out of range");
  PrecisionScope scope(digits_);
  const auto logw = enumeration::evaluate(
      masks, [this](Mask x) { return log_det_at_current_precision(x); }, exec);
  return SubsetDistribution::from_log_weights(n, std::move(masks), logw);
}

}  // namespace flatdpp
