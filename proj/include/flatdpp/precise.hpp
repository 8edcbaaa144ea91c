#pragma once

// Pre-limit ensembles DPP(alpha eps^{-p} L(eps)) evaluated exactly enough to
// compare against their flat limits at small eps.

#include "flatdpp/ensembles.hpp"
#include "flatdpp/kernels.hpp"

#include <optional>

namespace flatdpp {

class KernelEnsemble {
 public:
  /// max_size bounds the subsets that will be evaluated and fixes the working
  /// precision; it defaults to n.
  KernelEnsemble(PointSet ps, StationaryKernel kernel, double eps, double alpha = 1.0, int p = 0,
                 std::optional<int> max_size = std::nullopt);

  const PointSet& points() const { return ps_; }
  double eps() const { return eps_; }
  unsigned digits() const { return digits_; }

  /// log det of (alpha eps^{-p} L(eps))_X. Throws if the minor is negative,
  /// which means the kernel is not positive definite on these points.
  double log_det(Mask x) const;

  /// Exact law over all subsets (m unset) or over m-subsets.
  SubsetDistribution distribution(std::optional<int> m = std::nullopt,
                                  Execution exec = Execution::parallel) const;

 private:
  double log_det_at_current_precision(Mask x) const;

  PointSet ps_;
  StationaryKernel kernel_;
  double eps_;
  double log_scale_;
  int max_size_;
  unsigned digits_;
  std::vector<HighPrecision> matrix_;
};

}  // namespace flatdpp
