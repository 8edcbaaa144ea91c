#pragma once

#include "flatdpp/ensembles.hpp"

#include <cstdint>
#include <random>

namespace flatdpp {

/// Deterministic generator state. Do not share one across threads.
class RngState {
 public:
  explicit RngState(std::uint64_t seed) : engine_(seed) {}
  /// Uniform draw in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Projection DPP with kernel UU^T (U^T U = I): exactly U.cols() indices,
/// P(X) = det(U_X)^2. Chain rule with Gram-Schmidt deflation, O(n m^2).
Subset sample_projection(const Matrix& u, RngState& rng);

/// Exact draw from the extended L-ensemble: span(V) always, each eigenvector
/// of L~ with probability lambda / (1 + lambda), then a projection draw.
Subset sample(const Nnp& e, RngState& rng);

/// Exact draw conditioned on |X| = m, p <= m <= p + q.
Subset sample_fixed(const Nnp& e, int m, RngState& rng);

}  // namespace flatdpp
