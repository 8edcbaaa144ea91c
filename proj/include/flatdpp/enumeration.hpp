#pragma once

// Subset enumeration kernels. Every brute-force quantity in the library
// (oracle distributions, pre-limit kernel ensembles, inclusion marginals)
// reduces to "evaluate a function on every subset, then normalize". The
// per-subset evaluation is embarrassingly parallel; the OpenMP kernel and
// the serial reference must produce bit-identical vectors, and all
// reductions happen afterwards in a fixed serial order.

#include "flatdpp/types.hpp"

#include <omp.h>

#include <exception>
#include <span>

namespace flatdpp::enumeration {

/// Largest ground set accepted for varying-size enumeration (2^16 subsets).
inline constexpr int kMaxVaryingSize = 16;
/// Largest number of m-subsets accepted for fixed-size enumeration.
inline constexpr std::uint64_t kMaxFixedCount = 1'000'000;

/// binomial(n, k) in 64 bits; throws on overflow.
std::uint64_t binomial(int n, int k);

/// All 2^n masks in increasing numeric order. Throws if n > kMaxVaryingSize.
std::vector<Mask> all_masks(int n);

/// All masks with exactly m bits among the low n, increasing numeric order.
/// Throws if binomial(n, m) > kMaxFixedCount.
std::vector<Mask> fixed_size_masks(int n, int m);

template <class Fn>
std::vector<double> evaluate_serial(std::span<const Mask> masks, Fn&& fn) {
  std::vector<double> out(masks.size());
  for (std::size_t i = 0; i < masks.size(); ++i) out[i] = fn(masks[i]);
  return out;
}

template <class Fn>
std::vector<double> evaluate_parallel(std::span<const Mask> masks, Fn&& fn) {
  std::vector<double> out(masks.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(masks.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(masks[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(flatdpp_enumeration_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

template <class Fn>
std::vector<double> evaluate(std::span<const Mask> masks, Fn&& fn, Execution exec) {
  if (exec == Execution::parallel) return evaluate_parallel(masks, std::forward<Fn>(fn));
  return evaluate_serial(masks, std::forward<Fn>(fn));
}

/// Turns log-weights into probabilities (max-shifted, summed left to right).
/// Returns the log of the normalizer. Throws if every weight is zero.
double normalize_log_weights(std::span<const double> log_weights, std::vector<double>& probs);

}  // namespace flatdpp::enumeration
