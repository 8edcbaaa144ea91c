#include "flatdpp/enumeration.hpp"

#include <algorithm>
#include <string>

namespace flatdpp::enumeration {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // result * num / i is exact at every step; guard the multiplication.
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw Error("binomial(" + std::to_string(n) + "," + std::to_string(k) + ") overflows");
    }
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<Mask> all_masks(int n) {
  if (n < 0 || n > kMaxVaryingSize) {
    throw Error("varying-size enumeration limited to n <= " + std::to_string(kMaxVaryingSize) +
                " (got " + std::to_string(n) + ")");
  }
  std::vector<Mask> masks(std::size_t{1} << n);
  for (std::size_t i = 0; i < masks.size(); ++i) masks[i] = static_cast<Mask>(i);
  return masks;
}

std::vector<Mask> fixed_size_masks(int n, int m) {
  if (n < 0 || n > 64) throw Error("ground set too large for bitmask enumeration");
  if (m < 0 || m > n) return {};
  const std::uint64_t count = binomial(n, m);
  if (count > kMaxFixedCount) {
    throw Error("fixed-size enumeration guard: binomial(" + std::to_string(n) + "," +
                std::to_string(m) + ") exceeds " + std::to_string(kMaxFixedCount));
  }
  std::vector<Mask> masks;
  masks.reserve(count);
  if (m == 0) {
    masks.push_back(0);
    return masks;
  }
  const Mask limit = n == 64 ? 0 : (Mask{1} << n);
  Mask v = (m == 64) ? ~Mask{0} : ((Mask{1} << m) - 1);
  while (true) {
    masks.push_back(v);
    if (masks.size() == count) break;
    // Gosper's hack: next integer with the same popcount.
    const Mask c = v & (~v + 1);
    const Mask r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
    if (limit != 0 && v >= limit) break;
  }
  return masks;
}

double normalize_log_weights(std::span<const double> log_weights, std::vector<double>& probs) {
  double hi = kNegInf;
  for (double w : log_weights) hi = std::max(hi, w);
  if (hi == kNegInf) throw Error("all subset weights vanish; distribution undefined");
  probs.assign(log_weights.size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    probs[i] = std::exp(log_weights[i] - hi);
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return hi + std::log(total);
}

}  // namespace flatdpp::enumeration
