#pragma once

// Extended-precision scalar for pre-limit kernel ensembles. Principal minors
// of L(eps) shrink like eps^{m(m-1)} while entries stay O(1), so double
// precision loses every significant digit long before eps = 1e-3.

#include "flatdpp/types.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <utility>
#include <vector>

namespace flatdpp {

using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                  boost::multiprecision::et_off>;

/// Sets the default HighPrecision digits for its lifetime. The default is
/// process-wide in this Boost version, so create scopes only outside
/// parallel regions.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10) : previous_(HighPrecision::default_precision()) {
    HighPrecision::default_precision(digits10);
  }
  ~PrecisionScope() { HighPrecision::default_precision(previous_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned previous_;
};

/// Decimal digits needed to resolve minors of size `max_size` of a flat
/// kernel matrix at scale eps, with ~30 spare significant digits.
unsigned digits_for_flat_minors(double eps, int max_size);

/// log|det| and sign of a dense n x n row-major matrix by Gaussian
/// elimination with partial pivoting; `a` is overwritten.
template <class T>
SignedLog log_abs_det_inplace(std::vector<T>& a, int n) {
  using std::abs;
  using std::log;
  int sign = 1;
  T log_abs = 0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    T best = abs(a[static_cast<std::size_t>(col * n + col)]);
    for (int r = col + 1; r < n; ++r) {
      T cand = abs(a[static_cast<std::size_t>(r * n + col)]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (best == 0) return {};
    if (pivot != col) {
      for (int c = 0; c < n; ++c)
        std::swap(a[static_cast<std::size_t>(pivot * n + c)], a[static_cast<std::size_t>(col * n + c)]);
      sign = -sign;
    }
    const T p = a[static_cast<std::size_t>(col * n + col)];
    if (p < 0) sign = -sign;
    log_abs += log(abs(p));
    for (int r = col + 1; r < n; ++r) {
      const T factor = a[static_cast<std::size_t>(r * n + col)] / p;
      if (factor == 0) continue;
      for (int c = col + 1; c < n; ++c)
        a[static_cast<std::size_t>(r * n + c)] -= factor * a[static_cast<std::size_t>(col * n + c)];
    }
  }
  return {static_cast<double>(log_abs), sign};
}

}  // namespace flatdpp
