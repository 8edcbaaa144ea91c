#pragma once

#include "flatdpp/kernels.hpp"
#include "flatdpp/polybasis.hpp"

#include <span>

namespace flatdpp {

/// W_{<=k}: coefficients of x^a y^b in sum_{m<=k} f_{2m} ||x - y||^{2m},
/// indexed by MonomialBasis(d, k). Only the even Taylor coefficients are
/// read; no smoothness check is made. Throws if f_{2k} is not stored.
Matrix wronskian_expansion(std::span<const double> taylor, int k, int d);

/// Checked version: requires k <= r - 1 for the kernel's smoothness order r.
Matrix wronskian_matrix(const StationaryKernel& kernel, int k, int d);

/// d = 1 closed form (-1)^b binomial(a+b, a) f_{a+b} for even a+b, else 0.
double wronskian_entry_1d(std::span<const double> taylor, int a, int b);

struct SchurBlock {
  Matrix block;             // H_{k,d} x H_{k,d}
  double condition_number;  // 2-norm condition of the inverted W_{<k}; 1 for k = 0
};

/// W_bar = W_corner - W_low W_{<k}^{-1} W_up, splitting W_{<=k} after the
/// first P_{k-1,d} rows and columns. Throws when W_{<k} is numerically
/// singular.
SchurBlock schur_block(const Matrix& w, int k, int d);

}  // namespace flatdpp
