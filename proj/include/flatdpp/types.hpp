#pragma once

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace flatdpp {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Sorted list of ground-set indices.
using Subset = std::vector<int>;

/// Bitmask encoding of a subset (bit i set <=> index i included); n <= 64.
using Mask = std::uint64_t;

/// Any library precondition or domain failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File or stream failures; the CLI maps these to a distinct exit code.
class IoError : public Error {
 public:
  using Error::Error;
};

enum class Execution { serial, parallel };

/// value = sign * exp(log_abs); sign == 0 means the value is exactly zero.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline Mask to_mask(const Subset& s) {
  Mask m = 0;
  for (int i : s) {
    if (i < 0 || i >= 64) throw Error("subset index out of bitmask range");
    m |= Mask{1} << i;
  }
  return m;
}

inline Subset from_mask(Mask m) {
  Subset s;
  s.reserve(static_cast<std::size_t>(std::popcount(m)));
  while (m != 0) {
    s.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return s;
}

inline int subset_size(Mask m) { return std::popcount(m); }

/// log(exp(a) + exp(b)) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace flatdpp
