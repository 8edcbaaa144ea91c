#include "flatdpp/wronskian.hpp"

#include "flatdpp/enumeration.hpp"

#include <Eigen/SVD>

#include <limits>

namespace flatdpp {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("Wronskian coefficient overflows 64 bits");
  return out;
}

// m! / prod(g_i!)
std::uint64_t multinomial(const std::vector<int>& g) {
  std::uint64_t out = 1;
  int total = 0;
  for (int gi : g) {
    total += gi;
    out = checked_mul(out, enumeration::binomial(total, gi));
  }
  return out;
}

double taylor_at(std::span<const double> taylor, int j) {
  if (j >= static_cast<int>(taylor.size())) {
    throw Error("Wronskian needs f_" + std::to_string(j) + " but the Taylor series stops at f_" +
                std::to_string(taylor.size() - 1));
  }
  return taylor[static_cast<std::size_t>(j)];
}

}  // namespace

Matrix wronskian_expansion(std::span<const double> taylor, int k, int d) {
  if (k < 0) throw Error("Wronskian degree must be >= 0");
  taylor_at(taylor, 2 * k);
  const MonomialBasis basis(d, k);
  const Index size = basis.size();
  Matrix w = Matrix::Zero(size, size);
  std::vector<int> g(static_cast<std::size_t>(d));
  for (Index i = 0; i < size; ++i) {
    for (Index j = 0; j < size; ++j) {
      const auto& a = basis[i].exponents;
      const auto& b = basis[j].exponents;
      bool even = true;
      int m = 0;
      for (int c = 0; c < d; ++c) {
        const int s = a[static_cast<std::size_t>(c)] + b[static_cast<std::size_t>(c)];
        if (s % 2 != 0) {
          even = false;
          break;
        }
        g[static_cast<std::size_t>(c)] = s / 2;
        m += s / 2;
      }
      if (!even) continue;
      std::uint64_t coeff = multinomial(g);
      int sign = 1;
      for (int c = 0; c < d; ++c) {
        coeff = checked_mul(coeff, enumeration::binomial(2 * g[static_cast<std::size_t>(c)],
                                                         a[static_cast<std::size_t>(c)]));
        if (b[static_cast<std::size_t>(c)] % 2 != 0) sign = -sign;
      }
      w(i, j) = sign * static_cast<double>(coeff) * taylor_at(taylor, 2 * m);
    }
  }
  return w;
}

Matrix wronskian_matrix(const StationaryKernel& kernel, int k, int d) {
  if (!kernel.smoothness().admits_degree(k)) {
    throw Error("derivatives beyond smoothness order: Wronskian of degree " + std::to_string(k) +
                " needs k <= r - 1, kernel has r = " + kernel.smoothness().to_string());
  }
  return wronskian_expansion(kernel.taylor(), k, d);
}

double wronskian_entry_1d(std::span<const double> taylor, int a, int b) {
  if (a < 0 || b < 0) throw Error("negative exponent");
  if ((a + b) % 2 != 0) return 0.0;
  const double sign = b % 2 == 0 ? 1.0 : -1.0;
  return sign * static_cast<double>(enumeration::binomial(a + b, a)) * taylor_at(taylor, a + b);
}

SchurBlock schur_block(const Matrix& w, int k, int d) {
  const Index lead = static_cast<Index>(count_poly(k - 1, d));
  const Index tail = static_cast<Index>(count_homogeneous(k, d));
  if (w.rows() != lead + tail || w.cols() != lead + tail) {
    throw Error("Wronskian has wrong size for degree " + std::to_string(k));
  }
  const Matrix corner = w.bottomRightCorner(tail, tail);
  if (lead == 0) return {corner, 1.0};
  const Matrix head = w.topLeftCorner(lead, lead);
  Eigen::JacobiSVD<Matrix> svd(head);
  const Vector& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  const double cond = smin > 0 ? s(0) / smin : std::numeric_limits<double>::infinity();
  if (!(cond < 1.0 / (static_cast<double>(lead) * std::numeric_limits<double>::epsilon()))) {
    throw Error("leading Wronskian block W_{<k} is singular (condition " + std::to_string(cond) +
                "); kernel not admissible at degree " + std::to_string(k));
  }
  const Matrix coupling = head.fullPivLu().solve(w.topRightCorner(lead, tail));
  Matrix block = corner - w.bottomLeftCorner(tail, lead) * coupling;
  block = 0.5 * (block + block.transpose()).eval();
  return {block, cond};
}

}  // namespace flatdpp
