#include "flatdpp/polybasis.hpp"

#include "flatdpp/enumeration.hpp"

#include <Eigen/SVD>

#include <limits>
#include <numeric>

namespace flatdpp {

namespace {

void fill_homogeneous(int remaining, int pos, std::vector<int>& cur, std::vector<MultiIndex>& out) {
  const int d = static_cast<int>(cur.size());
  if (pos == d - 1) {
    cur[static_cast<std::size_t>(pos)] = remaining;
    out.push_back({cur});
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[static_cast<std::size_t>(pos)] = e;
    fill_homogeneous(remaining - e, pos + 1, cur, out);
  }
}

double monomial(const PointSet& ps, Index i, const MultiIndex& a) {
  double v = 1.0;
  for (std::size_t c = 0; c < a.exponents.size(); ++c)
    for (int e = 0; e < a.exponents[c]; ++e) v *= ps.coords()(i, static_cast<Index>(c));
  return v;
}

Matrix evaluate(const PointSet& ps, const std::vector<MultiIndex>& idx) {
  Matrix out(ps.size(), static_cast<Index>(idx.size()));
  for (Index i = 0; i < ps.size(); ++i)
    for (std::size_t c = 0; c < idx.size(); ++c) out(i, static_cast<Index>(c)) = monomial(ps, i, idx[c]);
  return out;
}

void check_dim(int d) {
  if (d < 1) throw Error("dimension must be >= 1");
}

}  // namespace

int MultiIndex::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

std::vector<MultiIndex> homogeneous_indices(int k, int d) {
  check_dim(d);
  if (k < 0) throw Error("degree must be >= 0");
  std::vector<MultiIndex> out;
  std::vector<int> cur(static_cast<std::size_t>(d), 0);
  fill_homogeneous(k, 0, cur, out);
  return out;
}

MonomialBasis::MonomialBasis(int d, int max_degree) : d_(d), k_(max_degree) {
  check_dim(d);
  if (max_degree < -1) throw Error("max degree must be >= -1");
  for (int j = 0; j <= max_degree; ++j) {
    auto block = homogeneous_indices(j, d);
    indices_.insert(indices_.end(), block.begin(), block.end());
  }
}

Index MonomialBasis::block_offset(int j) const {
  if (j < 0 || j > k_) throw Error("degree block out of range");
  return static_cast<Index>(count_poly(j - 1, d_));
}

Index MonomialBasis::block_size(int j) const {
  if (j < 0 || j > k_) throw Error("degree block out of range");
  return static_cast<Index>(count_homogeneous(j, d_));
}

std::uint64_t count_homogeneous(int k, int d) {
  check_dim(d);
  if (k < 0) throw Error("degree must be >= 0");
  return enumeration::binomial(k + d - 1, d - 1);
}

std::uint64_t count_poly(int k, int d) {
  check_dim(d);
  if (k < -1) throw Error("degree must be >= -1");
  if (k == -1) return 0;
  return enumeration::binomial(k + d, d);
}

std::vector<std::uint64_t> magic_numbers(int d, std::uint64_t upper_bound) {
  std::vector<std::uint64_t> out;
  for (int k = 0;; ++k) {
    const std::uint64_t v = count_poly(k, d);
    if (v > upper_bound) break;
    out.push_back(v);
  }
  return out;
}

int degree_bracket(std::uint64_t m, int d) {
  if (m < 1) throw Error("size must be >= 1");
  int k = 0;
  while (count_poly(k, d) < m) ++k;
  return k;
}

Matrix vandermonde(const PointSet& ps, int k) {
  return evaluate(ps, MonomialBasis(static_cast<int>(ps.dim()), k).indices());
}

Matrix vandermonde_block(const PointSet& ps, int k) {
  return evaluate(ps, homogeneous_indices(k, static_cast<int>(ps.dim())));
}

Matrix orthonormal_basis(const Matrix& m, double rel_tol) {
  const Index n = m.rows();
  if (m.cols() == 0 || n == 0) return Matrix(n, 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const Vector& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double thresh =
      rel_tol > 0.0 ? rel_tol * smax
                    : static_cast<double>(std::max(n, m.cols())) * std::numeric_limits<double>::epsilon() * smax;
  Index rank = 0;
  while (rank < s.size() && s(rank) > thresh) ++rank;
  Matrix q = svd.matrixU().leftCols(rank);
  for (Index c = 0; c < rank; ++c) {
    Index arg = 0;
    for (Index i = 1; i < n; ++i)
      if (std::abs(q(i, c)) > std::abs(q(arg, c)) * (1.0 + 1e-12)) arg = i;
    if (q(arg, c) < 0) q.col(c) *= -1.0;
  }
  return q;
}

}  // namespace flatdpp
