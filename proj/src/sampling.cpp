#include "flatdpp/sampling.hpp"

#include <algorithm>

namespace flatdpp {

namespace {

Matrix stack(const Matrix& q, const Matrix& u, const std::vector<Index>& cols) {
  Matrix out(q.rows(), q.cols() + static_cast<Index>(cols.size()));
  out.leftCols(q.cols()) = q;
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(q.cols() + static_cast<Index>(c)) = u.col(cols[c]);
  return out;
}

}  // namespace

Subset sample_projection(const Matrix& u, RngState& rng) {
  const Index n = u.rows();
  const Index m = u.cols();
  if (m > n) throw Error("projection basis has more columns than rows");
  if (m == 0) return {};
  const Matrix gram = u.transpose() * u;
  if ((gram - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error("projection sampler needs orthonormal columns");
  }
  Matrix f = u;
  Vector resid = f.rowwise().squaredNorm();
  Subset out;
  out.reserve(static_cast<std::size_t>(m));
  for (Index t = 0; t < m; ++t) {
    resid = resid.cwiseMax(0.0);
    for (int chosen : out) resid(chosen) = 0.0;
    const double total = resid.sum();
    if (!(total > 0.0)) throw Error("projection sampler ran out of residual mass");
    const double target = rng.uniform() * total;
    double acc = 0.0;
    Index pick = -1;
    for (Index i = 0; i < n; ++i) {
      if (resid(i) <= 0.0) continue;
      pick = i;
      acc += resid(i);
      if (acc > target) break;
    }
    out.push_back(static_cast<int>(pick));
    const Vector w = f.row(pick).transpose() / f.row(pick).norm();
    f -= (f * w) * w.transpose();
    resid = f.rowwise().squaredNorm();
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subset sample(const Nnp& e, RngState& rng) {
  std::vector<Index> cols;
  for (Index i = 0; i < e.q(); ++i) {
    const double lam = e.lambda()(i);
    if (rng.uniform() < lam / (1.0 + lam)) cols.push_back(i);
  }
  return sample_projection(stack(e.Q(), e.Utilde(), cols), rng);
}

Subset sample_fixed(const Nnp& e, int m, RngState& rng) {
  const Index q = e.q();
  if (m < e.p() || m > e.p() + q) {
    throw Error("fixed size " + std::to_string(m) + " outside [p, p+q] = [" + std::to_string(e.p()) +
                ", " + std::to_string(e.p() + q) + "]");
  }
  const int k = m - static_cast<int>(e.p());
  // table[i][j] = log e_j(lambda_0 .. lambda_{i-1})
  std::vector<std::vector<double>> table(static_cast<std::size_t>(q) + 1,
                                         std::vector<double>(static_cast<std::size_t>(k) + 1, kNegInf));
  for (auto& row : table) row[0] = 0.0;
  for (Index i = 1; i <= q; ++i) {
    const double lv = std::log(e.lambda()(i - 1));
    for (int j = 1; j <= k; ++j) {
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          log_add_exp(table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)],
                      lv + table[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)]);
    }
  }
  std::vector<Index> cols;
  int remaining = k;
  for (Index i = q; i >= 1 && remaining > 0; --i) {
    const auto si = static_cast<std::size_t>(i);
    const auto sr = static_cast<std::size_t>(remaining);
    const double take = std::log(e.lambda()(i - 1)) + table[si - 1][sr - 1] - table[si][sr];
    if (rng.uniform() < std::exp(take) || remaining == i) {
      cols.push_back(i - 1);
      --remaining;
    }
  }
  std::reverse(cols.begin(), cols.end());
  return sample_projection(stack(e.Q(), e.Utilde(), cols), rng);
}

}  // namespace flatdpp
