#pragma once

#include "flatdpp/geometry.hpp"

#include <cstdint>
#include <vector>

namespace flatdpp {

struct MultiIndex {
  std::vector<int> exponents;

  int degree() const;
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

/// Monomials of degree <= k in d variables, graded by degree and ordered
/// lexicographically (descending) within each degree: for d = 2, degree 2 is
/// (2,0), (1,1), (0,2). In d = 1 this is the classical 1, x, x^2, ... order.
class MonomialBasis {
 public:
  /// max_degree = -1 gives the empty basis.
  MonomialBasis(int d, int max_degree);

  int dim() const { return d_; }
  int max_degree() const { return k_; }
  Index size() const { return static_cast<Index>(indices_.size()); }
  const std::vector<MultiIndex>& indices() const { return indices_; }
  const MultiIndex& operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }

  /// First column of the degree-j block (= P_{j-1,d}).
  Index block_offset(int j) const;
  /// Width of the degree-j block (= H_{j,d}).
  Index block_size(int j) const;

 private:
  int d_;
  int k_;
  std::vector<MultiIndex> indices_;
};

/// All multi-indices of total degree exactly k, in basis order.
std::vector<MultiIndex> homogeneous_indices(int k, int d);

/// H_{k,d} = binomial(k+d-1, d-1).
std::uint64_t count_homogeneous(int k, int d);
/// P_{k,d} = binomial(k+d, d), with P_{-1,d} = 0.
std::uint64_t count_poly(int k, int d);
/// { P_{k,d} : k >= 0 } intersected with [1, upper_bound], ascending.
std::vector<std::uint64_t> magic_numbers(int d, std::uint64_t upper_bound);

/// Smallest k >= 0 with m <= P_{k,d} (so P_{k-1,d} < m <= P_{k,d}); m >= 1.
int degree_bracket(std::uint64_t m, int d);

/// n x P_{k,d} Vandermonde matrix V_{<=k}; k = -1 gives n x 0.
Matrix vandermonde(const PointSet& ps, int k);
/// n x H_{k,d} degree-k block V_k.
Matrix vandermonde_block(const PointSet& ps, int k);

/// Orthonormal basis of span(M) from a thin SVD. Rank is the number of
/// singular values above max(n, p) * machine eps * sigma_max, or above
/// rel_tol * sigma_max when rel_tol > 0. Each column's largest-magnitude
/// entry is made positive, so the result is reproducible.
Matrix orthonormal_basis(const Matrix& m, double rel_tol = 0.0);

}  // namespace flatdpp
