#pragma once

#include "flatdpp/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flatdpp {

/// Ground set of n pairwise-distinct points in R^d, stored row-major.
/// Immutable after construction.
class PointSet {
 public:
  /// Minimum pairwise distance accepted by the constructor.
  static constexpr double kDistinctTolerance = 1e-12;

  explicit PointSet(RowMatrix coords);

  /// Convenience constructor for points on the real line.
  static PointSet on_line(const std::vector<double>& xs);

  Index size() const { return coords_.rows(); }
  Index dim() const { return coords_.cols(); }
  const RowMatrix& coords() const { return coords_; }
  auto point(Index i) const { return coords_.row(i); }

  double distance(Index i, Index j) const;

  /// Points indexed by `idx`, in that order.
  PointSet select(const Subset& idx) const;

  /// This set with `extra` appended (extra must have matching dimension).
  PointSet append(const RowMatrix& extra) const;

 private:
  RowMatrix coords_;
};

/// [ ||x_i - x_j||^p ]_{ij}; p = 0 gives the all-ones matrix (0^0 = 1).
Matrix distance_power_matrix(const PointSet& ps, int p);

/// Parses one point per row, comma-separated, no header. Decimal point is
/// always '.', independent of the global locale. Blank lines are skipped.
PointSet read_points_csv(std::istream& in);
PointSet read_points_csv_file(const std::string& path);

enum class PointGenerator { uniform, grid };

/// Seeded point generators on the unit box [0,1]^d.
/// uniform: i.i.d. uniform coordinates. grid: first n nodes of the regular
/// grid with ceil(n^(1/d)) nodes per axis.
PointSet generate_points(PointGenerator kind, int n, int d, std::uint64_t seed);

}  // namespace flatdpp
