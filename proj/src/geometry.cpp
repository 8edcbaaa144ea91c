#include "flatdpp/geometry.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

namespace flatdpp {

namespace {

double integer_power(double base, int p) {
  double out = 1.0;
  for (int i = 0; i < p; ++i) out *= base;
  return out;
}

}  // namespace

PointSet::PointSet(RowMatrix coords) : coords_(std::move(coords)) {
  if (coords_.rows() < 1 || coords_.cols() < 1) throw Error("point set needs n >= 1 and d >= 1");
  if (!coords_.allFinite()) throw Error("point coordinates must be finite");
  for (Index i = 0; i < size(); ++i) {
    for (Index j = i + 1; j < size(); ++j) {
      if (distance(i, j) <= kDistinctTolerance) {
        throw Error("points " + std::to_string(i) + " and " + std::to_string(j) +
                    " coincide (distance <= 1e-12)");
      }
    }
  }
}

PointSet PointSet::on_line(const std::vector<double>& xs) {
  RowMatrix c(static_cast<Index>(xs.size()), 1);
  for (std::size_t i = 0; i < xs.size(); ++i) c(static_cast<Index>(i), 0) = xs[i];
  return PointSet(std::move(c));
}

double PointSet::distance(Index i, Index j) const {
  return (coords_.row(i) - coords_.row(j)).norm();
}

PointSet PointSet::select(const Subset& idx) const {
  RowMatrix c(static_cast<Index>(idx.size()), dim());
  for (std::size_t r = 0; r < idx.size(); ++r) c.row(static_cast<Index>(r)) = coords_.row(idx[r]);
  return PointSet(std::move(c));
}

PointSet PointSet::append(const RowMatrix& extra) const {
  if (extra.cols() != dim()) throw Error("appended points have wrong dimension");
  RowMatrix c(size() + extra.rows(), dim());
  c.topRows(size()) = coords_;
  c.bottomRows(extra.rows()) = extra;
  return PointSet(std::move(c));
}

Matrix distance_power_matrix(const PointSet& ps, int p) {
  if (p < 0) throw Error("distance power must be nonnegative");
  const Index n = ps.size();
  Matrix out(n, n);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    out(i, i) = p == 0 ? 1.0 : 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double v = integer_power(ps.distance(i, j), p);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

PointSet read_points_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t end = line.find(',', pos);
      if (end == std::string::npos) end = line.size();
      std::size_t b = line.find_first_not_of(" \t", pos);
      std::size_t e = line.find_last_not_of(" \t", end == 0 ? 0 : end - 1);
      if (b == std::string::npos || b >= end || e < b) {
        throw Error("empty field on CSV line " + std::to_string(line_no));
      }
      double value = 0.0;
      const char* first = line.data() + b;
      const char* last = line.data() + e + 1;
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last) {
        throw Error("bad number on CSV line " + std::to_string(line_no) + ": '" +
                    line.substr(b, e + 1 - b) + "'");
      }
      row.push_back(value);
      pos = end + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw Error("inconsistent column count on CSV line " + std::to_string(line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error("no points in CSV input");
  RowMatrix c(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) c(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  return PointSet(std::move(c));
}

PointSet read_points_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open points file '" + path + "'");
  return read_points_csv(in);
}

PointSet generate_points(PointGenerator kind, int n, int d, std::uint64_t seed) {
  if (n < 1 || d < 1) throw Error("generator needs n >= 1 and d >= 1");
  RowMatrix c(n, d);
  if (kind == PointGenerator::uniform) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) c(i, j) = unif(rng);
  } else {
    int per_axis = 1;
    while (std::pow(per_axis, d) < n) ++per_axis;
    for (Index i = 0; i < n; ++i) {
      Index rest = i;
      for (Index j = 0; j < d; ++j) {
        const Index node = rest % per_axis;
        rest /= per_axis;
        c(i, j) = per_axis == 1 ? 0.5 : static_cast<double>(node) / (per_axis - 1);
      }
    }
  }
  return PointSet(std::move(c));
}

}  // namespace flatdpp
