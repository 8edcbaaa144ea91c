#pragma once

#include "flatdpp/diagnostics.hpp"
#include "flatdpp/flatlimit.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace flatdpp {

/// {"rows", "cols", "data"}: data is base64 of the column-major
/// little-endian float64 entries.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

/// {"n", "p", "L", "V", "tolerances"}.
nlohmann::json nnp_to_json(const Nnp& e);
/// Reads the NNP fields of either an NNP document or a limit document.
Nnp nnp_from_json(const nlohmann::json& j);

/// NNP fields plus "regime" and a "metadata" object.
nlohmann::json limit_to_json(const FlatLimitResult& r);

/// {"name": "..."} or {"coeffs": [f0, f1, ...], "eval": "series"}.
StationaryKernel kernel_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

/// 17 significant digits, locale-independent; reads back to the same double.
std::string format_double(double v);

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields);

/// subset_mask,probability
void write_distribution_csv(std::ostream& out, const SubsetDistribution& d);
/// epsilon,value
void write_curve_csv(std::ostream& out, const ConvergenceCurve& c);

}  // namespace flatdpp
