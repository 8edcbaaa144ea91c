#include "flatdpp/serialize.hpp"

#include <boost/beast/core/detail/base64.hpp>

#include <charconv>
#include <cstring>
#include <fstream>
#include <ostream>

namespace flatdpp {

namespace base64 = boost::beast::detail::base64;

nlohmann::json matrix_to_json(const Matrix& m) {
  const std::size_t bytes = static_cast<std::size_t>(m.size()) * sizeof(double);
  std::string text(base64::encoded_size(bytes), '\0');
  text.resize(base64::encode(text.data(), m.data(), bytes));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", text}};
}

Matrix matrix_from_json(const nlohmann::json& j) {
  try {
    const Index rows = j.at("rows").get<Index>();
    const Index cols = j.at("cols").get<Index>();
    if (rows < 0 || cols < 0) throw Error("negative matrix dimensions");
    const std::string& text = j.at("data").get_ref<const std::string&>();
    std::string raw(base64::decoded_size(text.size()), '\0');
    const auto [written, read] = base64::decode(raw.data(), text.data(), text.size());
    if (read != text.size()) throw Error("malformed base64 matrix data");
    const std::size_t want = static_cast<std::size_t>(rows * cols) * sizeof(double);
    if (written != want) throw Error("matrix data has the wrong length");
    Matrix m(rows, cols);
    std::memcpy(m.data(), raw.data(), want);
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("bad matrix JSON: ") + ex.what());
  }
}

nlohmann::json nnp_to_json(const Nnp& e) {
  return {{"n", e.n()},
          {"p", e.p()},
          {"L", matrix_to_json(e.L())},
          {"V", matrix_to_json(e.V())},
          {"tolerances", {{"symmetry", e.tolerances().symmetry}, {"psd_rel", e.tolerances().psd_rel}}}};
}

Nnp nnp_from_json(const nlohmann::json& j) {
  try {
    NnpTolerances tol;
    if (j.contains("tolerances")) {
      tol.symmetry = j["tolerances"].value("symmetry", tol.symmetry);
      tol.psd_rel = j["tolerances"].value("psd_rel", tol.psd_rel);
    }
    Matrix l = matrix_from_json(j.at("L"));
    Matrix v = matrix_from_json(j.at("V"));
    if (l.rows() != j.at("n").get<Index>() || v.cols() != j.at("p").get<Index>()) {
      throw Error("NNP JSON sizes disagree with its n and p");
    }
    return make_nnp(std::move(l), std::move(v), tol);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("bad ensemble JSON: ") + ex.what());
  }
}

nlohmann::json limit_to_json(const FlatLimitResult& r) {
  nlohmann::json j = nnp_to_json(r.process);
  j["regime"] = r.regime_label();
  nlohmann::json meta = {{"regime_kind", regime_name(r.regime)},
                         {"parameter", r.parameter},
                         {"d", r.dim},
                         {"r", r.smoothness.is_infinite() ? nlohmann::json("inf")
                                                          : nlohmann::json(r.smoothness.value())},
                         {"bracket", {r.bracket.first, r.bracket.second}},
                         {"wronskian_condition", r.wronskian_condition}};
  meta["fixed_size"] = r.fixed_size ? nlohmann::json(*r.fixed_size) : nlohmann::json(nullptr);
  if (r.scaling_p) meta["scaling_p"] = *r.scaling_p;
  if (r.alpha) meta["alpha"] = *r.alpha;
  j["metadata"] = meta;
  return j;
}

StationaryKernel kernel_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("name")) {
      return builtin_kernel(j.at("name").get<std::string>(),
                            j.value("truncation", StationaryKernel::kDefaultTruncation));
    }
    if (j.contains("coeffs")) {
      const std::string eval = j.value("eval", std::string("series"));
      if (eval != "series") throw Error("unsupported kernel evaluator '" + eval + "'");
      return StationaryKernel::from_coefficients(j.at("coeffs").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("bad kernel JSON: ") + ex.what());
  }
  throw Error("kernel JSON needs \"name\" or \"coeffs\"");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw Error("cannot parse '" + path + "': " + ex.what());
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out << ',';
    out << fields[i];
  }
  out << '\n';
}

void write_distribution_csv(std::ostream& out, const SubsetDistribution& d) {
  write_csv_row(out, {"subset_mask", "probability"});
  for (std::size_t i = 0; i < d.masks().size(); ++i)
    write_csv_row(out, {std::to_string(d.masks()[i]), format_double(d.probs()[i])});
}

void write_curve_csv(std::ostream& out, const ConvergenceCurve& c) {
  write_csv_row(out, {"epsilon", "value"});
  for (std::size_t i = 0; i < c.epsilons.size(); ++i)
    write_csv_row(out, {format_double(c.epsilons[i]), format_double(c.values[i])});
}

}  // namespace flatdpp
