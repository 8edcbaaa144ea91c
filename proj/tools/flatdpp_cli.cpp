// flatdpp command-line front end.

#include "flatdpp/diagnostics.hpp"
#include "flatdpp/flatlimit.hpp"
#include "flatdpp/precise.hpp"
#include "flatdpp/sampling.hpp"
#include "flatdpp/serialize.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace flatdpp;

namespace {

struct Config {
  int dim = 1;
  std::string kernel = "gaussian";
  std::vector<double> coeffs;
  int truncation = StationaryKernel::kDefaultTruncation;
  std::optional<int> m;
  bool vary = false;
  int p = 0;
  double alpha = 1.0;
  std::vector<double> eps;
  std::string points;
  std::string gen = "uniform";
  int n = 8;
  std::uint64_t seed = 1;
  std::vector<double> y;
  int grid = 200;
  bool limit = false;
  std::string out;
  std::string format = "csv";
  std::string nnp;
  int samples = 1;
  std::string mode = "full-law";
  std::string command;
  bool dim_given = false;
};

// Cells are JSON numbers or strings; CSV prints numbers with 17 digits.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<nlohmann::json>> rows;
};

std::string cell_text(const nlohmann::json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw IoError("write failed");
  }

 private:
  std::ofstream file_;
};

void emit(const Config& cfg, const Table& t) {
  Output out(cfg.out);
  if (cfg.format == "json") {
    nlohmann::json j = {{"columns", t.header}, {"rows", nlohmann::json::array()}};
    for (const auto& r : t.rows) j["rows"].push_back(r);
    out.stream() << j.dump(2) << '\n';
  } else {
    write_csv_row(out.stream(), t.header);
    for (const auto& r : t.rows) {
      std::vector<std::string> fields;
      for (const auto& v : r) fields.push_back(cell_text(v));
      write_csv_row(out.stream(), fields);
    }
  }
  out.finish();
}

PointSet load_points(const Config& cfg) {
  if (!cfg.points.empty()) {
    PointSet ps = read_points_csv_file(cfg.points);
    if (cfg.dim_given && ps.dim() != cfg.dim) {
      throw Error("points file has dimension " + std::to_string(ps.dim()) + " but --dim is " +
                  std::to_string(cfg.dim));
    }
    return ps;
  }
  const PointGenerator g = cfg.gen == "grid" ? PointGenerator::grid : PointGenerator::uniform;
  return generate_points(g, cfg.n, cfg.dim, cfg.seed);
}

StationaryKernel load_kernel(const Config& cfg) {
  if (!cfg.coeffs.empty()) return StationaryKernel::from_coefficients(cfg.coeffs);
  return builtin_kernel(cfg.kernel, cfg.truncation);
}

void need_target(const Config& cfg) {
  if (cfg.vary == cfg.m.has_value()) throw Error("give exactly one of --m or --vary");
}

FlatLimitResult compute_limit(const Config& cfg, const PointSet& ps, const StationaryKernel& k) {
  need_target(cfg);
  return cfg.m ? fixed_size_limit(ps, k, *cfg.m) : varying_size_limit(ps, k, cfg.p, cfg.alpha);
}

void report(const FlatLimitResult& r) {
  std::cerr << "regime " << r.regime_label() << "\n"
            << "bracket [" << r.bracket.first << ", " << r.bracket.second << "]\n";
  if (r.fixed_size) std::cerr << "fixed size " << *r.fixed_size << "\n";
}

std::string eps_column(double e) { return "eps=" + format_double(e); }

Nnp load_nnp(const Config& cfg) { return nnp_from_json(read_json_file(cfg.nnp)); }

int cmd_limit(const Config& cfg) {
  const PointSet ps = load_points(cfg);
  const FlatLimitResult r = compute_limit(cfg, ps, load_kernel(cfg));
  report(r);
  Output out(cfg.out);
  out.stream() << limit_to_json(r).dump(2) << '\n';
  out.finish();
  return 0;
}

int cmd_cond_density(const Config& cfg) {
  const int d = cfg.dim;
  if (cfg.y.empty() || cfg.y.size() % static_cast<std::size_t>(d) != 0) {
    throw Error("--Y needs a multiple of --dim coordinates");
  }
  if (cfg.grid < 2) throw Error("--grid must be at least 2");
  if (cfg.eps.empty() && !cfg.limit) throw Error("give --eps and/or --limit");
  const StationaryKernel k = load_kernel(cfg);
  const Index ny = static_cast<Index>(cfg.y.size()) / d;
  const RowMatrix y = Eigen::Map<const RowMatrix>(cfg.y.data(), ny, d);
  const PointSet grid = generate_points(PointGenerator::grid, cfg.grid, d, 0);
  const int m = static_cast<int>(ny) + 1;

  Table t;
  for (int j = 0; j < d; ++j) t.header.push_back(d == 1 ? "x" : "x" + std::to_string(j + 1));
  std::vector<std::vector<double>> cols;
  for (double e : cfg.eps) {
    t.header.push_back(eps_column(e));
    cols.push_back(conditional_density(kernel_set_weight(k, e, m), y, grid.coords()));
  }
  if (cfg.limit) {
    const FlatLimitResult r = fixed_size_limit(grid, k, m);
    report(r);
    t.header.push_back("limit");
    cols.push_back(conditional_density(limit_set_weight(r.recipe), y, grid.coords()));
  }
  for (Index i = 0; i < grid.size(); ++i) {
    std::vector<nlohmann::json> row;
    for (int j = 0; j < d; ++j) row.emplace_back(grid.point(i)(j));
    for (const auto& c : cols) row.emplace_back(c[static_cast<std::size_t>(i)]);
    t.rows.push_back(std::move(row));
  }
  emit(cfg, t);
  return 0;
}

int cmd_inclusion(const Config& cfg) {
  need_target(cfg);
  if (cfg.eps.empty() && !cfg.limit) throw Error("give --eps and/or --limit");
  const PointSet ps = load_points(cfg);
  const StationaryKernel k = load_kernel(cfg);
  Table t{{"index"}, {}};
  std::vector<std::vector<double>> cols;
  for (double e : cfg.eps) {
    t.header.push_back(eps_column(e));
    const KernelEnsemble ens = cfg.m ? KernelEnsemble(ps, k, e, 1.0, 0, *cfg.m)
                                     : KernelEnsemble(ps, k, e, cfg.alpha, cfg.p);
    cols.push_back(ens.distribution(cfg.m).inclusion());
  }
  if (cfg.limit) {
    const FlatLimitResult r = compute_limit(cfg, ps, k);
    report(r);
    t.header.push_back("limit");
    cols.push_back(inclusion_probabilities(r.process, cfg.m));
  }
  for (Index i = 0; i < ps.size(); ++i) {
    std::vector<nlohmann::json> row{i};
    for (const auto& c : cols) row.emplace_back(c[static_cast<std::size_t>(i)]);
    t.rows.push_back(std::move(row));
  }
  emit(cfg, t);
  return 0;
}

int cmd_size_dist(const Config& cfg) {
  Table t{{"size"}, {}};
  std::vector<std::vector<double>> cols;
  Index n = 0;
  if (!cfg.nnp.empty()) {
    const Nnp e = load_nnp(cfg);
    n = e.n();
    t.header.push_back("probability");
    cols.push_back(size_distribution(e));
  } else {
    if (!cfg.vary) throw Error("size-dist needs --vary (or --nnp)");
    if (cfg.eps.empty() && !cfg.limit) throw Error("give --eps and/or --limit");
    const PointSet ps = load_points(cfg);
    const StationaryKernel k = load_kernel(cfg);
    n = ps.size();
    for (double e : cfg.eps) {
      t.header.push_back(eps_column(e));
      cols.push_back(KernelEnsemble(ps, k, e, cfg.alpha, cfg.p).distribution().size_marginal());
    }
    if (cfg.limit) {
      report(varying_size_limit(ps, k, cfg.p, cfg.alpha));
      t.header.push_back("limit");
      cols.push_back(limit_size_distribution(ps, k, cfg.p, cfg.alpha));
    }
  }
  for (Index s = 0; s <= n; ++s) {
    std::vector<nlohmann::json> row{s};
    for (const auto& c : cols) row.emplace_back(c[static_cast<std::size_t>(s)]);
    t.rows.push_back(std::move(row));
  }
  emit(cfg, t);
  return 0;
}

int cmd_converge(const Config& cfg) {
  need_target(cfg);
  if (cfg.eps.empty()) throw Error("converge needs --eps");
  CurveMode mode;
  if (cfg.mode == "full-law") mode = CurveMode::full_law;
  else if (cfg.mode == "conditional") mode = CurveMode::conditional;
  else if (cfg.mode == "size-law") mode = CurveMode::size_law;
  else if (cfg.mode == "inclusion") mode = CurveMode::inclusion;
  else throw Error("unknown --mode '" + cfg.mode + "'");
  Subset y;
  for (double v : cfg.y) {
    if (v != static_cast<int>(v)) throw Error("converge takes --Y as point indices");
    y.push_back(static_cast<int>(v));
  }
  std::sort(y.begin(), y.end());
  const PointSet ps = load_points(cfg);
  const LimitTarget target = cfg.m ? LimitTarget::fixed(*cfg.m) : LimitTarget::varying(cfg.p, cfg.alpha);
  const ConvergenceCurve c = convergence_curve(ps, load_kernel(cfg), target, cfg.eps, mode, y);
  std::cerr << "target " << c.target << "\n";
  Table t{{"epsilon", "value"}, {}};
  for (std::size_t i = 0; i < c.values.size(); ++i) t.rows.push_back({c.epsilons[i], c.values[i]});
  emit(cfg, t);
  return 0;
}

int cmd_sample(const Config& cfg) {
  if (cfg.samples < 1) throw Error("--samples must be positive");
  std::optional<Nnp> e;
  std::optional<int> m = cfg.m;
  if (!cfg.nnp.empty()) {
    e = load_nnp(cfg);
  } else {
    const FlatLimitResult r = compute_limit(cfg, load_points(cfg), load_kernel(cfg));
    report(r);
    e = r.process;
  }
  RngState rng(cfg.seed);
  Table t{{"draw", "size", "subset_mask"}, {}};
  for (int s = 0; s < cfg.samples; ++s) {
    const Subset x = m ? sample_fixed(*e, *m, rng) : sample(*e, rng);
    t.rows.push_back({s, x.size(), std::to_string(to_mask(x))});
  }
  emit(cfg, t);
  return 0;
}

int cmd_oracle(const Config& cfg) {
  const Nnp e = !cfg.nnp.empty() ? load_nnp(cfg) : random_nnp(cfg.n, cfg.p, cfg.seed);
  const SubsetDistribution exact = brute_force_distribution(e, cfg.m);
  Table t{{"subset_mask", "probability"}, {}};
  std::vector<double> empirical;
  if (cfg.samples > 1) {
    const auto sampler = [&](RngState& rng) { return cfg.m ? sample_fixed(e, *cfg.m, rng) : sample(e, rng); };
    const EmpiricalCheck chk = empirical_check(sampler, exact, cfg.samples, cfg.seed);
    std::cerr << "tv " << format_double(chk.tv) << "\n"
              << "size tv " << format_double(chk.size_tv) << "\n";
  }
  for (std::size_t i = 0; i < exact.masks().size(); ++i)
    t.rows.push_back({std::to_string(exact.masks()[i]), exact.probs()[i]});
  emit(cfg, t);
  return 0;
}

void add_points(CLI::App* c, Config& cfg) {
  c->add_option("--points", cfg.points, "CSV file, one point per row");
  c->add_option("--gen", cfg.gen, "point generator when no file is given")
      ->check(CLI::IsMember({"uniform", "grid"}));
  c->add_option("--n", cfg.n, "number of generated points");
  c->add_option("--seed", cfg.seed, "generator and sampler seed");
}

void add_kernel(CLI::App* c, Config& cfg) {
  c->add_option("--kernel", cfg.kernel, "catalog kernel name");
  c->add_option("--coeffs", cfg.coeffs, "Taylor coefficients f0,f1,... of a custom kernel")->delimiter(',');
  c->add_option("--truncation", cfg.truncation, "Taylor truncation of catalog kernels");
}

void add_target(CLI::App* c, Config& cfg) {
  c->add_option("--m", cfg.m, "fixed sample size");
  c->add_flag("--vary", cfg.vary, "varying-size scaling alpha eps^-p L(eps)");
  c->add_option("--p", cfg.p, "scaling exponent");
  c->add_option("--alpha", cfg.alpha, "scaling multiplier");
}

void add_output(CLI::App* c, Config& cfg) {
  c->add_option("--out", cfg.out, "output file (default stdout)");
  c->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flat limits of determinantal point processes"};
  app.require_subcommand(1);
  Config cfg;
  auto* dim = app.add_option("--dim", cfg.dim, "ambient dimension")->check(CLI::PositiveNumber);

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Config&);
  };
  const std::vector<Command> commands{
      {"limit", "flat-limit ensemble as JSON", cmd_limit},
      {"cond-density", "density of one more point given Y, on a grid", cmd_cond_density},
      {"inclusion", "inclusion probabilities per point", cmd_inclusion},
      {"size-dist", "law of the sample size", cmd_size_dist},
      {"converge", "distance to the flat limit per eps", cmd_converge},
      {"sample", "exact samples", cmd_sample},
      {"oracle", "exhaustive law, optionally checked against the sampler", cmd_oracle},
  };
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--dim", cfg.dim, "ambient dimension")->check(CLI::PositiveNumber);
    add_points(sub, cfg);
    add_kernel(sub, cfg);
    add_target(sub, cfg);
    add_output(sub, cfg);
    sub->add_option("--eps", cfg.eps, "comma-separated eps values")->delimiter(',');
    sub->add_flag("--limit", cfg.limit, "add the flat-limit column");
    sub->add_option("--Y", cfg.y, "conditioning set: coordinates (cond-density) or indices (converge)")
        ->delimiter(',');
    sub->add_option("--grid", cfg.grid, "grid size for cond-density");
    sub->add_option("--nnp", cfg.nnp, "ensemble JSON written by limit");
    sub->add_option("--samples", cfg.samples, "number of draws");
    sub->add_option("--mode", cfg.mode, "converge mode")
        ->check(CLI::IsMember({"full-law", "conditional", "size-law", "inclusion"}));
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  cfg.dim_given = dim->count() > 0;
  for (CLI::App* sub : app.get_subcommands())
    if (sub->get_option("--dim")->count() > 0) cfg.dim_given = true;

  try {
    for (const auto& c : commands)
      if (cfg.command == c.name) return c.run(cfg);
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
