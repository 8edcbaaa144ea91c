// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "flatdpp/diagnostics.hpp"
#include "flatdpp/enumeration.hpp"
#include "flatdpp/flatlimit.hpp"
#include "flatdpp/polybasis.hpp"
#include "flatdpp/precise.hpp"
#include "flatdpp/sampling.hpp"
#include "flatdpp/wronskian.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

using namespace flatdpp;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

void all_subsets_upto(int n, int k, std::vector<Mask>& out) {
  for (int s = 0; s <= k; ++s) {
    auto m = enumeration::fixed_size_masks(n, s);
    out.insert(out.end(), m.begin(), m.end());
  }
}

std::vector<Nnp> criterion_ensembles() {
  std::vector<Nnp> out;
  for (int i = 0; i < 20; ++i) out.push_back(random_nnp(4 + i % 7, i % 4, 1000 + static_cast<std::uint64_t>(i)));
  return out;
}

Outcome c1_normalization() {
  double worst = 0.0;
  for (const Nnp& e : criterion_ensembles()) {
    double sum = 0.0;
    for (Mask x : enumeration::all_masks(static_cast<int>(e.n()))) {
      const SignedLog d = bordered_log_det(e, from_mask(x));
      if (d.sign != 0) sum += std::exp(d.log_abs);
    }
    worst = std::max(worst, rel_err(sum, std::exp(log_normalizer(e))));
  }
  return {worst <= 1e-8, "max rel err " + fmt(worst)};
}

Outcome c2_marginal_kernel() {
  double worst = 0.0;
  for (const Nnp& e : criterion_ensembles()) {
    const int n = static_cast<int>(e.n());
    const SubsetDistribution law = brute_force_distribution(e);
    const Matrix k = marginal_kernel(e);
    std::vector<Mask> sets;
    all_subsets_upto(n, std::min(3, n), sets);
    for (Mask a : sets) {
      const Subset idx = from_mask(a);
      Matrix ka(static_cast<Index>(idx.size()), static_cast<Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) ka(static_cast<Index>(i), static_cast<Index>(j)) = k(idx[i], idx[j]);
      const double det = idx.empty() ? 1.0 : ka.determinant();
      worst = std::max(worst, std::abs(det - law.marginal(a)));
    }
  }
  return {worst <= 1e-8, "max abs err " + fmt(worst)};
}

Outcome c3_closed_forms() {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_exp = 0.0;
  double worst_smooth = 0.0;
  const StationaryKernel gauss = builtin_kernel("gaussian");
  for (int t = 0; t < 100; ++t) {
    const int m = 2 + t % 5;
    std::vector<double> xs(8);
    for (double& x : xs) x = unif(rng);
    std::sort(xs.begin(), xs.end());
    const PointSet ground = PointSet::on_line(xs);
    std::vector<int> idx(8);
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    Subset x(idx.begin(), idx.begin() + m);
    std::sort(x.begin(), x.end());

    const PointSet sub = ground.select(x);
    const Nnp exp_limit = make_nnp(-distance_power_matrix(sub, 1), vandermonde(sub, 0));
    Subset all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 0);
    double closed = std::pow(2.0, m - 1);
    for (int i = 0; i + 1 < m; ++i) closed *= xs[static_cast<std::size_t>(x[static_cast<std::size_t>(i + 1)])] - xs[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
    worst_exp = std::max(worst_exp, rel_err(std::exp(log_unnorm_prob(exp_limit, all)), closed));

    const FlatLimitResult lim = fixed_size_limit(ground, gauss, m);
    const SubsetDistribution law = brute_force_distribution(lim.process, m);
    double total = 0.0;
    double mine = 0.0;
    for (Mask y : enumeration::fixed_size_masks(8, m)) {
      double w = 1.0;
      const Subset s = from_mask(y);
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          const double g = xs[static_cast<std::size_t>(s[i])] - xs[static_cast<std::size_t>(s[j])];
          w *= g * g;
        }
      total += w;
      if (y == to_mask(x)) mine = w;
    }
    worst_smooth = std::max(worst_smooth, rel_err(law.probability(x), mine / total));
  }
  return {worst_exp <= 1e-10 && worst_smooth <= 1e-10,
          "exp-limit det rel err " + fmt(worst_exp) + ", squared-Vandermonde law rel err " + fmt(worst_smooth)};
}

Outcome c4_fixed_size_convergence() {
  const PointSet ps = generate_points(PointGenerator::uniform, 8, 1, 4);
  const std::vector<double> eps = {4, 1.5, 0.5, 0.1, 0.01, 1e-3};
  bool ok = true;
  double worst_final = 0.0;
  std::string bad;
  for (const std::string& name : builtin_kernel_names()) {
    for (int m : {3, 5}) {
      const ConvergenceCurve c =
          convergence_curve(ps, builtin_kernel(name), LimitTarget::fixed(m), eps, CurveMode::full_law);
      bool mono = true;
      for (std::size_t i = 1; i < c.values.size(); ++i) mono = mono && c.values[i] <= c.values[i - 1];
      worst_final = std::max(worst_final, c.values.back());
      if (!mono || c.values.back() > 2e-2) {
        ok = false;
        bad += " " + name + "/m=" + std::to_string(m) + "[";
        for (double v : c.values) bad += fmt(v) + " ";
        bad += "]";
      }
    }
  }
  return {ok, "max TV at eps=1e-3 " + fmt(worst_final) + bad};
}

Outcome c5_universality() {
  const PointSet ps = generate_points(PointGenerator::uniform, 8, 1, 4);
  double worst = 0.0;
  for (int m = 1; m <= 7; ++m) {
    const auto a = brute_force_distribution(fixed_size_limit(ps, builtin_kernel("matern32"), m).process, m);
    const auto b = brute_force_distribution(fixed_size_limit(ps, builtin_kernel("sin-exp"), m).process, m);
    for (Mask x : enumeration::fixed_size_masks(8, m)) worst = std::max(worst, std::abs(a.probability(x) - b.probability(x)));
  }
  return {worst <= 1e-8, "max abs prob diff " + fmt(worst)};
}

Outcome c6_non_magic() {
  const PointSet ps = generate_points(PointGenerator::uniform, 7, 2, 6);
  const StationaryKernel gauss = builtin_kernel("gaussian");
  const FlatLimitResult lim = fixed_size_limit(ps, gauss, 4);
  const SubsetDistribution target = brute_force_distribution(lim.process, 4);
  const SubsetDistribution law = KernelEnsemble(ps, gauss, 1e-3, 1.0, 0, 4).distribution(4);
  const double tv = tv_distance(law, target);
  return {lim.regime == Regime::non_magic_wronskian && tv <= 2e-2,
          lim.regime_label() + ", TV " + fmt(tv)};
}

Outcome c7_teaser() {
  RowMatrix c(7, 2);
  for (int i = 0; i < 6; ++i) {
    const double t = 0.2 * i;
    c(i, 0) = t;
    c(i, 1) = t * t;
  }
  c(6, 0) = 0.5;
  c(6, 1) = 0.6;
  const PointSet ps(c);
  const Subset parabola = {0, 1, 2, 3, 4, 5};
  const Subset alternate = {1, 2, 3, 4, 5, 6};
  const auto g = brute_force_distribution(fixed_size_limit(ps, builtin_kernel("gaussian"), 6).process, 6);
  const auto e = brute_force_distribution(fixed_size_limit(ps, builtin_kernel("exponential"), 6).process, 6);
  const bool ok = g.probability(parabola) <= 1e-12 && g.probability(alternate) > 0.0 &&
                  e.probability(parabola) > e.probability(alternate);
  return {ok, "gaussian P(parabola)=" + fmt(g.probability(parabola)) + " P(alt)=" + fmt(g.probability(alternate)) +
                  "; exponential P(parabola)=" + fmt(e.probability(parabola)) + " P(alt)=" + fmt(e.probability(alternate))};
}

Outcome c8_varying_size() {
  const PointSet ps = generate_points(PointGenerator::uniform, 6, 1, 8);
  const auto expo = builtin_kernel("exponential");
  const auto exact = KernelEnsemble(ps, expo, 1e-3, 1.0, 1).distribution().size_marginal();
  const auto limit = limit_size_distribution(ps, expo, 1, 1.0);
  const double tv_size = tv_distance(exact, limit);

  const auto gauss = builtin_kernel("gaussian");
  const SubsetDistribution law = KernelEnsemble(ps, gauss, 1e-3, 1.0, 3).distribution();
  const double mass2 = law.size_marginal()[2];
  std::vector<Mask> pairs = enumeration::fixed_size_masks(6, 2);
  std::vector<double> w;
  for (Mask x : pairs) {
    const Subset s = from_mask(x);
    const double g = ps.coords()(s[0], 0) - ps.coords()(s[1], 0);
    w.push_back(std::log(g * g));
  }
  const auto target = SubsetDistribution::from_log_weights(6, pairs, w);
  const double tv_law = tv_distance(law, target);
  return {tv_size <= 0.05 && mass2 >= 0.99 && tv_law <= 2e-2,
          "exponential size-law TV " + fmt(tv_size) + "; gaussian P(|X|=2)=" + fmt(mass2) + ", law TV " + fmt(tv_law)};
}

Outcome c9_samplers() {
  const Nnp e = random_nnp(6, 2, 99);
  const SubsetDistribution exact = brute_force_distribution(e);
  bool sizes_ok = true;
  const auto varying = empirical_check(
      [&](RngState& rng) {
        Subset s = sample(e, rng);
        sizes_ok = sizes_ok && static_cast<Index>(s.size()) >= e.p();
        return s;
      },
      exact, 200000, 7);
  const SubsetDistribution exact3 = brute_force_distribution(e, 3);
  const auto fixed = empirical_check([&](RngState& rng) { return sample_fixed(e, 3, rng); }, exact3, 200000, 8);
  return {varying.tv <= 0.02 && fixed.tv <= 0.02 && sizes_ok,
          "varying TV " + fmt(varying.tv) + ", fixed-size TV " + fmt(fixed.tv)};
}

Outcome c10_combinatorics() {
  bool ok = true;
  for (int d = 1; d <= 4; ++d) {
    for (int k = 0; k <= 6; ++k) {
      std::uint64_t hom = 0;
      std::uint64_t all = 0;
      std::vector<int> e(static_cast<std::size_t>(d), 0);
      // odometer over exponents in [0, k]^d
      while (true) {
        const int deg = std::accumulate(e.begin(), e.end(), 0);
        if (deg == k) ++hom;
        if (deg <= k) ++all;
        int pos = 0;
        while (pos < d && ++e[static_cast<std::size_t>(pos)] > k) e[static_cast<std::size_t>(pos++)] = 0;
        if (pos == d) break;
      }
      ok = ok && hom == count_homogeneous(k, d) && all == count_poly(k, d) &&
           MonomialBasis(d, k).size() == static_cast<Index>(all);
    }
  }
  const auto magic = magic_numbers(2, 21);
  ok = ok && magic == std::vector<std::uint64_t>{1, 3, 6, 10, 15, 21};
  return {ok, "H, P for k<=6, d<=4; magic(d=2, 21) has " + std::to_string(magic.size()) + " entries"};
}

Outcome c11_wronskian() {
  double worst_closed = 0.0;
  for (const std::string& name : builtin_kernel_names()) {
    const StationaryKernel k = builtin_kernel(name);
    const Matrix w = wronskian_expansion(k.taylor(), 6, 1);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b)
        worst_closed = std::max(worst_closed, std::abs(w(a, b) - wronskian_entry_1d(k.taylor(), a, b)));
  }
  double worst_block = 0.0;
  struct Case {
    const char* kernel;
    int d;
    int k;
  };
  for (const Case& c : {Case{"gaussian", 1, 1}, Case{"gaussian", 1, 3}, Case{"gaussian", 2, 1}, Case{"gaussian", 2, 2},
                        Case{"gaussian", 2, 3}, Case{"gaussian", 3, 2}, Case{"matern52-like", 1, 2}, Case{"matern52-like", 2, 2}}) {
    const Matrix w = wronskian_matrix(builtin_kernel(c.kernel), c.k, c.d);
    const Index lead = static_cast<Index>(count_poly(c.k - 1, c.d));
    const SchurBlock sb = schur_block(w, c.k, c.d);
    const double lhs = w.determinant();
    const double rhs = w.topLeftCorner(lead, lead).determinant() * sb.block.determinant();
    worst_block = std::max(worst_block, rel_err(lhs, rhs));
  }
  return {worst_closed == 0.0 && worst_block <= 1e-8,
          "closed form max diff " + fmt(worst_closed) + ", block-det rel err " + fmt(worst_block)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle normalization", c1_normalization},
      {"2 marginal-kernel equivalence", c2_marginal_kernel},
      {"3 closed forms", c3_closed_forms},
      {"4 fixed-size convergence", c4_fixed_size_convergence},
      {"5 universality of r=2 kernels", c5_universality},
      {"6 multivariate non-magic regime", c6_non_magic},
      {"7 teaser reproduction", c7_teaser},
      {"8 varying-size size law", c8_varying_size},
      {"9 sampler exactness", c9_samplers},
      {"10 combinatorics", c10_combinatorics},
      {"11 wronskian identities", c11_wronskian},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %s: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
