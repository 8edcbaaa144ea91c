#include "flatdpp/diagnostics.hpp"

#include "flatdpp/enumeration.hpp"
#include "flatdpp/precise.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace flatdpp {

namespace {

std::vector<double> normalized(std::span<const double> logw) {
  std::vector<double> out;
  enumeration::normalize_log_weights(logw, out);
  return out;
}

std::vector<double> conditional_from_distribution(const SubsetDistribution& d, const Subset& y) {
  const Mask ym = to_mask(y);
  std::vector<double> out(static_cast<std::size_t>(d.ground_size()), 0.0);
  double total = 0.0;
  for (int c = 0; c < d.ground_size(); ++c) {
    if ((ym >> c) & 1U) continue;
    out[static_cast<std::size_t>(c)] = d.probability(ym | (Mask{1} << c));
    total += out[static_cast<std::size_t>(c)];
  }
  if (!(total > 0.0)) throw Error("conditioning set has probability zero under this law");
  for (double& v : out) v /= total;
  return out;
}

}  // namespace

SubsetDistribution brute_force_distribution(const Nnp& e, std::optional<int> m, Execution exec) {
  const int n = static_cast<int>(e.n());
  if (m && (*m < e.p() || *m > e.p() + e.q())) {
    throw Error("fixed size " + std::to_string(*m) + " outside [p, p+q] = [" + std::to_string(e.p()) +
                ", " + std::to_string(e.p() + e.q()) + "]");
  }
  std::vector<Mask> masks = m ? enumeration::fixed_size_masks(n, *m) : enumeration::all_masks(n);
  const auto logw = enumeration::evaluate(masks, [&e](Mask x) { return log_unnorm_prob(e, x); }, exec);
  double lz = 0.0;
  SubsetDistribution dist = SubsetDistribution::from_log_weights(n, std::move(masks), logw, &lz);
  double expected = log_normalizer(e);
  if (m) {
    const std::vector<double> lam(e.lambda().data(), e.lambda().data() + e.q());
    expected = log_elementary_symmetric_all(lam)[static_cast<std::size_t>(*m - e.p())] + e.log_det_vtv();
  }
  if (std::abs(std::expm1(lz - expected)) > 1e-8) {
    throw Error("enumerated normalizer disagrees with the spectral one (log " + std::to_string(lz) +
                " vs " + std::to_string(expected) + ")");
  }
  return dist;
}

double tv_distance(const SubsetDistribution& a, const SubsetDistribution& b) {
  if (a.ground_size() != b.ground_size()) throw Error("distributions live on different ground sets");
  double out = 0.0;
  std::size_t i = 0, j = 0;
  const auto& ma = a.masks();
  const auto& mb = b.masks();
  while (i < ma.size() || j < mb.size()) {
    if (j == mb.size() || (i < ma.size() && ma[i] < mb[j])) {
      out += a.probs()[i++];
    } else if (i == ma.size() || mb[j] < ma[i]) {
      out += b.probs()[j++];
    } else {
      out += std::abs(a.probs()[i++] - b.probs()[j++]);
    }
  }
  return out;
}

double tv_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("probability vectors differ in length");
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) out += std::abs(a[i] - b[i]);
  return out;
}

SetLogWeight kernel_set_weight(const StationaryKernel& kernel, double eps, int max_size) {
  if (!(eps > 0.0)) throw Error("eps must be positive");
  return {[kernel, eps](const PointSet& ps) {
            auto a = kernel_matrix_precise(kernel, ps, eps);
            const SignedLog d = log_abs_det_inplace(a, static_cast<int>(ps.size()));
            if (d.sign < 0) throw Error("negative kernel minor: kernel is not positive definite here");
            return d.sign == 0 ? kNegInf : d.log_abs;
          },
          digits_for_flat_minors(eps, max_size)};
}

SetLogWeight limit_set_weight(const LimitRecipe& recipe) {
  return {[recipe](const PointSet& ps) {
            const auto [l, v] = recipe.build(ps);
            const SignedLog d = bordered_log_det(l, v);
            const int folded = v.cols() % 2 == 0 ? d.sign : -d.sign;
            return folded > 0 ? d.log_abs : kNegInf;
          },
          0};
}

std::vector<double> conditional_density(const SetLogWeight& weight, const RowMatrix& y,
                                        const RowMatrix& grid, Execution exec) {
  if (y.rows() > 0 && y.cols() != grid.cols()) throw Error("conditioning points and grid differ in dimension");
  std::vector<Mask> rows(static_cast<std::size_t>(grid.rows()));
  std::iota(rows.begin(), rows.end(), Mask{0});
  auto eval_row = [&](Mask r) {
    const RowMatrix g = grid.row(static_cast<Index>(r));
    for (Index i = 0; i < y.rows(); ++i)
      if ((y.row(i) - g).norm() <= PointSet::kDistinctTolerance) return kNegInf;
    if (y.rows() == 0) return weight.eval(PointSet(g));
    return weight.eval(PointSet(y).append(g));
  };
  std::vector<double> logw;
  if (weight.digits > 0) {
    PrecisionScope scope(weight.digits);
    logw = enumeration::evaluate(rows, eval_row, exec);
  } else {
    logw = enumeration::evaluate(rows, eval_row, exec);
  }
  return normalized(logw);
}

std::vector<double> conditional_density(const Nnp& e, const Subset& y, const Subset& candidates) {
  const Mask ym = to_mask(y);
  std::vector<double> logw;
  logw.reserve(candidates.size());
  for (int c : candidates) {
    if (c < 0 || c >= e.n()) throw Error("candidate index out of range");
    if ((ym >> c) & 1U) {
      logw.push_back(kNegInf);
      continue;
    }
    logw.push_back(log_unnorm_prob(e, ym | (Mask{1} << c)));
  }
  return normalized(logw);
}

std::vector<double> inclusion_probabilities(const Nnp& e, std::optional<int> m) {
  if (!m) {
    const Vector diag = marginal_kernel(e).diagonal();
    return std::vector<double>(diag.data(), diag.data() + diag.size());
  }
  return brute_force_distribution(e, m).inclusion();
}

ConvergenceCurve convergence_curve(const PointSet& ps, const StationaryKernel& kernel,
                                   const LimitTarget& target, std::span<const double> epsilons,
                                   CurveMode mode, const Subset& y, Execution exec) {
  const int n = static_cast<int>(ps.size());
  const FlatLimitResult lim = target.m ? fixed_size_limit(ps, kernel, *target.m)
                                       : varying_size_limit(ps, kernel, target.p, target.alpha);
  const SubsetDistribution limit_law =
      target.m ? brute_force_distribution(lim.process, target.m, exec)
               : brute_force_distribution(lim.process, std::nullopt, exec);
  Subset cond = y;
  if (mode == CurveMode::conditional && cond.empty()) {
    const int k = target.m ? *target.m - 1 : 1;
    for (int i = 0; i < k; ++i) cond.push_back(i);
  }
  ConvergenceCurve curve;
  curve.target = lim.regime_label();
  for (double eps : epsilons) {
    const KernelEnsemble ens = target.m ? KernelEnsemble(ps, kernel, eps, 1.0, 0, *target.m)
                                        : KernelEnsemble(ps, kernel, eps, target.alpha, target.p, n);
    const SubsetDistribution law = ens.distribution(target.m, exec);
    double value = 0.0;
    switch (mode) {
      case CurveMode::full_law:
        value = tv_distance(law, limit_law);
        break;
      case CurveMode::size_law:
        value = tv_distance(law.size_marginal(), limit_law.size_marginal());
        break;
      case CurveMode::inclusion: {
        const auto a = law.inclusion();
        const auto b = limit_law.inclusion();
        for (std::size_t i = 0; i < a.size(); ++i) value = std::max(value, std::abs(a[i] - b[i]));
        break;
      }
      case CurveMode::conditional:
        value = tv_distance(conditional_from_distribution(law, cond),
                            conditional_from_distribution(limit_law, cond));
        break;
    }
    curve.epsilons.push_back(eps);
    curve.values.push_back(value);
  }
  return curve;
}

EmpiricalCheck empirical_check(const std::function<Subset(RngState&)>& sampler,
                               const SubsetDistribution& exact, int nsamples, std::uint64_t seed) {
  if (nsamples < 1) throw Error("need at least one sample");
  RngState rng(seed);
  std::map<Mask, long> counts;
  for (int s = 0; s < nsamples; ++s) ++counts[to_mask(sampler(rng))];
  const int n = exact.ground_size();
  EmpiricalCheck out;
  out.per_size_tv.assign(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> emp_size(static_cast<std::size_t>(n) + 1, 0.0);
  const double inv = 1.0 / nsamples;
  for (std::size_t i = 0; i < exact.masks().size(); ++i) {
    const Mask x = exact.masks()[i];
    auto it = counts.find(x);
    const double emp = it == counts.end() ? 0.0 : static_cast<double>(it->second) * inv;
    out.per_size_tv[static_cast<std::size_t>(subset_size(x))] += std::abs(emp - exact.probs()[i]);
  }
  for (const auto& [x, c] : counts) {
    if (n < 64 && (x >> n) != 0) throw Error("sampler returned an index outside the ground set");
    emp_size[static_cast<std::size_t>(subset_size(x))] += static_cast<double>(c) * inv;
    if (!std::binary_search(exact.masks().begin(), exact.masks().end(), x)) {
      out.per_size_tv[static_cast<std::size_t>(subset_size(x))] += static_cast<double>(c) * inv;
    }
  }
  out.tv = std::accumulate(out.per_size_tv.begin(), out.per_size_tv.end(), 0.0);
  out.size_tv = tv_distance(emp_size, exact.size_marginal());
  return out;
}

Nnp random_nnp(int n, int p, std::uint64_t seed) {
  if (n < 1 || p < 0 || p > n) throw Error("random ensemble needs 0 <= p <= n, n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&](Index r, Index c, double scale) {
    Matrix m(r, c);
    for (Index j = 0; j < c; ++j)
      for (Index i = 0; i < r; ++i) m(i, j) = scale * normal(rng);
    return m;
  };
  const Matrix v = draw(n, p, 1.0);
  const Matrix a = draw(n, n, 1.0 / std::sqrt(static_cast<double>(n)));
  const Matrix b = draw(n, p, 1.0);
  Matrix l = a * a.transpose() + b * v.transpose() + v * b.transpose();
  return make_nnp(0.5 * (l + l.transpose()), v);
}

}  // namespace flatdpp
