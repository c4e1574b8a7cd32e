#include "uqseg/stats.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>

#include "uqseg/aggregate.hpp"
#include "uqseg/metrics.hpp"
#include "uqseg/parallel.hpp"
#include "uqseg/ranks.hpp"
#include "uqseg/rng.hpp"

namespace uqseg {
namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::LengthMismatch, "spearman: sequences differ in length");
  if (x.size() < 4) throw Error(ErrorCode::TooFewSamples, "spearman needs n >= 4");
  auto constant = [](std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
  };
  if (constant(x) || constant(y)) throw Error(ErrorCode::ConstantInput, "spearman: constant sequence");
}

double pearson(std::span<const double> a, std::span<const double> b) {
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return std::clamp(sab / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

SpearmanResult spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = midranks(x);
  const auto ry = midranks(y);
  SpearmanResult out;
  out.n = x.size();
  out.rho = pearson(rx, ry);
  const double dof = static_cast<double>(out.n - 2);
  const double one_minus = (1.0 - out.rho) * (1.0 + out.rho);
  if (one_minus <= 0.0) {
    out.p_value = 0.0;
  } else {
    const double t = out.rho * std::sqrt(dof / one_minus);
    const boost::math::students_t_distribution<double> dist(dof);
    out.p_value = std::clamp(2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t))), 0.0, 1.0);
  }
  return out;
}

double spearman_exact_p(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const std::size_t n = x.size();
  if (n > 12) throw Error(ErrorCode::InvalidConfig, "exact Spearman permutation test supports n <= 12");

  // Doubled midranks are integers. For a pairing pi, T = sum a_i * b_pi(i)
  // and rho is an increasing affine function of T - n(n+1)^2, with the
  // centre fixed because the rank multisets do not change.
  std::vector<std::int64_t> a(n), b(n);
  {
    const auto rx = midranks(x);
    const auto ry = midranks(y);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = std::llround(2.0 * rx[i]);
      b[i] = std::llround(2.0 * ry[i]);
    }
  }
  const std::int64_t centre = static_cast<std::int64_t>(n * (n + 1) * (n + 1));
  std::int64_t observed = 0;
  for (std::size_t i = 0; i < n; ++i) observed += a[i] * b[i];
  const std::int64_t observed_dev = std::llabs(observed - centre);

  // Largest attainable T pairs both sequences in sorted order.
  std::vector<std::int64_t> sa = a, sb = b;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const auto t_max = static_cast<std::size_t>(std::inner_product(sa.begin(), sa.end(), sb.begin(), std::int64_t{0}));

  // dp over subsets of y positions already paired with x[0..k).
  const std::size_t n_masks = std::size_t{1} << n;
  std::vector<std::vector<std::uint64_t>> layer(n_masks);
  layer[0].assign(t_max + 1, 0);
  layer[0][0] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t mask = 0; mask < n_masks; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != k || layer[mask].empty()) continue;
      const auto& from = layer[mask];
      for (std::size_t j = 0; j < n; ++j) {
        if (mask & (std::size_t{1} << j)) continue;
        auto& to = layer[mask | (std::size_t{1} << j)];
        if (to.empty()) to.assign(t_max + 1, 0);
        const auto step = static_cast<std::size_t>(a[k] * b[j]);
        for (std::size_t t = 0; t + step <= t_max; ++t) {
          if (from[t]) to[t + step] += from[t];
        }
      }
      layer[mask].clear();
      layer[mask].shrink_to_fit();
    }
  }
  const auto& full = layer[n_masks - 1];
  std::uint64_t extreme = 0, total = 0;
  for (std::size_t t = 0; t < full.size(); ++t) {
    if (!full[t]) continue;
    total += full[t];
    if (std::llabs(static_cast<std::int64_t>(t) - centre) >= observed_dev) extreme += full[t];
  }
  return static_cast<double>(extreme) / static_cast<double>(total);
}

std::string_view to_string(BootstrapStatistic s) { return s == BootstrapStatistic::Median ? "median" : "mean"; }

double statistic_of(BootstrapStatistic s, std::span<const double> sample) {
  if (s == BootstrapStatistic::Mean) {
    return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
  }
  return median(std::vector<double>(sample.begin(), sample.end()));
}

BootstrapCI bootstrap_ci(std::span<const double> sample, const BootstrapOptions& options) {
  if (sample.size() < 2) throw Error(ErrorCode::TooFewSamples, "bootstrap needs at least 2 observations");
  if (options.n_sims < 100) throw Error(ErrorCode::InvalidConfig, "bootstrap needs n_sims >= 100");
  if (!(options.level > 0.0 && options.level < 1.0)) throw Error(ErrorCode::InvalidConfig, "level must be in (0,1)");

  const std::size_t n = sample.size();
  std::vector<double> stats(options.n_sims);
  parallel_for(options.n_sims, options.jobs, [&](std::size_t sim) {
    Rng rng(mix_seed(options.seed, sim));
    std::vector<double> draw(n);
    for (auto& v : draw) v = sample[rng.below(n)];
    stats[sim] = statistic_of(options.statistic, draw);
  });
  std::sort(stats.begin(), stats.end());

  const double tail = 50.0 * (1.0 - options.level);
  const double q_lo = percentile_sorted(stats, tail);
  const double q_hi = percentile_sorted(stats, 100.0 - tail);

  BootstrapCI ci;
  ci.point = statistic_of(options.statistic, sample);
  ci.n_sims = options.n_sims;
  ci.seed = options.seed;
  ci.level = options.level;
  if (options.method == BootstrapMethod::Empirical) {
    ci.lower = 2.0 * ci.point - q_hi;
    ci.upper = 2.0 * ci.point - q_lo;
  } else {
    ci.lower = q_lo;
    ci.upper = q_hi;
  }
  return ci;
}

std::vector<CorrelationEntry> correlate_suite(std::span<const DiceRow> rows) {
  std::vector<CorrelationEntry> out;
  for (auto label : kAllClasses) {
    for (auto predictor : {Predictor::X0, Predictor::X1, Predictor::X2}) {
      std::vector<double> xs, ys;
      for (const auto& r : rows) {
        if (r.label != label) continue;
        const std::optional<double> x = predictor == Predictor::X0 ? std::optional(r.x0)
                                        : predictor == Predictor::X1 ? r.x1
                                                                     : r.x2;
        if (!x) continue;
        xs.push_back(*x);
        ys.push_back(r.dice);
      }
      CorrelationEntry entry{label, predictor, std::nullopt, {}};
      try {
        entry.result = spearman(xs, ys);
      } catch (const Error& e) {
        entry.error = e.what();
      }
      out.push_back(std::move(entry));
    }
  }
  return out;
}

}  // namespace uqseg
