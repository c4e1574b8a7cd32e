#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uqseg/regression.hpp"

namespace uqseg {

struct SpearmanResult {
  double rho = 0;
  double p_value = 1;
  std::size_t n = 0;
};

/// Spearman's rho with midranks for ties; two-sided p-value from the
/// t-approximation with n-2 degrees of freedom.
/// Throws LengthMismatch, TooFewSamples (n < 4), ConstantInput.
SpearmanResult spearman(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value of the exact permutation test for Spearman's rho:
/// the fraction of all n! pairings whose |rho| is at least the observed |rho|.
/// Ties use midranks. Supports 4 <= n <= 12.
double spearman_exact_p(std::span<const double> x, std::span<const double> y);

enum class BootstrapStatistic { Median, Mean };
enum class BootstrapMethod {
  Empirical,   // [2*theta - q_hi, 2*theta - q_lo]
  Percentile,  // [q_lo, q_hi]
};

std::string_view to_string(BootstrapStatistic s);

struct BootstrapCI {
  double point = 0;  // statistic on the original sample
  double lower = 0;
  double upper = 0;
  std::size_t n_sims = 5000;
  std::uint64_t seed = 0;
  double level = 0.95;
};

struct BootstrapOptions {
  BootstrapStatistic statistic = BootstrapStatistic::Median;
  std::size_t n_sims = 5000;
  std::uint64_t seed = 0;
  double level = 0.95;
  BootstrapMethod method = BootstrapMethod::Empirical;
  std::size_t jobs = 1;
};

/// Resample i draws from Rng(mix_seed(seed, i)), so the interval does not
/// depend on `jobs`. Throws TooFewSamples (size < 2) and InvalidConfig
/// (n_sims < 100 or level outside (0,1)).
BootstrapCI bootstrap_ci(std::span<const double> sample, const BootstrapOptions& options);

double statistic_of(BootstrapStatistic s, std::span<const double> sample);

struct CorrelationEntry {
  ClassLabel label;
  Predictor predictor;  // X0, X1 or X2 against Dice
  std::optional<SpearmanResult> result;
  std::string error;
};

/// One Spearman test per class and uncertainty predictor. Rows without the
/// predictor are dropped per cell; failing cells carry `error`.
std::vector<CorrelationEntry> correlate_suite(std::span<const DiceRow> rows);

}  // namespace uqseg
