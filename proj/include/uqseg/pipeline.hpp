#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uqseg/aggregate.hpp"
#include "uqseg/metrics.hpp"
#include "uqseg/regression.hpp"
#include "uqseg/render.hpp"
#include "uqseg/roi.hpp"
#include "uqseg/simulate.hpp"
#include "uqseg/stats.hpp"

namespace uqseg {

// File-staged pipeline: simulate -> analyze -> fit / corr / render -> report.
// Every stage reads and writes files in a working directory and produces the
// same bytes for any job count.

inline constexpr const char* kMetricsCsv = "metrics.csv";
inline constexpr const char* kRegionsCsv = "region_uncertainty.csv";
inline constexpr const char* kFitsJson = "fits.json";
inline constexpr const char* kCorrelationsCsv = "correlations.csv";
inline constexpr const char* kBootstrapJson = "bootstrap.json";
inline constexpr const char* kReportMd = "report.md";
inline constexpr const char* kRenderDir = "render";

struct AnalyzeOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  AggregationConfig aggregation;
  Normalization normalization = Normalization::RegionMean;
  bool save_maps = false;
  std::size_t jobs = 1;
};

struct AnalyzeSummary {
  std::size_t images = 0;
  std::size_t failures = 0;
};

/// Writes metrics.csv and region_uncertainty.csv (manifest order). Images that
/// fail to load are logged, counted and left out of both tables.
AnalyzeSummary run_analyze(const AnalyzeOptions& options);

/// Joins metrics.csv and region_uncertainty.csv by image_id (metrics order).
/// Throws MissingUpstream when either file is absent.
std::vector<DiceRow> load_dice_rows(const std::filesystem::path& dir);

/// Keeps the first ceil(fraction * n_c) rows of each class, in input order.
std::vector<DiceRow> select_fit_rows(std::span<const DiceRow> rows, double fraction);

struct FitOptions {
  std::filesystem::path in;
  std::filesystem::path out;
  double fit_fraction = 1.0;
  bool with_correlations = false;
};

struct FitOutcome {
  std::vector<SuiteEntry> suite;
  std::string table;  // coefficient table for stdout
  std::size_t failed_cells = 0;
};

/// Runs the standard model suite and writes fits.json.
FitOutcome run_fit(const FitOptions& options);

std::string format_fit_table(std::span<const SuiteEntry> suite, std::span<const CorrelationEntry> correlations);

struct CorrOptions {
  std::filesystem::path in;
  std::filesystem::path out;
  std::uint64_t seed = 0;
  std::size_t n_sims = 5000;
  BootstrapMethod method = BootstrapMethod::Empirical;
  std::size_t jobs = 1;
};

/// Writes correlations.csv and bootstrap.json (median and mean CIs of each
/// performance metric overall, and of Dice per class).
std::vector<CorrelationEntry> run_corr(const CorrOptions& options);

struct RenderOptions {
  std::filesystem::path manifest;
  std::filesystem::path out;
  AggregationConfig aggregation;
  RenderConfig render;
  std::vector<std::string> ids;  // empty: the first `limit` images
  std::size_t limit = 6;
  std::size_t jobs = 1;
};

/// Writes render/<id>_<panel>.ppm and render/<id>_composite.ppm; returns the
/// rendered ids.
std::vector<std::string> run_render(const RenderOptions& options);

struct ValueSummary {
  double max = 0, min = 0, mean = 0, stddev = 0;  // stddev uses n-1
  std::size_t n = 0;
};

/// Throws EmptyInput.
ValueSummary summarize_values(std::span<const double> values);

struct ReportOptions {
  std::filesystem::path in;
  std::filesystem::path out;
};

/// Stitches the stage outputs into report.md. Throws MissingUpstream naming the
/// command to run first.
std::filesystem::path run_report(const ReportOptions& options);

}  // namespace uqseg
