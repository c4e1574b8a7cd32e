#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uqseg/core.hpp"

namespace uqseg {

/// Regressors available to the Dice models. Declaration order is the fixed
/// design-matrix column order (after the intercept).
enum class Predictor { X1, X2, X0, C1, C2, C3 };

std::string_view to_string(Predictor p);

class ModelSpec {
 public:
  /// Sorts predictors into column order. Throws InvalidSpec on an empty set,
  /// duplicates, or X0 combined with X1/X2.
  static ModelSpec create(std::vector<Predictor> predictors, bool include_intercept = true);

  std::span<const Predictor> predictors() const noexcept { return predictors_; }
  bool include_intercept() const noexcept { return include_intercept_; }
  bool uses(Predictor p) const;
  /// Column names: "intercept" (if present) then predictor names.
  std::vector<std::string> terms() const;
  /// e.g. "X1+X2".
  std::string name() const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;

 private:
  ModelSpec(std::vector<Predictor> p, bool intercept) : predictors_(std::move(p)), include_intercept_(intercept) {}
  std::vector<Predictor> predictors_;
  bool include_intercept_ = true;
};

/// One image's inputs to the Dice models.
struct DiceRow {
  std::string image_id;
  ClassLabel label = ClassLabel::Melanoma;
  double x0 = 0;
  std::optional<double> x1;
  std::optional<double> x2;
  double dice = 0;
};

/// Pivots below this fraction of the largest one count as zero in the rank.
inline constexpr double kRankTolerance = 1e-10;

struct RegressionFit {
  ModelSpec spec = ModelSpec::create({Predictor::X0});
  std::vector<double> coefficients;  // aligned with spec.terms()
  double rmse = 0;
  std::size_t n_used = 0;
  std::size_t n_dropped = 0;
  std::size_t rank = 0;
  bool rank_deficient = false;
  std::vector<std::string> rows_used;

  std::optional<double> coefficient(std::string_view term) const;
};

/// Ordinary least squares via complete orthogonal decomposition. A
/// rank-deficient design yields the minimum-norm solution with
/// rank_deficient set. Rows lacking a required predictor are dropped.
/// Throws InsufficientData unless n_used > number of coefficients.
RegressionFit fit(std::span<const DiceRow> rows, const ModelSpec& spec);

/// Predictor values for one evaluation; class dummies come from `label`.
struct PredictorValues {
  std::optional<double> x0, x1, x2;
  std::optional<ClassLabel> label;
};

/// Raw linear model output. Throws MissingPredictor.
double predict_dice(const RegressionFit& fit, const PredictorValues& row);
/// predict_dice clamped to [0,1] for reporting.
double predict_dice_clamped(const RegressionFit& fit, const PredictorValues& row);

/// Identifiable differences phi_i - phi_j for fits containing the class dummies.
std::vector<std::pair<std::string, double>> dummy_contrasts(const RegressionFit& fit);

struct SuiteEntry {
  std::optional<ClassLabel> label;  // nullopt for the pooled categorical fit
  ModelSpec spec;
  std::optional<RegressionFit> result;
  std::string error;  // set when result is empty
};

/// Per class: X1+X2, X1, X2, X0. Then pooled X1+X2+C1+C2+C3.
/// Cells failing with InsufficientData are reported in `error`.
std::vector<SuiteEntry> fit_model_suite(std::span<const DiceRow> rows);

}  // namespace uqseg
