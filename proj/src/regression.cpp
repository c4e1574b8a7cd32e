#include "uqseg/regression.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <spdlog/spdlog.h>

namespace uqseg {
namespace {

std::optional<double> predictor_value(Predictor p, const PredictorValues& v) {
  switch (p) {
    case Predictor::X0: return v.x0;
    case Predictor::X1: return v.x1;
    case Predictor::X2: return v.x2;
    case Predictor::C1:
    case Predictor::C2:
    case Predictor::C3: {
      if (!v.label) return std::nullopt;
      const auto d = dummies(*v.label);
      return p == Predictor::C1 ? d.c1 : p == Predictor::C2 ? d.c2 : d.c3;
    }
  }
  return std::nullopt;
}

PredictorValues values_of(const DiceRow& row) { return {row.x0, row.x1, row.x2, row.label}; }

}  // namespace

std::string_view to_string(Predictor p) {
  switch (p) {
    case Predictor::X1: return "X1";
    case Predictor::X2: return "X2";
    case Predictor::X0: return "X0";
    case Predictor::C1: return "C1";
    case Predictor::C2: return "C2";
    case Predictor::C3: return "C3";
  }
  return "?";
}

ModelSpec ModelSpec::create(std::vector<Predictor> predictors, bool include_intercept) {
  if (predictors.empty()) throw Error(ErrorCode::InvalidSpec, "model needs at least one predictor");
  std::sort(predictors.begin(), predictors.end());
  if (std::adjacent_find(predictors.begin(), predictors.end()) != predictors.end()) {
    throw Error(ErrorCode::InvalidSpec, "duplicate predictor");
  }
  auto has = [&](Predictor p) { return std::find(predictors.begin(), predictors.end(), p) != predictors.end(); };
  if (has(Predictor::X0) && (has(Predictor::X1) || has(Predictor::X2))) {
    throw Error(ErrorCode::InvalidSpec, "X0 cannot be combined with X1/X2");
  }
  return ModelSpec(std::move(predictors), include_intercept);
}

bool ModelSpec::uses(Predictor p) const {
  return std::find(predictors_.begin(), predictors_.end(), p) != predictors_.end();
}

std::vector<std::string> ModelSpec::terms() const {
  std::vector<std::string> out;
  if (include_intercept_) out.emplace_back("intercept");
  for (auto p : predictors_) out.emplace_back(to_string(p));
  return out;
}

std::string ModelSpec::name() const {
  std::string out;
  for (auto p : predictors_) {
    if (!out.empty()) out += '+';
    out += to_string(p);
  }
  if (!include_intercept_) out += " (no intercept)";
  return out;
}

std::optional<double> RegressionFit::coefficient(std::string_view term) const {
  const auto names = spec.terms();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == term) return coefficients[i];
  }
  return std::nullopt;
}

RegressionFit fit(std::span<const DiceRow> rows, const ModelSpec& spec) {
  std::vector<const DiceRow*> used;
  for (const auto& row : rows) {
    const auto values = values_of(row);
    const bool complete = std::all_of(spec.predictors().begin(), spec.predictors().end(),
                                      [&](Predictor p) { return predictor_value(p, values).has_value(); });
    if (complete) used.push_back(&row);
  }
  const std::size_t n_terms = spec.terms().size();
  const std::size_t n = used.size();
  if (n <= n_terms) {
    throw Error(ErrorCode::InsufficientData, "model " + spec.name() + " has " + std::to_string(n) +
                                                 " usable rows for " + std::to_string(n_terms) + " coefficients");
  }
  if (n < rows.size()) {
    spdlog::warn("fit {}: dropped {} rows with undefined predictors", spec.name(), rows.size() - n);
  }

  Eigen::MatrixXd design(n, n_terms);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto values = values_of(*used[i]);
    Eigen::Index col = 0;
    if (spec.include_intercept()) design(i, col++) = 1.0;
    for (auto p : spec.predictors()) design(i, col++) = *predictor_value(p, values);
    y(i) = used[i]->dice;
  }

  // Eigen's default rank threshold misses exactly dependent dummy columns at
  // a few hundred rows.
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design.rows(), design.cols());
  cod.setThreshold(kRankTolerance);
  cod.compute(design);
  const Eigen::VectorXd beta = cod.solve(y);
  const Eigen::VectorXd residual = y - design * beta;

  RegressionFit out;
  out.spec = spec;
  out.coefficients.assign(beta.data(), beta.data() + beta.size());
  out.n_used = n;
  out.n_dropped = rows.size() - n;
  out.rank = static_cast<std::size_t>(cod.rank());
  out.rank_deficient = out.rank < n_terms;
  out.rmse = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  out.rows_used.reserve(n);
  for (const auto* row : used) out.rows_used.push_back(row->image_id);
  if (out.rank_deficient) {
    spdlog::debug("fit {}: design rank {} < {} terms, minimum-norm solution returned", spec.name(), out.rank, n_terms);
  }
  return out;
}

double predict_dice(const RegressionFit& fit, const PredictorValues& row) {
  double y = 0.0;
  std::size_t k = 0;
  if (fit.spec.include_intercept()) y += fit.coefficients[k++];
  for (auto p : fit.spec.predictors()) {
    const auto v = predictor_value(p, row);
    if (!v) throw Error(ErrorCode::MissingPredictor, std::string(to_string(p)));
    y += fit.coefficients[k++] * *v;
  }
  return y;
}

double predict_dice_clamped(const RegressionFit& fit, const PredictorValues& row) {
  return std::clamp(predict_dice(fit, row), 0.0, 1.0);
}

std::vector<std::pair<std::string, double>> dummy_contrasts(const RegressionFit& fit) {
  std::vector<std::pair<std::string, double>> out;
  const Predictor dummy_terms[] = {Predictor::C1, Predictor::C2, Predictor::C3};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      const auto a = fit.coefficient(to_string(dummy_terms[i]));
      const auto b = fit.coefficient(to_string(dummy_terms[j]));
      if (a && b) {
        out.emplace_back(std::string(to_string(dummy_terms[i])) + "-" + std::string(to_string(dummy_terms[j])),
                         *a - *b);
      }
    }
  }
  return out;
}

std::vector<SuiteEntry> fit_model_suite(std::span<const DiceRow> rows) {
  std::vector<SuiteEntry> suite;
  auto run = [&](std::optional<ClassLabel> label, ModelSpec spec, std::span<const DiceRow> data) {
    SuiteEntry entry{label, std::move(spec), std::nullopt, {}};
    try {
      entry.result = fit(data, entry.spec);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::InsufficientData) throw;
      entry.error = e.what();
      spdlog::warn("{}", e.what());
    }
    suite.push_back(std::move(entry));
  };
  for (auto label : kAllClasses) {
    std::vector<DiceRow> subset;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(subset),
                 [&](const DiceRow& r) { return r.label == label; });
    run(label, ModelSpec::create({Predictor::X1, Predictor::X2}), subset);
    run(label, ModelSpec::create({Predictor::X1}), subset);
    run(label, ModelSpec::create({Predictor::X2}), subset);
    run(label, ModelSpec::create({Predictor::X0}), subset);
  }
  run(std::nullopt,
      ModelSpec::create({Predictor::X1, Predictor::X2, Predictor::C1, Predictor::C2, Predictor::C3}), rows);
  return suite;
}

}  // namespace uqseg
