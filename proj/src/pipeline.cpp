#include "uqseg/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "uqseg/io.hpp"
#include "uqseg/parallel.hpp"

namespace uqseg {
namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string fixed(std::optional<double> v, int digits = 4) { return v ? fixed(*v, digits) : "n/a"; }

std::string general(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void require_upstream(const fs::path& path, std::string_view command) {
  if (!fs::exists(path)) {
    throw Error(ErrorCode::MissingUpstream,
                path.string() + " not found; run `uqseg " + std::string(command) + "` first");
  }
}

ClassLabel class_field(const std::string& text) {
  const auto label = parse_class(text);
  if (!label) throw Error(ErrorCode::UnknownClass, "'" + text + "'");
  return *label;
}

std::uint64_t count_field(const std::string& text) {
  const auto v = parse_optional_real(text);
  if (!v || *v < 0) throw Error(ErrorCode::UnsupportedFormat, "bad count '" + text + "'");
  return static_cast<std::uint64_t>(*v);
}

struct LabelledMetrics {
  ClassLabel label;
  MetricsRecord record;
};

std::vector<LabelledMetrics> load_metrics(const fs::path& dir) {
  const auto path = dir / kMetricsCsv;
  require_upstream(path, "analyze");
  const auto table = read_csv(path);
  const auto c_id = table.column("image_id"), c_class = table.column("class"), c_dice = table.column("dice"),
             c_tpr = table.column("tpr"), c_fpr = table.column("fpr"), c_auc = table.column("auroc"),
             c_tp = table.column("tp"), c_fp = table.column("fp"), c_fn = table.column("fn"), c_tn = table.column("tn");
  std::vector<LabelledMetrics> out;
  for (const auto& row : table.rows) {
    LabelledMetrics m{class_field(row[c_class]), {}};
    m.record.image_id = row[c_id];
    const auto dice_v = parse_optional_real(row[c_dice]);
    if (!dice_v) throw Error(ErrorCode::UnsupportedFormat, "metrics row without dice: " + row[c_id]);
    m.record.dice = *dice_v;
    m.record.tpr = parse_optional_real(row[c_tpr]);
    m.record.fpr = parse_optional_real(row[c_fpr]);
    m.record.auroc = parse_optional_real(row[c_auc]);
    m.record.counts = {count_field(row[c_tp]), count_field(row[c_fp]), count_field(row[c_fn]), count_field(row[c_tn])};
    out.push_back(std::move(m));
  }
  return out;
}

std::string scope_name(std::optional<ClassLabel> label) {
  return label ? std::string(to_string(*label)) : std::string("all");
}

// Greek-letter names used for the coefficients of each model in the tables.
struct ModelNaming {
  std::string family;
  std::vector<std::string> coefficient_names;
};

ModelNaming naming_for(const ModelSpec& spec) {
  if (spec.uses(Predictor::C1)) return {"alpha_phi", {"alpha0", "alpha1", "alpha2", "phi1", "phi2", "phi3"}};
  if (spec.uses(Predictor::X0)) return {"theta", {"theta_a", "theta_b"}};
  if (spec.uses(Predictor::X1) && spec.uses(Predictor::X2)) return {"alpha", {"alpha0", "alpha1", "alpha2"}};
  if (spec.uses(Predictor::X1)) return {"beta", {"beta0", "beta1"}};
  return {"gamma", {"gamma0", "gamma1"}};
}

ordered_json fit_to_json(const SuiteEntry& entry) {
  ordered_json j;
  j["class"] = entry.label ? std::string(to_string(*entry.label)) : std::string("pooled");
  j["model"] = entry.spec.name();
  j["family"] = naming_for(entry.spec).family;
  ordered_json spec;
  spec["predictors"] = ordered_json::array();
  for (auto p : entry.spec.predictors()) spec["predictors"].push_back(std::string(to_string(p)));
  spec["intercept"] = entry.spec.include_intercept();
  j["spec"] = spec;
  if (!entry.result) {
    j["coefficients"] = nullptr;
    j["rmse"] = nullptr;
    j["n_used"] = nullptr;
    j["n_dropped"] = nullptr;
    j["rank_deficient"] = nullptr;
    j["error"] = entry.error;
    return j;
  }
  const auto& fit = *entry.result;
  ordered_json coefs = ordered_json::object();
  const auto terms = fit.spec.terms();
  for (std::size_t i = 0; i < terms.size(); ++i) coefs[terms[i]] = fit.coefficients[i];
  j["coefficients"] = coefs;
  j["rmse"] = fit.rmse;
  j["n_used"] = fit.n_used;
  j["n_dropped"] = fit.n_dropped;
  j["rank"] = fit.rank;
  j["rank_deficient"] = fit.rank_deficient;
  const auto contrasts = dummy_contrasts(fit);
  if (!contrasts.empty()) {
    ordered_json c = ordered_json::object();
    for (const auto& [name, value] : contrasts) c[name] = value;
    j["contrasts"] = c;
  }
  j["rows_used"] = fit.rows_used;
  j["error"] = nullptr;
  return j;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : std::string(width - s.size(), ' ') + s;
}

std::string pad_right(const std::string& s, std::size_t width) {
  return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

}  // namespace

AnalyzeSummary run_analyze(const AnalyzeOptions& options) {
  options.aggregation.validate();
  const auto manifest = read_manifest(options.manifest);
  struct Result {
    std::optional<MetricsRecord> metrics;
    std::optional<RegionUncertaintyRecord> region;
    std::string error;
  };
  std::vector<Result> results(manifest.size());
  parallel_for(manifest.size(), options.jobs, [&](std::size_t i) {
    const auto& rec = manifest[i];
    try {
      const auto stack = read_stack(rec.stack_path);
      const auto gt = read_mask(rec.gt_path);
      require_same_shape(stack.shape(), gt.shape(), rec.id);
      const auto agg = aggregate(stack, options.aggregation);
      results[i].metrics = evaluate(agg.mean, agg.prediction, gt, rec.id);
      results[i].region = decompose(agg.uncertainty, gt, options.normalization, rec.id);
      if (options.save_maps) {
        const auto u = agg.uncertainty.values();
        write_stack(ProbStack::create(stack.width(), stack.height(), 1, std::vector<float>(u.begin(), u.end())),
                    options.out / "maps" / (rec.id + "_unc.uqs"));
      }
    } catch (const std::exception& e) {
      results[i].error = e.what();
    }
  });

  AnalyzeSummary summary;
  std::string metrics = "image_id,class,dice,tpr,fpr,auroc,tp,fp,fn,tn\n";
  std::string regions = "image_id,class,x0,x1,x2,lesion_pixels,normalization\n";
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& rec = manifest[i];
    const auto& r = results[i];
    if (!r.metrics) {
      spdlog::error("analyze {}: {}", rec.id, r.error);
      ++summary.failures;
      continue;
    }
    ++summary.images;
    const std::string cls(to_string(rec.label));
    const auto& m = *r.metrics;
    metrics += rec.id + "," + cls + "," + format_real(m.dice) + "," + format_real(m.tpr) + "," + format_real(m.fpr) +
               "," + format_real(m.auroc) + "," + std::to_string(m.counts.tp) + "," + std::to_string(m.counts.fp) +
               "," + std::to_string(m.counts.fn) + "," + std::to_string(m.counts.tn) + "\n";
    const auto& g = *r.region;
    regions += rec.id + "," + cls + "," + format_real(g.x0_overall) + "," + format_real(g.x1_lesion) + "," +
               format_real(g.x2_nonlesion) + "," + std::to_string(g.lesion_pixel_count) + "," +
               std::string(to_string(g.normalization)) + "\n";
  }
  write_text(options.out / kMetricsCsv, metrics);
  write_text(options.out / kRegionsCsv, regions);
  return summary;
}

std::vector<DiceRow> load_dice_rows(const fs::path& dir) {
  const auto metrics = load_metrics(dir);
  const auto regions_path = dir / kRegionsCsv;
  require_upstream(regions_path, "analyze");
  const auto regions = read_csv(regions_path);
  const auto c_id = regions.column("image_id"), c_x0 = regions.column("x0"), c_x1 = regions.column("x1"),
             c_x2 = regions.column("x2");
  std::map<std::string, const std::vector<std::string>*> by_id;
  for (const auto& row : regions.rows) by_id[row[c_id]] = &row;

  std::vector<DiceRow> out;
  for (const auto& m : metrics) {
    const auto it = by_id.find(m.record.image_id);
    if (it == by_id.end()) {
      spdlog::warn("{} has metrics but no region uncertainty row; skipped", m.record.image_id);
      continue;
    }
    const auto& row = *it->second;
    const auto x0 = parse_optional_real(row[c_x0]);
    if (!x0) throw Error(ErrorCode::UnsupportedFormat, "region row without x0: " + m.record.image_id);
    out.push_back({m.record.image_id, m.label, *x0, parse_optional_real(row[c_x1]), parse_optional_real(row[c_x2]),
                   m.record.dice});
  }
  return out;
}

std::vector<DiceRow> select_fit_rows(std::span<const DiceRow> rows, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorCode::InvalidConfig, "fit fraction must lie in (0,1]");
  std::map<ClassLabel, std::size_t> totals, taken;
  for (const auto& r : rows) ++totals[r.label];
  std::vector<DiceRow> out;
  for (const auto& r : rows) {
    const auto quota = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(totals[r.label])));
    if (taken[r.label] < quota) {
      ++taken[r.label];
      out.push_back(r);
    }
  }
  return out;
}

std::string format_fit_table(std::span<const SuiteEntry> suite, std::span<const CorrelationEntry> correlations) {
  constexpr std::size_t kName = 12, kCol = 22;
  std::ostringstream out;
  out << pad_right("", kName);
  for (auto label : kAllClasses) out << pad(std::string(to_string(label)), kCol);
  out << "\n";

  auto find = [&](std::optional<ClassLabel> label, const std::string& family) -> const SuiteEntry* {
    for (const auto& e : suite) {
      if (e.label == label && naming_for(e.spec).family == family) return &e;
    }
    return nullptr;
  };
  for (const std::string family : {"alpha", "beta", "gamma", "theta"}) {
    const auto names = naming_for(family == "alpha"   ? ModelSpec::create({Predictor::X1, Predictor::X2})
                                  : family == "beta"  ? ModelSpec::create({Predictor::X1})
                                  : family == "gamma" ? ModelSpec::create({Predictor::X2})
                                                      : ModelSpec::create({Predictor::X0}))
                           .coefficient_names;
    for (std::size_t k = 0; k <= names.size(); ++k) {
      out << pad_right(k < names.size() ? names[k] : "RMSE(" + family + ")", kName);
      for (auto label : kAllClasses) {
        const auto* e = find(label, family);
        std::string cell = "n/a";
        if (e && e->result) cell = fixed(k < names.size() ? e->result->coefficients[k] : e->result->rmse);
        out << pad(cell, kCol);
      }
      out << "\n";
    }
  }
  for (const auto& predictor : {Predictor::X0, Predictor::X1, Predictor::X2}) {
    bool any = false;
    std::ostringstream line;
    line << pad_right("rho(" + std::string(to_string(predictor)) + ")", kName);
    for (auto label : kAllClasses) {
      std::string cell = "n/a";
      for (const auto& c : correlations) {
        if (c.label == label && c.predictor == predictor && c.result) {
          cell = fixed(c.result->rho) + " (p=" + general(c.result->p_value) + ")";
          any = true;
        }
      }
      line << pad(cell, kCol);
    }
    if (any) out << line.str() << "\n";
  }

  if (const auto* pooled = find(std::nullopt, "alpha_phi")) {
    out << "\npooled " << pooled->spec.name() << "\n";
    if (pooled->result) {
      const auto names = naming_for(pooled->spec).coefficient_names;
      for (std::size_t k = 0; k < names.size(); ++k) {
        out << pad_right(names[k], kName) << pad(fixed(pooled->result->coefficients[k]), kCol) << "\n";
      }
      out << pad_right("RMSE", kName) << pad(fixed(pooled->result->rmse), kCol) << "\n";
      if (pooled->result->rank_deficient) {
        out << "rank " << pooled->result->rank << " of " << names.size()
            << ": minimum-norm solution; identifiable contrasts:";
        for (const auto& [name, value] : dummy_contrasts(*pooled->result)) out << " " << name << "=" << fixed(value);
        out << "\n";
      }
    } else {
      out << pooled->error << "\n";
    }
  }
  return out.str();
}

FitOutcome run_fit(const FitOptions& options) {
  const auto all_rows = load_dice_rows(options.in);
  const auto rows = select_fit_rows(all_rows, options.fit_fraction);
  FitOutcome outcome;
  outcome.suite = fit_model_suite(rows);
  ordered_json doc = ordered_json::array();
  for (const auto& e : outcome.suite) {
    doc.push_back(fit_to_json(e));
    if (!e.result) ++outcome.failed_cells;
  }
  write_text(options.out / kFitsJson, doc.dump(2) + "\n");
  std::vector<CorrelationEntry> correlations;
  if (options.with_correlations) correlations = correlate_suite(rows);
  outcome.table = format_fit_table(outcome.suite, correlations);
  return outcome;
}

std::vector<CorrelationEntry> run_corr(const CorrOptions& options) {
  const auto rows = load_dice_rows(options.in);
  const auto correlations = correlate_suite(rows);
  std::string csv = "class,predictor,rho,p_value,n\n";
  for (const auto& c : correlations) {
    csv += std::string(to_string(c.label)) + "," + std::string(to_string(c.predictor)) + ",";
    if (c.result) {
      csv += format_real(c.result->rho) + "," + format_real(c.result->p_value) + "," + std::to_string(c.result->n);
    } else {
      spdlog::warn("correlation {} {}: {}", to_string(c.label), to_string(c.predictor), c.error);
      csv += ",,";
    }
    csv += "\n";
  }
  write_text(options.out / kCorrelationsCsv, csv);

  const auto metrics = load_metrics(options.in);
  ordered_json doc;
  doc["seed"] = options.seed;
  doc["n_sims"] = options.n_sims;
  doc["level"] = 0.95;
  doc["method"] = options.method == BootstrapMethod::Empirical ? "empirical" : "percentile";
  doc["intervals"] = ordered_json::array();
  std::uint64_t interval_index = 0;
  std::vector<std::optional<ClassLabel>> scopes = {std::nullopt};
  for (auto label : kAllClasses) scopes.push_back(label);
  for (const auto& scope : scopes) {
    for (const std::string metric : {"dice", "auroc", "tpr", "fpr"}) {
      std::vector<double> values;
      for (const auto& m : metrics) {
        if (scope && m.label != *scope) continue;
        const std::optional<double> v = metric == "dice"    ? std::optional(m.record.dice)
                                        : metric == "auroc" ? m.record.auroc
                                        : metric == "tpr"   ? m.record.tpr
                                                            : m.record.fpr;
        if (v) values.push_back(*v);
      }
      for (auto statistic : {BootstrapStatistic::Median, BootstrapStatistic::Mean}) {
        const std::uint64_t seed = mix_seed(options.seed, interval_index++);
        ordered_json entry;
        entry["scope"] = scope_name(scope);
        entry["metric"] = metric;
        entry["statistic"] = std::string(to_string(statistic));
        entry["n"] = values.size();
        entry["seed"] = seed;
        if (values.size() < 2) {
          entry["point"] = nullptr;
          entry["lower"] = nullptr;
          entry["upper"] = nullptr;
        } else {
          const auto ci = bootstrap_ci(values, {statistic, options.n_sims, seed, 0.95, options.method, options.jobs});
          entry["point"] = ci.point;
          entry["lower"] = ci.lower;
          entry["upper"] = ci.upper;
        }
        doc["intervals"].push_back(entry);
      }
    }
  }
  write_text(options.out / kBootstrapJson, doc.dump(2) + "\n");
  return correlations;
}

std::vector<std::string> run_render(const RenderOptions& options) {
  options.aggregation.validate();
  options.render.validate();
  const auto manifest = read_manifest(options.manifest);
  std::vector<const ImageRecord*> chosen;
  if (options.ids.empty()) {
    for (std::size_t i = 0; i < manifest.size() && i < options.limit; ++i) chosen.push_back(&manifest[i]);
  } else {
    for (const auto& id : options.ids) {
      const auto it = std::find_if(manifest.begin(), manifest.end(), [&](const ImageRecord& r) { return r.id == id; });
      if (it == manifest.end()) throw Error(ErrorCode::InvalidConfig, "id '" + id + "' is not in the manifest");
      chosen.push_back(&*it);
    }
  }
  const auto dir = options.out / kRenderDir;
  parallel_for(chosen.size(), options.jobs, [&](std::size_t i) {
    const auto& rec = *chosen[i];
    const auto stack = read_stack(rec.stack_path);
    const auto gt = read_mask(rec.gt_path);
    require_same_shape(stack.shape(), gt.shape(), rec.id);
    const auto agg = aggregate(stack, options.aggregation);
    const PanelBundle bundle{&gt, &agg.prediction, &agg.uncertainty};
    for (auto panel : options.render.panel_order) {
      write_ppm(render_single(bundle, panel, options.render),
                dir / (rec.id + "_" + std::string(to_string(panel)) + ".ppm"));
    }
    write_ppm(render_panel(bundle, options.render), dir / (rec.id + "_composite.ppm"));
  });
  std::vector<std::string> ids;
  for (const auto* rec : chosen) ids.push_back(rec->id);
  return ids;
}

ValueSummary summarize_values(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to summarize");
  ValueSummary s;
  s.n = values.size();
  s.max = *std::max_element(values.begin(), values.end());
  s.min = *std::min_element(values.begin(), values.end());
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(s.n);
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

fs::path run_report(const ReportOptions& options) {
  const auto fits_path = options.in / kFitsJson;
  const auto corr_path = options.in / kCorrelationsCsv;
  const auto boot_path = options.in / kBootstrapJson;
  const auto metrics = load_metrics(options.in);
  const auto rows = load_dice_rows(options.in);
  require_upstream(fits_path, "fit");
  require_upstream(corr_path, "corr");
  require_upstream(boot_path, "corr");
  const auto fits = nlohmann::json::parse(read_text(fits_path));
  const auto boot = nlohmann::json::parse(read_text(boot_path));
  const auto corr = read_csv(corr_path);

  std::vector<std::optional<ClassLabel>> scopes = {std::nullopt};
  for (auto label : kAllClasses) scopes.push_back(label);

  std::ostringstream md;
  md << "# Uncertainty analysis report\n\n";
  md << "Images analysed: " << metrics.size();
  {
    std::vector<std::string> parts;
    for (auto label : kAllClasses) {
      const auto n = std::count_if(metrics.begin(), metrics.end(), [&](const auto& m) { return m.label == label; });
      parts.push_back(std::string(to_string(label)) + " " + std::to_string(n));
    }
    md << " (";
    for (std::size_t i = 0; i < parts.size(); ++i) md << (i ? ", " : "") << parts[i];
    md << ").\n\n";
  }

  // Table 1
  md << "## Table 1. Segmentation performance\n\n";
  md << "Median per image, with " << fixed(boot.value("level", 0.95) * 100.0, 0) << "% " << boot.value("method", "")
     << " bootstrap interval of the median (" << boot.value("n_sims", 0) << " resamples).\n\n";
  md << "| Scope | n | Dice | AUROC | TPR | FPR |\n|---|---|---|---|---|---|\n";
  for (const auto& scope : scopes) {
    std::vector<MetricsRecord> subset;
    for (const auto& m : metrics) {
      if (!scope || m.label == *scope) subset.push_back(m.record);
    }
    if (subset.empty()) continue;
    const auto summary = summarize(subset);
    auto cell = [&](const std::string& metric, std::optional<double> median_value) {
      std::string out = fixed(median_value);
      for (const auto& e : boot["intervals"]) {
        if (e["scope"] == scope_name(scope) && e["metric"] == metric && e["statistic"] == "median" &&
            !e["lower"].is_null()) {
          out += " [" + fixed(e["lower"].get<double>()) + ", " + fixed(e["upper"].get<double>()) + "]";
        }
      }
      return out;
    };
    md << "| " << scope_name(scope) << " | " << subset.size() << " | " << cell("dice", summary.dice) << " | "
       << cell("auroc", summary.auroc) << " | " << cell("tpr", summary.tpr) << " | " << cell("fpr", summary.fpr)
       << " |\n";
  }

  // Table 2
  md << "\n## Table 2. Uncertainty summary\n\n";
  md << "Per-image region uncertainty; standard deviation uses n-1.\n\n";
  md << "| Scope | Quantity | n | Maximum | Minimum | Mean | Std. dev. |\n|---|---|---|---|---|---|---|\n";
  for (const auto& scope : scopes) {
    for (auto predictor : {Predictor::X0, Predictor::X1, Predictor::X2}) {
      std::vector<double> values;
      for (const auto& r : rows) {
        if (scope && r.label != *scope) continue;
        const auto v = predictor == Predictor::X0 ? std::optional(r.x0) : predictor == Predictor::X1 ? r.x1 : r.x2;
        if (v) values.push_back(*v);
      }
      if (values.empty()) continue;
      const auto s = summarize_values(values);
      const char* what = predictor == Predictor::X0 ? "X0 overall" : predictor == Predictor::X1 ? "X1 lesion" : "X2 non-lesion";
      md << "| " << scope_name(scope) << " | " << what << " | " << s.n << " | " << fixed(s.max, 6) << " | "
         << fixed(s.min, 6) << " | " << fixed(s.mean, 6) << " | " << fixed(s.stddev, 6) << " |\n";
    }
  }

  // Table 3
  md << "\n## Table 3. Dice regression models\n\n";
  md << "alpha: Dice ~ X1 + X2; beta: Dice ~ X1; gamma: Dice ~ X2; theta: Dice ~ X0.\n\n";
  md << "| Coefficient |";
  for (auto label : kAllClasses) md << " " << to_string(label) << " |";
  md << "\n|---|---|---|---|\n";
  auto find_fit = [&](const std::string& cls, const std::string& family) -> const nlohmann::json* {
    for (const auto& f : fits) {
      if (f["class"] == cls && f["family"] == family) return &f;
    }
    return nullptr;
  };
  const std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> layout = {
      {"alpha", {{"alpha0", "intercept"}, {"alpha1", "X1"}, {"alpha2", "X2"}}},
      {"beta", {{"beta0", "intercept"}, {"beta1", "X1"}}},
      {"gamma", {{"gamma0", "intercept"}, {"gamma1", "X2"}}},
      {"theta", {{"theta_a", "intercept"}, {"theta_b", "X0"}}},
  };
  for (const auto& [family, coefs] : layout) {
    for (std::size_t k = 0; k <= coefs.size(); ++k) {
      md << "| " << (k < coefs.size() ? coefs[k].first : "RMSE (" + family + ")") << " |";
      for (auto label : kAllClasses) {
        const auto* f = find_fit(std::string(to_string(label)), family);
        std::string cell = "n/a";
        if (f && (*f)["error"].is_null()) {
          cell = k < coefs.size() ? fixed((*f)["coefficients"][coefs[k].second].get<double>())
                                  : fixed((*f)["rmse"].get<double>());
        }
        md << " " << cell << " |";
      }
      md << "\n";
    }
  }
  if (const auto* pooled = find_fit("pooled", "alpha_phi")) {
    md << "\nPooled model with class indicators (Dice ~ X1 + X2 + C1 + C2 + C3)";
    if ((*pooled)["error"].is_null()) {
      md << ", RMSE " << fixed((*pooled)["rmse"].get<double>()) << ", n " << (*pooled)["n_used"].get<std::size_t>()
         << ":\n\n| Coefficient | Value |\n|---|---|\n";
      const std::vector<std::pair<std::string, std::string>> names = {
          {"alpha0", "intercept"}, {"alpha1", "X1"}, {"alpha2", "X2"}, {"phi1", "C1"}, {"phi2", "C2"}, {"phi3", "C3"}};
      for (const auto& [name, key] : names) {
        md << "| " << name << " | " << fixed((*pooled)["coefficients"][key].get<double>()) << " |\n";
      }
      if ((*pooled)["rank_deficient"].get<bool>()) {
        md << "\nThe intercept and the three class indicators are collinear; the minimum-norm solution is shown. "
              "Identifiable contrasts:";
        for (const auto& [name, value] : (*pooled)["contrasts"].items()) {
          md << " " << name << " = " << fixed(value.get<double>()) << ";";
        }
        md << "\n";
      }
    } else {
      md << ": " << (*pooled)["error"].get<std::string>() << "\n";
    }
  }

  // Table 4
  md << "\n## Table 4. Spearman correlation with Dice\n\n";
  md << "| Class | Predictor | rho | p-value | n |\n|---|---|---|---|---|\n";
  {
    const auto c_class = corr.column("class"), c_pred = corr.column("predictor"), c_rho = corr.column("rho"),
               c_p = corr.column("p_value"), c_n = corr.column("n");
    for (const auto& row : corr.rows) {
      const auto rho = parse_optional_real(row[c_rho]);
      const auto p = parse_optional_real(row[c_p]);
      md << "| " << row[c_class] << " | " << row[c_pred] << " | " << fixed(rho) << " | "
         << (p ? general(*p) : std::string("n/a")) << " | " << (row[c_n].empty() ? "n/a" : row[c_n]) << " |\n";
    }
  }

  // Panels
  const auto render_dir = options.in / kRenderDir;
  if (fs::is_directory(render_dir)) {
    std::vector<fs::path> composites;
    for (const auto& entry : fs::directory_iterator(render_dir)) {
      const auto name = entry.path().filename().string();
      if (name.size() > 14 && name.ends_with("_composite.ppm")) composites.push_back(entry.path());
    }
    std::sort(composites.begin(), composites.end());
    if (!composites.empty()) {
      md << "\n## Uncertainty panels\n\n";
      md << "Columns: ground truth, prediction, overall / lesion / non-lesion uncertainty (blue low, red high).\n\n";
      for (const auto& p : composites) {
        const auto name = p.filename().string();
        md << "- [" << name.substr(0, name.size() - 14) << "](" << p.lexically_relative(options.out).generic_string()
           << ")\n";
      }
    }
  }

  const auto out_path = options.out / kReportMd;
  write_text(out_path, md.str());
  return out_path;
}

}  // namespace uqseg
