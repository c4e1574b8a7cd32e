// uqseg: stochastic-segmentation uncertainty pipeline.
//
//   uqseg simulate --n 10 --seed 7 --out work/
//   uqseg analyze  --manifest work/manifest.jsonl --out work/
//   uqseg fit      --out work/ [--corr]
//   uqseg corr     --out work/
//   uqseg render   --manifest work/manifest.jsonl --out work/
//   uqseg report   --out work/

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "uqseg/io.hpp"
#include "uqseg/pipeline.hpp"

namespace {

using namespace uqseg;
namespace fs = std::filesystem;

struct RunConfig {
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  std::string out = ".";
  std::string in;  // defaults to out

  // simulate
  std::size_t n = 10;
  std::size_t width = 64, height = 64, alpha = 50;
  std::string noise_mode = "mixed";
  std::vector<double> noise_grid;
  std::vector<double> class_multipliers;
  double boundary_width = 2.0;
  double sharpness = 2.0;

  // analyze / render
  std::string manifest;
  double threshold = 0.95;
  std::string normalization = "region";
  bool save_maps = false;

  // fit / corr
  double fit_fraction = 1.0;
  bool corr = false;
  std::size_t n_sims = 5000;
  std::string bootstrap_method = "empirical";

  // render
  std::string scale = "auto";
  std::size_t upscale = 1;
  std::vector<std::string> panels;
  std::vector<std::string> ids;
  std::size_t limit = 6;
};

// Values from --config; command-line flags parsed afterwards override them.
void apply_config_file(const fs::path& path, RunConfig& cfg) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, path.string() + ": expected a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "jobs") cfg.jobs = value.get<std::size_t>();
      else if (key == "out") cfg.out = value.get<std::string>();
      else if (key == "in") cfg.in = value.get<std::string>();
      else if (key == "n") cfg.n = value.get<std::size_t>();
      else if (key == "width") cfg.width = value.get<std::size_t>();
      else if (key == "height") cfg.height = value.get<std::size_t>();
      else if (key == "alpha") cfg.alpha = value.get<std::size_t>();
      else if (key == "noise_mode") cfg.noise_mode = value.get<std::string>();
      else if (key == "noise_grid") cfg.noise_grid = value.get<std::vector<double>>();
      else if (key == "class_multipliers") cfg.class_multipliers = value.get<std::vector<double>>();
      else if (key == "boundary_width") cfg.boundary_width = value.get<double>();
      else if (key == "sharpness") cfg.sharpness = value.get<double>();
      else if (key == "manifest") cfg.manifest = value.get<std::string>();
      else if (key == "threshold") cfg.threshold = value.get<double>();
      else if (key == "normalization") cfg.normalization = value.get<std::string>();
      else if (key == "save_maps") cfg.save_maps = value.get<bool>();
      else if (key == "fit_fraction") cfg.fit_fraction = value.get<double>();
      else if (key == "corr") cfg.corr = value.get<bool>();
      else if (key == "n_sims") cfg.n_sims = value.get<std::size_t>();
      else if (key == "bootstrap_method") cfg.bootstrap_method = value.get<std::string>();
      else if (key == "scale") cfg.scale = value.get<std::string>();
      else if (key == "upscale") cfg.upscale = value.get<std::size_t>();
      else if (key == "panels") cfg.panels = value.get<std::vector<std::string>>();
      else if (key == "ids") cfg.ids = value.get<std::vector<std::string>>();
      else if (key == "limit") cfg.limit = value.get<std::size_t>();
      else throw Error(ErrorCode::InvalidConfig, path.string() + ": unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
}

AggregationConfig aggregation_of(const RunConfig& cfg) {
  AggregationConfig agg;
  agg.threshold = cfg.threshold;
  agg.validate();
  return agg;
}

fs::path input_dir(const RunConfig& cfg) { return cfg.in.empty() ? fs::path(cfg.out) : fs::path(cfg.in); }

fs::path manifest_path(const RunConfig& cfg) {
  if (!cfg.manifest.empty()) return cfg.manifest;
  return input_dir(cfg) / "manifest.jsonl";
}

int cmd_simulate(const RunConfig& cfg) {
  SimulatorConfig sim;
  sim.width = cfg.width;
  sim.height = cfg.height;
  sim.alpha = cfg.alpha;
  sim.n_per_class = cfg.n;
  const auto mode = parse_noise_mode(cfg.noise_mode);
  if (!mode) throw Error(ErrorCode::InvalidConfig, "unknown noise mode '" + cfg.noise_mode + "'");
  sim.noise_mode = *mode;
  if (!cfg.noise_grid.empty()) sim.noise_grid = cfg.noise_grid;
  if (!cfg.class_multipliers.empty()) {
    if (cfg.class_multipliers.size() != 3) throw Error(ErrorCode::InvalidConfig, "need 3 class multipliers");
    std::copy(cfg.class_multipliers.begin(), cfg.class_multipliers.end(), sim.class_multipliers.begin());
  }
  sim.boundary_width = cfg.boundary_width;
  sim.sharpness = cfg.sharpness;
  sim.seed = cfg.seed;
  sim.validate();
  generate_corpus(sim, cfg.out, cfg.jobs);
  std::cout << (fs::path(cfg.out) / "manifest.jsonl").string() << "\n";
  return 0;
}

int cmd_analyze(const RunConfig& cfg) {
  AnalyzeOptions opt;
  opt.manifest = manifest_path(cfg);
  opt.out = cfg.out;
  opt.aggregation = aggregation_of(cfg);
  const auto norm = parse_normalization(cfg.normalization);
  if (!norm) throw Error(ErrorCode::InvalidConfig, "normalization must be 'region' or 'full'");
  opt.normalization = *norm;
  opt.save_maps = cfg.save_maps;
  opt.jobs = cfg.jobs;
  const auto summary = run_analyze(opt);
  std::cout << "analyzed " << summary.images << " images";
  if (summary.failures) std::cout << ", " << summary.failures << " failed";
  std::cout << "\n";
  return summary.failures ? 4 : 0;
}

int cmd_fit(const RunConfig& cfg) {
  FitOptions opt;
  opt.in = input_dir(cfg);
  opt.out = cfg.out;
  opt.fit_fraction = cfg.fit_fraction;
  opt.with_correlations = cfg.corr;
  const auto outcome = run_fit(opt);
  std::cout << outcome.table;
  return outcome.failed_cells ? 5 : 0;
}

int cmd_corr(const RunConfig& cfg) {
  CorrOptions opt;
  opt.in = input_dir(cfg);
  opt.out = cfg.out;
  opt.seed = cfg.seed;
  opt.n_sims = cfg.n_sims;
  if (cfg.bootstrap_method == "empirical") opt.method = BootstrapMethod::Empirical;
  else if (cfg.bootstrap_method == "percentile") opt.method = BootstrapMethod::Percentile;
  else throw Error(ErrorCode::InvalidConfig, "bootstrap method must be 'empirical' or 'percentile'");
  opt.jobs = cfg.jobs;
  const auto entries = run_corr(opt);
  std::cout << "class,predictor,rho,p_value,n\n";
  for (const auto& e : entries) {
    std::cout << to_string(e.label) << "," << to_string(e.predictor) << ",";
    if (e.result) std::cout << e.result->rho << "," << e.result->p_value << "," << e.result->n;
    else std::cout << ",,";
    std::cout << "\n";
  }
  return 0;
}

int cmd_render(const RunConfig& cfg) {
  RenderOptions opt;
  opt.manifest = manifest_path(cfg);
  opt.out = cfg.out;
  opt.aggregation = aggregation_of(cfg);
  if (cfg.scale == "auto") {
    opt.render.scale = RenderConfig::Scale::PerImageMax;
  } else if (cfg.scale.rfind("fixed:", 0) == 0) {
    opt.render.scale = RenderConfig::Scale::Fixed;
    const auto v = parse_optional_real(cfg.scale.substr(6));
    if (!v) throw Error(ErrorCode::InvalidConfig, "fixed scale needs a value");
    opt.render.fixed_max = *v;
  } else {
    throw Error(ErrorCode::InvalidConfig, "scale must be 'auto' or 'fixed:<v>'");
  }
  opt.render.upscale = cfg.upscale;
  if (!cfg.panels.empty()) {
    opt.render.panel_order.clear();
    for (const auto& name : cfg.panels) {
      const auto p = parse_panel(name);
      if (!p) throw Error(ErrorCode::InvalidConfig, "unknown panel '" + name + "'");
      opt.render.panel_order.push_back(*p);
    }
  }
  opt.ids = cfg.ids;
  opt.limit = cfg.limit;
  opt.jobs = cfg.jobs;
  const auto ids = run_render(opt);
  std::cout << "rendered " << ids.size() << " images into " << (fs::path(cfg.out) / kRenderDir).string() << "\n";
  return 0;
}

int cmd_report(const RunConfig& cfg) {
  const auto path = run_report({input_dir(cfg), cfg.out});
  std::cout << path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uncertainty maps, region decomposition and Dice regression for stochastic segmentation"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON file of option values; flags override it");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--jobs", cfg.jobs, "Per-image worker threads")->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic corpus");
  simulate->add_option("--n", cfg.n, "Images per class");
  simulate->add_option("--width", cfg.width);
  simulate->add_option("--height", cfg.height);
  simulate->add_option("--alpha", cfg.alpha, "MC iterations per stack");
  simulate->add_option("--noise-mode", cfg.noise_mode, "boundary | interior | mixed");
  simulate->add_option("--noise-grid", cfg.noise_grid, "Noise levels to draw from")->delimiter(',');
  simulate->add_option("--class-multipliers", cfg.class_multipliers, "Noise scale per class")->delimiter(',');
  simulate->add_option("--boundary-width", cfg.boundary_width);
  simulate->add_option("--sharpness", cfg.sharpness);

  auto* analyze = app.add_subcommand("analyze", "Masks, uncertainty maps, metrics and region uncertainty");
  analyze->add_option("--manifest", cfg.manifest, "Manifest (default <in>/manifest.jsonl)");
  analyze->add_option("--in", cfg.in, "Input directory (default --out)");
  analyze->add_option("--threshold", cfg.threshold);
  analyze->add_option("--normalization", cfg.normalization, "region | full");
  analyze->add_flag("--save-maps", cfg.save_maps, "Write uncertainty maps as single-plane UQS1 files");

  auto* fit = app.add_subcommand("fit", "Fit the Dice regression suite");
  fit->add_option("--in", cfg.in, "Directory with the analysis CSVs (default --out)");
  fit->add_option("--fit-fraction", cfg.fit_fraction, "Fraction of each class used for fitting");
  fit->add_flag("--corr", cfg.corr, "Add Spearman rows to the table");

  auto* corr = app.add_subcommand("corr", "Spearman correlations and bootstrap intervals");
  corr->add_option("--in", cfg.in, "Directory with the analysis CSVs (default --out)");
  corr->add_option("--n-sims", cfg.n_sims, "Bootstrap resamples");
  corr->add_option("--bootstrap-method", cfg.bootstrap_method, "empirical | percentile");

  auto* render = app.add_subcommand("render", "Heatmap panels as PPM");
  render->add_option("--manifest", cfg.manifest, "Manifest (default <in>/manifest.jsonl)");
  render->add_option("--in", cfg.in, "Input directory (default --out)");
  render->add_option("--threshold", cfg.threshold);
  render->add_option("--scale", cfg.scale, "auto | fixed:<v>");
  render->add_option("--upscale", cfg.upscale);
  render->add_option("--panels", cfg.panels, "gt,pred,unc,unc_lesion,unc_nonlesion")->delimiter(',');
  render->add_option("--ids", cfg.ids, "Image ids to render")->delimiter(',');
  render->add_option("--limit", cfg.limit, "Images to render when --ids is absent");

  auto* report = app.add_subcommand("report", "Markdown report of all stage outputs");
  report->add_option("--in", cfg.in, "Directory with the stage outputs (default --out)");

  // --config must be applied before the flags it can be overridden by.
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--config") {
      try {
        apply_config_file(argv[i + 1], cfg);
      } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  spdlog::set_default_logger(spdlog::stderr_color_mt("uqseg"));
  spdlog::set_pattern("[%l] %v");
  try {
    if (*simulate) return cmd_simulate(cfg);
    if (*analyze) return cmd_analyze(cfg);
    if (*fit) return cmd_fit(cfg);
    if (*corr) return cmd_corr(cfg);
    if (*render) return cmd_render(cfg);
    if (*report) return cmd_report(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
