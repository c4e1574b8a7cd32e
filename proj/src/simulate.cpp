#include "uqseg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "uqseg/distance.hpp"
#include "uqseg/parallel.hpp"

namespace uqseg {

std::string_view to_string(NoiseMode mode) {
  switch (mode) {
    case NoiseMode::Boundary: return "boundary";
    case NoiseMode::Interior: return "interior";
    case NoiseMode::Mixed: return "mixed";
  }
  return "?";
}

std::optional<NoiseMode> parse_noise_mode(std::string_view text) {
  for (auto m : {NoiseMode::Boundary, NoiseMode::Interior, NoiseMode::Mixed}) {
    if (to_string(m) == text) return m;
  }
  return std::nullopt;
}

void SimulatorConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); };
  if (width < 8 || height < 8) fail("simulated images must be at least 8x8");
  if (alpha < 1) fail("alpha must be >= 1");
  if (noise_grid.empty()) fail("noise grid is empty");
  for (double s : noise_grid) {
    if (!(s >= 0.0)) fail("noise levels must be >= 0");
  }
  for (double m : class_multipliers) {
    if (!(m >= 0.0)) fail("class multipliers must be >= 0");
  }
  if (!(radius_min > 0.0 && radius_min <= radius_max && radius_max <= 0.4)) fail("lesion radius range must satisfy 0 < min <= max <= 0.4");
  if (!(boundary_width > 0.0)) fail("boundary width must be > 0");
  if (!(sharpness > 0.0)) fail("sharpness must be > 0");
  if (!(anchor_threshold > 0.0 && anchor_threshold < 1.0)) fail("anchor threshold must lie in (0,1)");
}

BinaryMask generate_lesion_mask(const SimulatorConfig& cfg, Rng& rng) {
  const double w = static_cast<double>(cfg.width);
  const double h = static_cast<double>(cfg.height);
  const double m = std::min(w, h);
  const double a = m * rng.uniform(cfg.radius_min, cfg.radius_max);
  const double b = m * rng.uniform(cfg.radius_min, cfg.radius_max);
  const double rotation = rng.uniform(0.0, std::numbers::pi);
  const double amp2 = rng.uniform(0.0, 0.12);
  const double amp3 = rng.uniform(0.0, 0.08);
  const double phase2 = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double phase3 = rng.uniform(0.0, 2.0 * std::numbers::pi);

  const double reach = std::max(a, b) * (1.0 + amp2 + amp3);
  const double margin = std::max(2.0, m / 16.0);
  auto centre = [&](double extent) {
    const double lo = margin + reach, hi = extent - margin - reach;
    const double u = rng.uniform();
    return lo < hi ? lo + (hi - lo) * u : extent / 2.0;
  };
  const double cx = centre(w);
  const double cy = centre(h);

  const double cr = std::cos(rotation), sr = std::sin(rotation);
  std::vector<std::uint8_t> bits(cfg.width * cfg.height, 0);
  for (std::size_t y = 0; y < cfg.height; ++y) {
    for (std::size_t x = 0; x < cfg.width; ++x) {
      const double dx = static_cast<double>(x) + 0.5 - cx;
      const double dy = static_cast<double>(y) + 0.5 - cy;
      const double u = (dx * cr + dy * sr) / a;
      const double v = (-dx * sr + dy * cr) / b;
      const double r = std::hypot(u, v);
      const double phi = std::atan2(v, u);
      const double limit = 1.0 + amp2 * std::cos(2.0 * phi + phase2) + amp3 * std::cos(3.0 * phi + phase3);
      bits[y * cfg.width + x] = r <= limit ? 1 : 0;
    }
  }
  // The region is star-shaped; pixel sampling can still strand a corner pixel.
  return largest_component(BinaryMask(Shape{cfg.width, cfg.height}, std::move(bits)));
}

std::vector<double> base_score(const BinaryMask& gt, const SimulatorConfig& cfg) {
  const auto d = signed_distance(gt);
  const double anchor = std::log(cfg.anchor_threshold / (1.0 - cfg.anchor_threshold));
  std::vector<double> s(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = 1.0 / (1.0 + std::exp(-(cfg.sharpness * d[i] + anchor)));
  return s;
}

std::vector<double> noise_profile(const BinaryMask& gt, NoiseMode mode, double boundary_width) {
  const auto d = signed_distance(gt);
  std::vector<double> g(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double boundary = std::exp(-(d[i] * d[i]) / (boundary_width * boundary_width));
    const double interior = gt[i] ? 1.0 : 0.0;
    switch (mode) {
      case NoiseMode::Boundary: g[i] = boundary; break;
      case NoiseMode::Interior: g[i] = interior; break;
      case NoiseMode::Mixed: g[i] = 0.5 * (boundary + interior); break;
    }
  }
  return g;
}

ProbStack simulate_stack(const BinaryMask& gt, const SimulatorConfig& cfg, double sigma, Rng& rng) {
  return simulate_stack(gt, cfg, NoiseLevels{sigma, sigma}, rng);
}

ProbStack simulate_stack(const BinaryMask& gt, const SimulatorConfig& cfg, NoiseLevels levels, Rng& rng) {
  const auto s = base_score(gt, cfg);
  const auto gb = noise_profile(gt, NoiseMode::Boundary, cfg.boundary_width);
  const auto gi = noise_profile(gt, NoiseMode::Interior, cfg.boundary_width);
  double wb = 0.5, wi = 0.5;
  if (cfg.noise_mode == NoiseMode::Boundary) wb = 1.0, wi = 0.0;
  if (cfg.noise_mode == NoiseMode::Interior) wb = 0.0, wi = 1.0;
  const std::size_t n = s.size();
  std::vector<double> amp(n);
  for (std::size_t p = 0; p < n; ++p) amp[p] = wb * levels.boundary * gb[p] + wi * levels.interior * gi[p];
  std::vector<float> values(n * cfg.alpha);
  for (std::size_t j = 0; j < cfg.alpha; ++j) {
    for (std::size_t p = 0; p < n; ++p) {
      const double noisy = s[p] + amp[p] * rng.normal();
      values[j * n + p] = static_cast<float>(std::clamp(noisy, 0.0, 1.0));
    }
  }
  return ProbStack::create(gt.width(), gt.height(), cfg.alpha, std::move(values));
}

std::size_t corpus_size(const SimulatorConfig& cfg) { return 3 * cfg.n_per_class; }

SimulatedImage simulate_image(const SimulatorConfig& cfg, std::size_t index) {
  const std::size_t class_index = index / cfg.n_per_class;
  const ClassLabel label = kAllClasses[class_index];
  char suffix[32];
  std::snprintf(suffix, sizeof suffix, "_%04zu", index % cfg.n_per_class);
  const std::string id = std::string(to_string(label)) + suffix;

  Rng rng(mix_seed(cfg.seed, index));
  BinaryMask gt = generate_lesion_mask(cfg, rng);
  const double scale = cfg.class_multipliers[class_index];
  auto draw = [&] { return cfg.noise_grid[rng.below(cfg.noise_grid.size())] * scale; };
  NoiseLevels levels;
  double noise_level = 0;
  switch (cfg.noise_mode) {
    case NoiseMode::Boundary: levels.boundary = noise_level = draw(); break;
    case NoiseMode::Interior: levels.interior = noise_level = draw(); break;
    case NoiseMode::Mixed:
      levels.boundary = draw();
      levels.interior = draw();
      noise_level = 0.5 * (levels.boundary + levels.interior);
      break;
  }
  ProbStack stack = simulate_stack(gt, cfg, levels, rng);

  ImageRecord record{id, label, std::filesystem::path("stacks") / (id + ".uqs"),
                     std::filesystem::path("masks") / (id + ".pgm")};
  return {std::move(record), std::move(gt), std::move(stack), noise_level, levels};
}

Manifest generate_corpus(const SimulatorConfig& cfg, const std::filesystem::path& out_dir, std::size_t jobs) {
  cfg.validate();
  const std::size_t n = corpus_size(cfg);
  Manifest manifest(n);
  std::vector<std::pair<double, NoiseLevels>> meta(n);
  parallel_for(n, jobs, [&](std::size_t i) {
    auto image = simulate_image(cfg, i);
    write_stack(image.stack, out_dir / image.record.stack_path);
    write_mask(image.gt, out_dir / image.record.gt_path);
    meta[i] = {image.noise_level, image.levels};
    manifest[i] = std::move(image.record);
  });
  write_manifest(manifest, out_dir / "manifest.jsonl");

  std::string truth = "image_id,class,noise_mode,noise_level,boundary_level,interior_level\n";
  for (std::size_t i = 0; i < n; ++i) {
    truth += manifest[i].id + "," + std::string(to_string(manifest[i].label)) + "," +
             std::string(to_string(cfg.noise_mode)) + "," + format_real(meta[i].first) + "," +
             format_real(meta[i].second.boundary) + "," + format_real(meta[i].second.interior) + "\n";
  }
  write_text(out_dir / "truth.csv", truth);
  return manifest;
}

}  // namespace uqseg
