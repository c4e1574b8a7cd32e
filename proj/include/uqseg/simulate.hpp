#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "uqseg/core.hpp"
#include "uqseg/io.hpp"
#include "uqseg/rng.hpp"

namespace uqseg {

/// Where the simulated per-iteration noise lives.
enum class NoiseMode {
  Boundary,  // g(p) = exp(-d(p)^2 / w^2)
  Interior,  // g(p) = 1 inside the lesion, 0 outside
  Mixed,     // average of the two
};

std::string_view to_string(NoiseMode mode);  // "boundary" / "interior" / "mixed"
std::optional<NoiseMode> parse_noise_mode(std::string_view text);

/// Stand-in for a stochastic segmenter. Each simulated image has a
/// harmonic-perturbed elliptical lesion and a stack whose base score is a
/// logistic of the signed distance, anchored so the score crosses
/// `anchor_threshold` at the lesion boundary, plus clamped Gaussian noise.
struct SimulatorConfig {
  std::size_t width = 64;
  std::size_t height = 64;
  std::size_t alpha = 50;
  std::size_t n_per_class = 10;
  NoiseMode noise_mode = NoiseMode::Mixed;
  /// Per-image noise levels are drawn uniformly from this grid (independently
  /// for the boundary and interior profiles in Mixed mode)...
  std::vector<double> noise_grid = {0.0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.14, 0.16};
  /// ...and scaled per class (melanoma, nevus, seborrheic keratosis).
  std::array<double, 3> class_multipliers = {1.0, 1.2, 0.8};
  /// Lesion semi-axes as fractions of min(width, height).
  double radius_min = 0.12;
  double radius_max = 0.30;
  double boundary_width = 2.0;  // w, pixels
  double sharpness = 2.0;       // k, logistic slope per pixel
  double anchor_threshold = 0.95;
  std::uint64_t seed = 0;

  /// Throws InvalidConfig.
  void validate() const;
};

BinaryMask generate_lesion_mask(const SimulatorConfig& cfg, Rng& rng);

/// Noise-free per-pixel score.
std::vector<double> base_score(const BinaryMask& gt, const SimulatorConfig& cfg);

/// Relative noise amplitude g(p) for the mode.
std::vector<double> noise_profile(const BinaryMask& gt, NoiseMode mode, double boundary_width);

/// Separate noise levels for the boundary and interior profiles. Mixed mode
/// averages sigma_b*g_boundary and sigma_i*g_interior; the single-profile
/// modes use only their own level.
struct NoiseLevels {
  double boundary = 0;
  double interior = 0;
};

/// alpha iterations of clamp(s(p) + N(0, sigma*g(p)), 0, 1).
ProbStack simulate_stack(const BinaryMask& gt, const SimulatorConfig& cfg, double sigma, Rng& rng);
ProbStack simulate_stack(const BinaryMask& gt, const SimulatorConfig& cfg, NoiseLevels levels, Rng& rng);

struct SimulatedImage {
  ImageRecord record;
  BinaryMask gt;
  ProbStack stack;
  double noise_level = 0;  // mean of the levels the mode uses
  NoiseLevels levels;
};

/// Image `index` of the corpus (class-major order); depends only on
/// (cfg, index). Stack and mask paths are manifest-relative.
SimulatedImage simulate_image(const SimulatorConfig& cfg, std::size_t index);

std::size_t corpus_size(const SimulatorConfig& cfg);

/// Writes stacks/<id>.uqs, masks/<id>.pgm, manifest.jsonl and truth.csv
/// under `out_dir`. Output bytes do not depend on `jobs`.
Manifest generate_corpus(const SimulatorConfig& cfg, const std::filesystem::path& out_dir, std::size_t jobs = 1);

}  // namespace uqseg
