#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uqseg/error.hpp"

namespace uqseg {

struct Shape {
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t pixels() const noexcept { return width * height; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

void require_same_shape(Shape a, Shape b, std::string_view context);

/// Stochastic per-pixel probabilities from `alpha` forward passes.
///
/// Storage is iteration-major: plane j occupies values[j*W*H, (j+1)*W*H),
/// each plane row-major. Every value lies in [0,1].
class ProbStack {
 public:
  /// Validates dimensions and value range. Throws ShapeMismatch or ValueOutOfRange.
  static ProbStack create(std::size_t width, std::size_t height, std::size_t alpha,
                          std::vector<float> values);

  Shape shape() const noexcept { return shape_; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t height() const noexcept { return shape_.height; }
  std::size_t alpha() const noexcept { return alpha_; }

  std::span<const float> values() const noexcept { return values_; }
  std::span<const float> plane(std::size_t j) const;

  float at(std::size_t j, std::size_t pixel) const { return values_[j * shape_.pixels() + pixel]; }

 private:
  ProbStack(Shape shape, std::size_t alpha, std::vector<float> values)
      : shape_(shape), alpha_(alpha), values_(std::move(values)) {}

  Shape shape_;
  std::size_t alpha_ = 0;
  std::vector<float> values_;
};

/// Same as ProbStack::create; the name used by ingest code.
inline ProbStack validate_stack(std::size_t width, std::size_t height, std::size_t alpha,
                                std::vector<float> values) {
  return ProbStack::create(width, height, alpha, std::move(values));
}

/// Row-major {0,1} grid.
class BinaryMask {
 public:
  BinaryMask() = default;
  BinaryMask(Shape shape, std::vector<std::uint8_t> bits);
  static BinaryMask zeros(Shape shape) { return {shape, std::vector<std::uint8_t>(shape.pixels(), 0)}; }
  static BinaryMask ones(Shape shape) { return {shape, std::vector<std::uint8_t>(shape.pixels(), 1)}; }

  Shape shape() const noexcept { return shape_; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t height() const noexcept { return shape_.height; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(std::size_t x, std::size_t y) const { return bits_[y * shape_.width + x] != 0; }
  std::size_t count() const noexcept;

  friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

 private:
  Shape shape_;
  std::vector<std::uint8_t> bits_;
};

BinaryMask complement(const BinaryMask& mask);

/// Row-major grid of doubles. Used for mean predictions and uncertainty maps.
class Grid {
 public:
  Grid() = default;
  Grid(Shape shape, std::vector<double> values);

  Shape shape() const noexcept { return shape_; }
  std::size_t width() const noexcept { return shape_.width; }
  std::size_t height() const noexcept { return shape_.height; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double at(std::size_t x, std::size_t y) const { return values_[y * shape_.width + x]; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// Per-pixel inter-percentile spread; every value in [0,1].
class UncertaintyMap : public Grid {
 public:
  UncertaintyMap() = default;
  UncertaintyMap(Shape shape, std::vector<double> values);
};

enum class ClassLabel { Melanoma, Nevus, SeborrheicKeratosis };

inline constexpr ClassLabel kAllClasses[] = {ClassLabel::Melanoma, ClassLabel::Nevus,
                                             ClassLabel::SeborrheicKeratosis};

/// Manifest spelling: "melanoma", "nevus", "seborrheic_keratosis".
std::string_view to_string(ClassLabel label);
std::optional<ClassLabel> parse_class(std::string_view text);

/// Dummy encoding (C1, C2, C3) with exactly one entry set.
struct ClassDummies {
  double c1 = 0, c2 = 0, c3 = 0;
};
ClassDummies dummies(ClassLabel label);

struct ImageRecord {
  std::string id;
  ClassLabel label = ClassLabel::Melanoma;
  std::filesystem::path stack_path;
  std::filesystem::path gt_path;
};

}  // namespace uqseg
