#include "uqseg/core.hpp"

#include <algorithm>
#include <sstream>

namespace uqseg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::MissingKey: return "MissingKey";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::MissingPredictor: return "MissingPredictor";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingPanel: return "MissingPanel";
    case ErrorCode::MissingUpstream: return "MissingUpstream";
  }
  return "Unknown";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidSpec:
      return 2;
    case ErrorCode::IoError:
    case ErrorCode::MissingUpstream:
      return 3;
    case ErrorCode::InsufficientData:
    case ErrorCode::ConstantInput:
    case ErrorCode::TooFewSamples:
    case ErrorCode::EmptyInput:
      return 5;
    default:
      return 4;
  }
}

void require_same_shape(Shape a, Shape b, std::string_view context) {
  if (a != b) {
    std::ostringstream msg;
    msg << context << ": " << a.width << "x" << a.height << " vs " << b.width << "x" << b.height;
    throw Error(ErrorCode::ShapeMismatch, msg.str());
  }
}

ProbStack ProbStack::create(std::size_t width, std::size_t height, std::size_t alpha,
                            std::vector<float> values) {
  if (width == 0 || height == 0 || alpha == 0) {
    throw Error(ErrorCode::ShapeMismatch, "stack dimensions must be >= 1");
  }
  const std::size_t expected = width * height * alpha;
  if (values.size() != expected) {
    throw Error(ErrorCode::ShapeMismatch, "stack holds " + std::to_string(values.size()) +
                                              " values, expected " + std::to_string(expected));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    const float v = values[i];
    // Written as a negated range test so NaN is rejected too.
    if (!(v >= 0.0f && v <= 1.0f)) {
      throw Error(ErrorCode::ValueOutOfRange,
                  "stack value " + std::to_string(v) + " at index " + std::to_string(i));
    }
  }
  return ProbStack(Shape{width, height}, alpha, std::move(values));
}

std::span<const float> ProbStack::plane(std::size_t j) const {
  const std::size_t n = shape_.pixels();
  return std::span<const float>(values_).subspan(j * n, n);
}

BinaryMask::BinaryMask(Shape shape, std::vector<std::uint8_t> bits) : shape_(shape), bits_(std::move(bits)) {
  if (bits_.size() != shape_.pixels()) {
    throw Error(ErrorCode::ShapeMismatch, "mask length does not match its dimensions");
  }
  for (auto b : bits_) {
    if (b > 1) throw Error(ErrorCode::ValueOutOfRange, "mask bit outside {0,1}");
  }
}

std::size_t BinaryMask::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

BinaryMask complement(const BinaryMask& mask) {
  std::vector<std::uint8_t> flipped(mask.bits().begin(), mask.bits().end());
  for (auto& b : flipped) b ^= 1u;
  return BinaryMask(mask.shape(), std::move(flipped));
}

Grid::Grid(Shape shape, std::vector<double> values) : shape_(shape), values_(std::move(values)) {
  if (values_.size() != shape_.pixels()) {
    throw Error(ErrorCode::ShapeMismatch, "grid length does not match its dimensions");
  }
}

UncertaintyMap::UncertaintyMap(Shape shape, std::vector<double> values) : Grid(shape, std::move(values)) {
  for (double v : this->values()) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(ErrorCode::ValueOutOfRange, "uncertainty value " + std::to_string(v));
    }
  }
}

std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Melanoma: return "melanoma";
    case ClassLabel::Nevus: return "nevus";
    case ClassLabel::SeborrheicKeratosis: return "seborrheic_keratosis";
  }
  return "unknown";
}

std::optional<ClassLabel> parse_class(std::string_view text) {
  for (auto label : kAllClasses) {
    if (to_string(label) == text) return label;
  }
  return std::nullopt;
}

ClassDummies dummies(ClassLabel label) {
  switch (label) {
    case ClassLabel::Melanoma: return {1, 0, 0};
    case ClassLabel::Nevus: return {0, 1, 0};
    case ClassLabel::SeborrheicKeratosis: return {0, 0, 1};
  }
  return {};
}

}  // namespace uqseg
