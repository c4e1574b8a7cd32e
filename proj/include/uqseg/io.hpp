#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uqseg/core.hpp"

namespace uqseg {

// UQS1 stack container, all integers and reals little-endian:
//   bytes 0..3   magic "UQS1"
//   bytes 4..15  width, height, alpha as uint32
//   bytes 16..   width*height*alpha IEEE-754 binary32, iteration-major
inline constexpr char kStackMagic[4] = {'U', 'Q', 'S', '1'};

std::vector<std::uint8_t> encode_stack(const ProbStack& stack);
ProbStack decode_stack(std::span<const std::uint8_t> bytes);

ProbStack read_stack(const std::filesystem::path& path);
void write_stack(const ProbStack& stack, const std::filesystem::path& path);

/// Binary 8-bit PGM (P5). Raw values >= 128 map to 1.
BinaryMask decode_mask(std::span<const std::uint8_t> bytes);
BinaryMask read_mask(const std::filesystem::path& path);
/// Writes P5 with maxval 255; foreground 255, background 0.
void write_mask(const BinaryMask& mask, const std::filesystem::path& path);

struct RgbImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> rgb;  // row-major, 3 bytes per pixel

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

std::vector<std::uint8_t> encode_ppm(const RgbImage& image);
void write_ppm(const RgbImage& image, const std::filesystem::path& path);

using Manifest = std::vector<ImageRecord>;

/// JSON-lines manifest; relative stack/gt paths resolve against the manifest's
/// directory. Blank lines are skipped.
Manifest read_manifest(const std::filesystem::path& path);
/// Paths are written as given (callers pass manifest-relative paths).
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

// CSV helpers. Reals are written in shortest round-trip form; an undefined
// value is an empty field.
std::string format_real(double v);
std::string format_real(std::optional<double> v);
std::optional<double> parse_optional_real(std::string_view field);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws MissingKey.
  std::size_t column(std::string_view name) const;
};

/// Parses a header-led CSV without quoting. Throws IoError on ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace uqseg
