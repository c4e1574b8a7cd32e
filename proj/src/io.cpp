#include "uqseg/io.hpp"

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace uqseg {
namespace {

static_assert(std::endian::native == std::endian::little,
              "UQS1 encoding assumes a little-endian host");

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[offset + i]) << (8 * i);
  return v;
}

// Reads one whitespace-delimited PNM header token, skipping '#' comments.
std::string pnm_token(std::span<const std::uint8_t> bytes, std::size_t& pos) {
  for (;;) {
    while (pos < bytes.size() && std::isspace(bytes[pos])) ++pos;
    if (pos < bytes.size() && bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      continue;
    }
    break;
  }
  std::string token;
  while (pos < bytes.size() && !std::isspace(bytes[pos]) && bytes[pos] != '#') {
    token.push_back(static_cast<char>(bytes[pos++]));
  }
  return token;
}

std::size_t parse_header_int(const std::string& token) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size() || token.empty()) {
    throw Error(ErrorCode::UnsupportedFormat, "bad PGM header field '" + token + "'");
  }
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_stack(const ProbStack& stack) {
  std::vector<std::uint8_t> out;
  out.reserve(16 + 4 * stack.values().size());
  out.insert(out.end(), std::begin(kStackMagic), std::end(kStackMagic));
  put_u32(out, static_cast<std::uint32_t>(stack.width()));
  put_u32(out, static_cast<std::uint32_t>(stack.height()));
  put_u32(out, static_cast<std::uint32_t>(stack.alpha()));
  const std::size_t offset = out.size();
  out.resize(offset + 4 * stack.values().size());
  std::memcpy(out.data() + offset, stack.values().data(), 4 * stack.values().size());
  return out;
}

ProbStack decode_stack(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kStackMagic, 4) != 0) {
    throw Error(ErrorCode::BadMagic, "not a UQS1 stack");
  }
  if (bytes.size() < 16) throw Error(ErrorCode::TruncatedFile, "UQS1 header is incomplete");
  const std::size_t width = get_u32(bytes, 4);
  const std::size_t height = get_u32(bytes, 8);
  const std::size_t alpha = get_u32(bytes, 12);
  const std::size_t count = width * height * alpha;
  const std::size_t payload = bytes.size() - 16;
  if (payload < 4 * count) {
    throw Error(ErrorCode::TruncatedFile, "payload has " + std::to_string(payload) + " bytes, header needs " +
                                              std::to_string(4 * count));
  }
  if (payload > 4 * count) {
    throw Error(ErrorCode::ShapeMismatch, "trailing bytes after UQS1 payload");
  }
  std::vector<float> values(count);
  std::memcpy(values.data(), bytes.data() + 16, 4 * count);
  return ProbStack::create(width, height, alpha, std::move(values));
}

ProbStack read_stack(const std::filesystem::path& path) { return decode_stack(read_file(path)); }

void write_stack(const ProbStack& stack, const std::filesystem::path& path) {
  write_file(path, encode_stack(stack));
}

BinaryMask decode_mask(std::span<const std::uint8_t> bytes) {
  std::size_t pos = 0;
  if (pnm_token(bytes, pos) != "P5") throw Error(ErrorCode::UnsupportedFormat, "mask is not a binary PGM (P5)");
  const std::size_t width = parse_header_int(pnm_token(bytes, pos));
  const std::size_t height = parse_header_int(pnm_token(bytes, pos));
  const std::size_t maxval = parse_header_int(pnm_token(bytes, pos));
  if (width == 0 || height == 0) throw Error(ErrorCode::UnsupportedFormat, "PGM has zero size");
  if (maxval == 0 || maxval > 255) throw Error(ErrorCode::UnsupportedFormat, "only 8-bit PGM is supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw Error(ErrorCode::TruncatedFile, "PGM header not terminated");
  }
  ++pos;
  const std::size_t n = width * height;
  if (bytes.size() - pos < n) throw Error(ErrorCode::TruncatedFile, "PGM raster is short");
  std::vector<std::uint8_t> bits(n);
  for (std::size_t i = 0; i < n; ++i) bits[i] = bytes[pos + i] >= 128 ? 1 : 0;
  return BinaryMask(Shape{width, height}, std::move(bits));
}

BinaryMask read_mask(const std::filesystem::path& path) { return decode_mask(read_file(path)); }

void write_mask(const BinaryMask& mask, const std::filesystem::path& path) {
  const std::string header = "P5\n" + std::to_string(mask.width()) + " " + std::to_string(mask.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (auto b : mask.bits()) out.push_back(b ? 255 : 0);
  write_file(path, out);
}

std::vector<std::uint8_t> encode_ppm(const RgbImage& image) {
  const std::string header =
      "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.rgb.begin(), image.rgb.end());
  return out;
}

void write_ppm(const RgbImage& image, const std::filesystem::path& path) { write_file(path, encode_ppm(image)); }

Manifest read_manifest(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  const auto base = path.parent_path();
  Manifest manifest;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::UnsupportedFormat, where + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(ErrorCode::UnsupportedFormat, where + ": expected a JSON object");
    for (const char* key : {"id", "class", "stack", "gt"}) {
      if (!obj.contains(key) || !obj[key].is_string()) {
        throw Error(ErrorCode::MissingKey, where + ": missing string key '" + key + "'");
      }
    }
    ImageRecord rec;
    rec.id = obj["id"].get<std::string>();
    if (rec.id.empty() || rec.id.find_first_of(",\n\r/") != std::string::npos) {
      throw Error(ErrorCode::UnsupportedFormat, where + ": id must be non-empty without ',' or '/'");
    }
    const auto cls = obj["class"].get<std::string>();
    const auto label = parse_class(cls);
    if (!label) throw Error(ErrorCode::UnknownClass, where + ": '" + cls + "'");
    rec.label = *label;
    if (!seen.insert(rec.id).second) throw Error(ErrorCode::DuplicateId, where + ": '" + rec.id + "'");
    std::filesystem::path stack = obj["stack"].get<std::string>();
    std::filesystem::path gt = obj["gt"].get<std::string>();
    rec.stack_path = stack.is_absolute() ? stack : base / stack;
    rec.gt_path = gt.is_absolute() ? gt : base / gt;
    manifest.push_back(std::move(rec));
  }
  return manifest;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& path) {
  std::string text;
  for (const auto& rec : manifest) {
    nlohmann::ordered_json obj;
    obj["id"] = rec.id;
    obj["class"] = std::string(to_string(rec.label));
    obj["stack"] = rec.stack_path.generic_string();
    obj["gt"] = rec.gt_path.generic_string();
    text += obj.dump();
    text += '\n';
  }
  write_text(path, text);
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to " + path.string());
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

std::string read_text(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return std::string(bytes.begin(), bytes.end());
}

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string format_real(std::optional<double> v) { return v ? format_real(*v) : std::string(); }

std::optional<double> parse_optional_real(std::string_view field) {
  if (field.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(ErrorCode::UnsupportedFormat, "bad real '" + std::string(field) + "'");
  }
  return v;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::MissingKey, "CSV column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  auto split = [](const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return fields;
  };
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::IoError, path.string() + " is empty");
  table.header = split(line);
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split(line);
    if (fields.size() != table.header.size()) {
      throw Error(ErrorCode::IoError, path.string() + ": ragged row '" + line + "'");
    }
    table.rows.push_back(std::move(fields));
  }
  return table;
}

}  // namespace uqseg
