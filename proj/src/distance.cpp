#include "uqseg/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uqseg {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// 1D squared distance transform of a sampled function (lower envelope of
// parabolas). Infinite samples never contribute to the envelope.
void transform_1d(const std::vector<double>& f, std::vector<double>& d, std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    double s = 0;
    for (;;) {
      const int p = v[k];
      s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s > z[k]) break;
      --k;  // z[0] is -inf, so k stays >= 0
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = kInf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), kInf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

}  // namespace

std::vector<double> squared_distance_to(const BinaryMask& mask, bool target) {
  const std::size_t w = mask.width(), h = mask.height();
  std::vector<double> grid(w * h);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = mask[i] == target ? 0.0 : kInf;

  const std::size_t len = std::max(w, h);
  std::vector<double> f, d;
  std::vector<int> v(len);
  std::vector<double> z(len + 1);

  f.resize(h);
  d.resize(h);
  for (std::size_t x = 0; x < w; ++x) {
    for (std::size_t y = 0; y < h; ++y) f[y] = grid[y * w + x];
    transform_1d(f, d, v, z);
    for (std::size_t y = 0; y < h; ++y) grid[y * w + x] = d[y];
  }
  f.resize(w);
  d.resize(w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) f[x] = grid[y * w + x];
    transform_1d(f, d, v, z);
    for (std::size_t x = 0; x < w; ++x) grid[y * w + x] = d[x];
  }
  return grid;
}

std::vector<double> signed_distance(const BinaryMask& mask) {
  const auto to_outside = squared_distance_to(mask, false);
  const auto to_inside = squared_distance_to(mask, true);
  std::vector<double> out(to_outside.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = mask[i] ? std::sqrt(to_outside[i]) - 0.5 : -(std::sqrt(to_inside[i]) - 0.5);
  }
  return out;
}

namespace {

// Labels 4-connected foreground components; returns the component count.
std::size_t label_components(const BinaryMask& mask, std::vector<int>& labels) {
  const std::size_t w = mask.width(), h = mask.height();
  labels.assign(w * h, -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < w * h; ++start) {
    if (!mask[start] || labels[start] >= 0) continue;
    labels[start] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      const std::size_t x = i % w, y = i / w;
      auto visit = [&](std::size_t j) {
        if (mask[j] && labels[j] < 0) {
          labels[j] = next;
          stack.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < w) visit(i + 1);
      if (y > 0) visit(i - w);
      if (y + 1 < h) visit(i + w);
    }
    ++next;
  }
  return static_cast<std::size_t>(next);
}

}  // namespace

std::size_t count_components(const BinaryMask& mask) {
  std::vector<int> labels;
  return label_components(mask, labels);
}

BinaryMask largest_component(const BinaryMask& mask) {
  std::vector<int> labels;
  const std::size_t n = label_components(mask, labels);
  if (n <= 1) return mask;
  std::vector<std::size_t> sizes(n, 0);
  for (int l : labels) {
    if (l >= 0) ++sizes[static_cast<std::size_t>(l)];
  }
  // Ties go to the lowest label, i.e. the first component in raster order.
  std::size_t best = 0;
  for (std::size_t l = 1; l < n; ++l) {
    if (sizes[l] > sizes[best]) best = l;
  }
  std::vector<std::uint8_t> bits(labels.size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = labels[i] == static_cast<int>(best) ? 1 : 0;
  return BinaryMask(mask.shape(), std::move(bits));
}

}  // namespace uqseg
