// Copyright 2026 The areaot Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Instance builders: grid cost matrices, PGM image histograms, seeded random
// problems and synthetic stroke images.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "areaot/problem.hpp"

namespace areaot {

// SplitMix64 (Steele, Lea, Flood 2014). Constants are fixed so that seeded
// instances are reproducible across platforms and standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard exponential variate.
  double exponential() { return -std::log1p(-uniform()); }

 private:
  std::uint64_t state_;
};

inline constexpr std::size_t kDefaultMaxCostEntries = std::size_t{1} << 26;

namespace detail {

inline std::size_t checked_grid_size(std::size_t w, std::size_t h, std::size_t max_entries) {
  if (w < 1 || h < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  const std::size_t n = w * h;
  if (n / w != h || n > max_entries / n) {
    throw std::invalid_argument("grid " + std::to_string(w) + "x" + std::to_string(h) +
                                " exceeds the cost-matrix memory cap of " +
                                std::to_string(max_entries) + " entries");
  }
  return n;
}

template <class Metric>
SquareMatrix grid_cost(std::size_t w, std::size_t h, std::size_t max_entries, Metric metric) {
  const std::size_t n = checked_grid_size(w, h, max_entries);
  SquareMatrix C(n);
  for (std::size_t a = 0; a < n; ++a) {
    const double ra = static_cast<double>(a / w), ca = static_cast<double>(a % w);
    for (std::size_t b = 0; b < n; ++b) {
      const double rb = static_cast<double>(b / w), cb = static_cast<double>(b % w);
      C(a, b) = metric(std::abs(ra - rb), std::abs(ca - cb));
    }
  }
  return C;
}

}  // namespace detail

// C[(i1,j1),(i2,j2)] = |i1 - i2| + |j1 - j2| over row-major pixels of a w x h grid.
inline SquareMatrix cost_manhattan(std::size_t w, std::size_t h,
                                   std::size_t max_entries = kDefaultMaxCostEntries) {
  return detail::grid_cost(w, h, max_entries, [](double di, double dj) { return di + dj; });
}

inline SquareMatrix cost_euclidean(std::size_t w, std::size_t h,
                                   std::size_t max_entries = kDefaultMaxCostEntries) {
  return detail::grid_cost(w, h, max_entries,
                           [](double di, double dj) { return std::sqrt(di * di + dj * dj); });
}

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  int maxval = 255;
  std::vector<int> pixels;  // row-major
};

// Plain-text PGM ("P2"); '#' starts a comment running to end of line.
inline GrayImage parse_pgm(std::string_view text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  bool in_comment = false;
  for (char ch : text) {
    if (ch == '#') in_comment = true;
    if (ch == '\n' || ch == '\r') in_comment = false;
    cleaned.push_back(in_comment ? ' ' : ch);
  }
  std::istringstream in(cleaned);
  std::string magic;
  if (!(in >> magic) || magic != "P2") throw std::invalid_argument("pgm: expected P2 header");
  long long w = 0, h = 0, maxval = 0;
  if (!(in >> w >> h >> maxval)) throw std::invalid_argument("pgm: malformed header");
  if (w < 1 || h < 1) throw std::invalid_argument("pgm: dimensions must be positive");
  if (maxval < 1 || maxval > 65535) throw std::invalid_argument("pgm: maxval out of range");
  GrayImage img;
  img.width = static_cast<std::size_t>(w);
  img.height = static_cast<std::size_t>(h);
  img.maxval = static_cast<int>(maxval);
  img.pixels.resize(img.width * img.height);
  for (int& px : img.pixels) {
    long long v = 0;
    if (!(in >> v)) throw std::invalid_argument("pgm: truncated pixel data");
    if (v < 0 || v > maxval) throw std::invalid_argument("pgm: pixel value out of range");
    px = static_cast<int>(v);
  }
  return img;
}

inline std::string format_pgm(const GrayImage& img) {
  std::ostringstream out;
  out << "P2\n" << img.width << ' ' << img.height << '\n' << img.maxval << '\n';
  for (std::size_t i = 0; i < img.height; ++i) {
    for (std::size_t j = 0; j < img.width; ++j) {
      if (j) out << ' ';
      out << img.pixels[i * img.width + j];
    }
    out << '\n';
  }
  return out.str();
}

// Keeps pixels at even row and column indices.
inline GrayImage downsample_stride2(const GrayImage& img) {
  GrayImage out;
  out.width = (img.width + 1) / 2;
  out.height = (img.height + 1) / 2;
  out.maxval = img.maxval;
  out.pixels.resize(out.width * out.height);
  for (std::size_t i = 0; i < out.height; ++i)
    for (std::size_t j = 0; j < out.width; ++j)
      out.pixels[i * out.width + j] = img.pixels[(2 * i) * img.width + 2 * j];
  return out;
}

// Intensities scaled to [0, 1] by maxval, plus noise_floor per pixel, then
// normalized to unit mass.
inline Vector image_to_distribution(const GrayImage& img, double noise_floor) {
  if (!(noise_floor >= 0.0)) throw std::invalid_argument("noise_floor must be >= 0");
  Vector dist(img.pixels.size());
  double total = 0.0;
  for (std::size_t k = 0; k < dist.size(); ++k) {
    dist[k] = static_cast<double>(img.pixels[k]) / img.maxval + noise_floor;
    total += dist[k];
  }
  if (!(total > 0.0)) throw std::invalid_argument("image has zero total intensity");
  for (double& v : dist) v /= total;
  return dist;
}

inline Vector image_to_distribution(std::string_view pgm_text, double noise_floor,
                                    bool downsample) {
  GrayImage img = parse_pgm(pgm_text);
  if (downsample) img = downsample_stride2(img);
  return image_to_distribution(img, noise_floor);
}

// Costs i.i.d. uniform on [0, 1] rescaled so d_max = 1; marginals are
// normalized exponential variates (flat Dirichlet). Draw order: costs
// row-major, then r, then c.
inline Problem gen_random_instance(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_random_instance: n must be >= 1");
  SplitMix64 rng(seed);
  SquareMatrix C(n);
  double top = 0.0;
  for (double& v : C.data) {
    v = rng.uniform();
    top = std::max(top, v);
  }
  if (top > 0.0)
    for (double& v : C.data) v /= top;
  Vector r(n), c(n);
  for (double& v : r) v = rng.exponential();
  for (double& v : c) v = rng.exponential();
  return build_problem(C, r, c);
}

// A handwritten-"1"-like stroke: a slanted bar with a soft edge, seeded
// position, slant and thickness.
inline GrayImage synthetic_stroke_image(std::uint64_t seed, std::size_t width = 28,
                                        std::size_t height = 28) {
  SplitMix64 rng(seed);
  const double cx = width * rng.uniform(0.38, 0.62);
  const double slant = rng.uniform(-0.35, 0.35);
  const double half_width = std::max(1.0, width * rng.uniform(0.05, 0.09));
  const double top = height * rng.uniform(0.12, 0.22);
  const double bottom = height * rng.uniform(0.78, 0.9);
  const double mid = 0.5 * (top + bottom);
  GrayImage img;
  img.width = width;
  img.height = height;
  img.maxval = 255;
  img.pixels.assign(width * height, 0);
  for (std::size_t i = 0; i < height; ++i) {
    const double row = static_cast<double>(i) + 0.5;
    if (row < top || row > bottom) continue;
    const double center = cx + slant * (row - mid);
    for (std::size_t j = 0; j < width; ++j) {
      const double dist = std::abs(static_cast<double>(j) + 0.5 - center);
      const double v = std::clamp(1.0 - (dist - half_width), 0.0, 1.0);
      img.pixels[i * width + j] = static_cast<int>(std::lround(255.0 * v));
    }
  }
  return img;
}

}  // namespace areaot
