#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "smcipher/error.hpp"
#include "smcipher/pixel_grid.hpp"

namespace smcipher::synth {

// Homogeneous image at the top gray level.
inline PixelGrid white(std::size_t n, unsigned bits = 8) {
  return PixelGrid::filled(n, bits, static_cast<PixelGrid::value_type>((1u << bits) - 1));
}

// Pixel value equals its column index mod G.
inline PixelGrid gradient(std::size_t n, unsigned bits = 8) {
  std::vector<PixelGrid::value_type> px(n * n);
  const std::size_t levels = std::size_t{1} << bits;
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) px[y * n + x] = static_cast<PixelGrid::value_type>(x % levels);
  return PixelGrid(n, bits, std::move(px));
}

inline PixelGrid uniform_random(std::size_t n, std::uint64_t seed, unsigned bits = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> dist(0, (1u << bits) - 1);
  std::vector<PixelGrid::value_type> px(n * n);
  for (auto& v : px) v = static_cast<PixelGrid::value_type>(dist(rng));
  return PixelGrid(n, bits, std::move(px));
}

// Seeded multi-octave value noise: smooth regions and edges at several
// scales, with the strong neighbour correlation of photographs.
inline PixelGrid value_noise(std::size_t n, std::uint64_t seed, unsigned bits = 8) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> field(n * n, 0.0);

  double amplitude = 1.0;
  for (std::size_t cell = std::max<std::size_t>(n / 4, 2); cell >= 2; cell /= 2) {
    const std::size_t lattice = n / cell + 2;
    std::vector<double> knots(lattice * lattice);
    for (auto& k : knots) k = unit(rng);
    for (std::size_t y = 0; y < n; ++y) {
      const double fy = static_cast<double>(y) / static_cast<double>(cell);
      const auto iy = static_cast<std::size_t>(fy);
      double ty = fy - static_cast<double>(iy);
      ty = ty * ty * (3.0 - 2.0 * ty);
      for (std::size_t x = 0; x < n; ++x) {
        const double fx = static_cast<double>(x) / static_cast<double>(cell);
        const auto ix = static_cast<std::size_t>(fx);
        double tx = fx - static_cast<double>(ix);
        tx = tx * tx * (3.0 - 2.0 * tx);
        const double a = knots[iy * lattice + ix], b = knots[iy * lattice + ix + 1];
        const double c = knots[(iy + 1) * lattice + ix], d = knots[(iy + 1) * lattice + ix + 1];
        const double top = a + (b - a) * tx;
        const double bottom = c + (d - c) * tx;
        field[y * n + x] += amplitude * (top + (bottom - top) * ty);
      }
    }
    amplitude *= 0.55;
    if (cell == 2) break;
  }

  const auto [lo, hi] = std::minmax_element(field.begin(), field.end());
  const double span = std::max(*hi - *lo, 1e-12);
  const double top = static_cast<double>((1u << bits) - 1);
  std::vector<PixelGrid::value_type> px(n * n);
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = static_cast<PixelGrid::value_type>(std::lround((field[i] - *lo) / span * top));
  }
  return PixelGrid(n, bits, std::move(px));
}

// Flip the lowest bit of the bottom-right pixel.
inline PixelGrid flip_last_lsb(const PixelGrid& img) {
  const std::size_t last = img.cell_count() - 1;
  return img.with_pixel(last, static_cast<PixelGrid::value_type>(img[last] ^ 1u));
}

// Lookup by name for the CLI: white, gradient, random, noise.
inline PixelGrid by_name(std::string_view kind, std::size_t n, std::uint64_t seed, unsigned bits = 8) {
  if (kind == "white") return white(n, bits);
  if (kind == "gradient") return gradient(n, bits);
  if (kind == "random") return uniform_random(n, seed, bits);
  if (kind == "noise") return value_noise(n, seed, bits);
  throw contract_error("unknown synthetic image kind");
}

}  // namespace smcipher::synth
