#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "smcipher/error.hpp"
#include "smcipher/key_schedule.hpp"
#include "smcipher/pixel_grid.hpp"

namespace smcipher {

enum class Variant { proposed, baseline };

// Parameters of one discretized standard-map permutation on an N x N lattice.
struct PermKey {
  std::uint32_t k_c;
  std::uint32_t r_x;
  std::uint32_t r_y;
  std::size_t n;

  PermKey(std::uint32_t k_c_, std::uint32_t r_x_, std::uint32_t r_y_, std::size_t n_)
      : k_c(k_c_), r_x(r_x_), r_y(r_y_), n(n_) {
    detail::require(n >= 2, "PermKey: side length must be at least 2");
    detail::require(k_c >= 1, "PermKey: K_C must be a positive integer");
    detail::require(r_x < n && r_y < n, "PermKey: scan couple out of range");
  }

  PermKey(const PermKeyParams& p, std::size_t n_) : PermKey(p.k_c, p.r_x, p.r_y, n_) {}
};

struct Cell {
  std::size_t x;
  std::size_t y;

  friend bool operator==(const Cell&, const Cell&) = default;
};

namespace detail {

inline std::size_t floor_mod(std::int64_t a, std::size_t n) {
  const auto m = static_cast<std::int64_t>(n);
  const auto r = a % m;
  return static_cast<std::size_t>(r < 0 ? r + m : r);
}

inline std::int64_t rounded_sine(std::size_t k, std::size_t n, std::uint32_t k_c) {
  const double angle = 2.0 * std::numbers::pi / static_cast<double>(n) * static_cast<double>(k);
  return static_cast<std::int64_t>(std::round(static_cast<double>(k_c) * std::sin(angle)));
}

// round(K_C * sin(2*pi*k/N)), half away from zero, for k in [0, N). Forward
// and inverse maps share rounded_sine so they agree bit for bit.
inline std::vector<std::int64_t> sine_table(std::size_t n, std::uint32_t k_c) {
  std::vector<std::int64_t> table(n);
  for (std::size_t k = 0; k < n; ++k) table[k] = rounded_sine(k, n, k_c);
  return table;
}

}  // namespace detail

// Forward discretized standard map with random scan couple.
inline Cell std_map_point(std::size_t x, std::size_t y, const PermKey& key) {
  detail::require(x < key.n && y < key.n, "std_map_point: cell out of range");
  const auto sx = static_cast<std::int64_t>(x + y) + key.r_x + key.r_y;
  const std::size_t x_new = detail::floor_mod(sx, key.n);
  const auto sy = static_cast<std::int64_t>(y) + key.r_y + detail::rounded_sine(x_new, key.n, key.k_c);
  return {x_new, detail::floor_mod(sy, key.n)};
}

inline Cell std_map_inverse_point(std::size_t x_new, std::size_t y_new, const PermKey& key) {
  detail::require(x_new < key.n && y_new < key.n, "std_map_inverse_point: cell out of range");
  const auto sy = static_cast<std::int64_t>(y_new) - key.r_y - detail::rounded_sine(x_new, key.n, key.k_c);
  const std::size_t y = detail::floor_mod(sy, key.n);
  const auto sx = static_cast<std::int64_t>(x_new) - static_cast<std::int64_t>(y) - key.r_x - key.r_y;
  return {detail::floor_mod(sx, key.n), y};
}

// forward[i] is the destination scan index of source scan index i.
struct Permutation {
  std::vector<std::uint32_t> forward;
  std::size_t n;
};

inline Permutation build_permutation(const PermKey& key) {
  const std::size_t n = key.n;
  const auto sines = detail::sine_table(n, key.k_c);

  // Row shift applied after the sine term, reduced to [0, N).
  std::vector<std::uint32_t> row_shift(n);
  for (std::size_t k = 0; k < n; ++k) {
    row_shift[k] = static_cast<std::uint32_t>(detail::floor_mod(sines[k] + key.r_y, n));
  }

  Permutation perm{std::vector<std::uint32_t>(n * n), n};
  const std::size_t couple = (key.r_x + key.r_y) % n;
  for (std::size_t y = 0; y < n; ++y) {
    std::size_t x_new = (y + couple) % n;
    for (std::size_t x = 0; x < n; ++x) {
      std::size_t y_new = y + row_shift[x_new];
      if (y_new >= n) y_new -= n;
      perm.forward[y * n + x] = static_cast<std::uint32_t>(y_new * n + x_new);
      if (++x_new == n) x_new = 0;
    }
  }

  std::vector<bool> hit(n * n, false);
  for (auto target : perm.forward) {
    if (hit[target]) throw std::logic_error("build_permutation: standard map is not a bijection");
    hit[target] = true;
  }
  return perm;
}

// Add-and-rotate value mixing: rotate ((p + v_prev) mod G) right by the low
// three bits of v_prev (taken mod B so narrow depths still rotate validly).
namespace detail {

inline unsigned rotation_of(std::uint32_t v_prev, unsigned bits) {
  const unsigned low3 = v_prev & 7u;
  return bits > 7 ? low3 : low3 % bits;
}

}  // namespace detail

inline std::uint32_t mix_value(std::uint32_t p, std::uint32_t v_prev, unsigned bits) {
  const std::uint32_t mask = (std::uint32_t{1} << bits) - 1;
  const std::uint32_t sum = (p + v_prev) & mask;
  const unsigned shift = detail::rotation_of(v_prev, bits);
  if (shift == 0) return sum;
  return ((sum >> shift) | (sum << (bits - shift))) & mask;
}

inline std::uint32_t unmix_value(std::uint32_t v, std::uint32_t v_prev, unsigned bits) {
  const std::uint32_t mask = (std::uint32_t{1} << bits) - 1;
  const unsigned shift = detail::rotation_of(v_prev, bits);
  const std::uint32_t sum = shift == 0 ? v : ((v << shift) | (v >> (bits - shift))) & mask;
  return (sum - v_prev) & mask;
}

namespace detail {

inline void require_seed(std::uint32_t v_seed, const PixelGrid& img) {
  require(v_seed < img.levels(), "confusion: v_seed must lie in [0, G-1]");
}

inline void require_key_fits(const PermKey& key, const PixelGrid& img) {
  require(key.n == img.size(), "confusion: key side length does not match the image");
}

}  // namespace detail

// One confusion round: pixels are relocated by the standard map, then the
// proposed variant runs the add-and-rotate chain over the permuted image in
// destination scan order, v_d = mix(p_d, v_{d-1}) with v_{-1} = v_seed.
// The chain is strictly sequential; only whole rounds are exposed.
inline PixelGrid confuse_round(const PixelGrid& img, const PermKey& key, std::uint32_t v_seed,
                               Variant variant) {
  detail::require_key_fits(key, img);
  detail::require_seed(v_seed, img);
  const auto perm = build_permutation(key);
  const auto src = img.pixels();
  std::vector<PixelGrid::value_type> out(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) out[perm.forward[i]] = src[i];

  if (variant == Variant::proposed) {
    const unsigned bits = img.bit_depth();
    std::uint32_t v = v_seed;
    for (auto& cell : out) {
      v = mix_value(cell, v, bits);
      cell = static_cast<PixelGrid::value_type>(v);
    }
  }
  return PixelGrid(img.size(), img.bit_depth(), std::move(out));
}

// Each mixed value only needs its destination predecessor, which is still
// present in the input, so unmixing and un-permuting happen in one pass.
inline PixelGrid inverse_confuse_round(const PixelGrid& img, const PermKey& key, std::uint32_t v_seed,
                                       Variant variant) {
  detail::require_key_fits(key, img);
  detail::require_seed(v_seed, img);
  const auto perm = build_permutation(key);
  const auto src = img.pixels();
  std::vector<PixelGrid::value_type> out(src.size());

  if (variant == Variant::baseline) {
    for (std::size_t i = 0; i < src.size(); ++i) out[i] = src[perm.forward[i]];
  } else {
    const unsigned bits = img.bit_depth();
    for (std::size_t i = 0; i < src.size(); ++i) {
      const std::size_t d = perm.forward[i];
      const std::uint32_t prev = d == 0 ? v_seed : src[d - 1];
      out[i] = static_cast<PixelGrid::value_type>(unmix_value(src[d], prev, bits));
    }
  }
  return PixelGrid(img.size(), img.bit_depth(), std::move(out));
}

}  // namespace smcipher
