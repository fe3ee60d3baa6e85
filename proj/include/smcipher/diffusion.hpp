#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "smcipher/error.hpp"

namespace smcipher {

// Seed of the diffusion chain, c_{-1}. Production keys come out of
// derive_round_keys already clamped away from 0, 1/2 and 1; this type only
// checks the closed unit interval so tests can probe degenerate seeds.
struct DiffusionKey {
  double k_d;

  explicit DiffusionKey(double value) : k_d(value) {
    detail::require(value >= 0.0 && value <= 1.0, "DiffusionKey: K_d must lie in [0, 1]");
  }
};

// Logistic map at full chaos, 4x(1-x). Build with -ffp-contract=off so the
// product is never fused; ciphertexts depend on its exact rounding.
inline double logistic(double x) {
  detail::require(x >= 0.0 && x <= 1.0, "logistic: x must lie in [0, 1]");
  return 4.0 * x * (1.0 - x);
}

// First `bits` binary digits after the point: floor(x * 2^bits) mod 2^bits.
inline std::uint32_t quantize(double x, unsigned bits) {
  detail::require(x >= 0.0 && x <= 1.0, "quantize: x must lie in [0, 1]");
  detail::require(bits >= 1 && bits <= 52, "quantize: bit count must be in [1, 52]");
  const auto scaled = static_cast<std::uint64_t>(std::ldexp(x, static_cast<int>(bits)));
  return static_cast<std::uint32_t>(scaled & ((std::uint64_t{1} << bits) - 1));
}

// Maps a gray value to the cell midpoint (c + 0.5) / G, strictly inside (0, 1).
inline double normalize_pixel(std::uint32_t c, std::uint32_t levels) {
  detail::require(c < levels, "normalize_pixel: value out of range");
  return (static_cast<double>(c) + 0.5) / static_cast<double>(levels);
}

namespace detail {

// Unchecked forms for the per-pixel loops; inputs are in range by construction.
// Scaling by 2^B and 2^-B is exact, so these match quantize() and
// normalize_pixel() bit for bit.
inline std::uint32_t keystream_word(double state, double scale, std::uint32_t mask) {
  const double f = 4.0 * state * (1.0 - state);
  return static_cast<std::uint32_t>(f * scale) & mask;
}

inline double midpoint(std::uint32_t c, double inv_levels) { return (static_cast<double>(c) + 0.5) * inv_levels; }

inline void require_diffusion_input(std::span<const std::uint16_t> values, unsigned bits) {
  require(!values.empty(), "diffusion: empty sequence");
  require(bits >= 1 && bits <= 16, "diffusion: bit depth must be in [1, 16]");
  const std::uint32_t levels = std::uint32_t{1} << bits;
  for (auto v : values) require(v < levels, "diffusion: value exceeds 2^B - 1");
}

}  // namespace detail

// c_i = v_i XOR q(f(c_{i-1}), B) with c_{-1} = K_d; every later c_{i-1} is
// fed back through normalize_pixel.
inline std::vector<std::uint16_t> diffuse(std::span<const std::uint16_t> values, DiffusionKey key,
                                          unsigned bits) {
  detail::require_diffusion_input(values, bits);
  const double scale = std::ldexp(1.0, static_cast<int>(bits));
  const double inv_levels = 1.0 / scale;
  const std::uint32_t mask = (std::uint32_t{1} << bits) - 1;
  std::vector<std::uint16_t> out(values.size());
  double state = key.k_d;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint32_t c = values[i] ^ detail::keystream_word(state, scale, mask);
    out[i] = static_cast<std::uint16_t>(c);
    state = detail::midpoint(c, inv_levels);
  }
  return out;
}

// The keystream depends only on earlier ciphertext values, so it can be
// regenerated front to back.
inline std::vector<std::uint16_t> undiffuse(std::span<const std::uint16_t> cipher, DiffusionKey key,
                                            unsigned bits) {
  detail::require_diffusion_input(cipher, bits);
  const double scale = std::ldexp(1.0, static_cast<int>(bits));
  const double inv_levels = 1.0 / scale;
  const std::uint32_t mask = (std::uint32_t{1} << bits) - 1;
  std::vector<std::uint16_t> out(cipher.size());
  double state = key.k_d;
  for (std::size_t i = 0; i < cipher.size(); ++i) {
    out[i] = static_cast<std::uint16_t>(cipher[i] ^ detail::keystream_word(state, scale, mask));
    state = detail::midpoint(cipher[i], inv_levels);
  }
  return out;
}

}  // namespace smcipher
