#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smcipher/error.hpp"

namespace smcipher {

// 128-bit secret seed, stored as four big-endian 32-bit words (w0 is the
// first eight hex digits).
class SeedKey {
 public:
  using words_type = std::array<std::uint32_t, 4>;

  explicit SeedKey(const words_type& words) : words_(words) {
    detail::require(words_[0] | words_[1] | words_[2] | words_[3],
                    "SeedKey: the all-zero key is rejected");
  }

  // Exactly 32 hex digits, case-insensitive, no separators.
  static SeedKey from_hex(std::string_view hex) {
    detail::require(hex.size() == 32, "SeedKey: expected exactly 32 hex digits");
    words_type words{};
    for (std::size_t i = 0; i < hex.size(); ++i) {
      const char c = hex[i];
      std::uint32_t nibble = 0;
      if (c >= '0' && c <= '9') {
        nibble = static_cast<std::uint32_t>(c - '0');
      } else if (c >= 'a' && c <= 'f') {
        nibble = static_cast<std::uint32_t>(c - 'a' + 10);
      } else if (c >= 'A' && c <= 'F') {
        nibble = static_cast<std::uint32_t>(c - 'A' + 10);
      } else {
        throw contract_error("SeedKey: non-hex character in key");
      }
      words[i / 8] = (words[i / 8] << 4) | nibble;
    }
    return SeedKey(words);
  }

  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(32);
    for (auto w : words_) {
      for (int shift = 28; shift >= 0; shift -= 4) out.push_back(kDigits[(w >> shift) & 0xFu]);
    }
    return out;
  }

  const words_type& words() const { return words_; }

  // Copy with bit `bit` (0 = least significant bit of w3) toggled.
  SeedKey with_bit_flipped(unsigned bit) const {
    detail::require(bit < 128, "SeedKey: bit index out of range");
    auto w = words_;
    w[3 - bit / 32] ^= std::uint32_t{1} << (bit % 32);
    return SeedKey(w);
  }

  friend bool operator==(const SeedKey&, const SeedKey&) = default;

 private:
  words_type words_;
};

// Skew tent map: x/p on (0, p], (1-x)/(1-p) on (p, 1).
inline double skew_tent_step(double x, double p) {
  detail::require(x > 0.0 && x < 1.0, "skew_tent_step: x must lie in (0, 1)");
  detail::require(p > 0.0 && p < 1.0, "skew_tent_step: p must lie in (0, 1)");
  return x <= p ? x / p : (1.0 - x) / (1.0 - p);
}

// One orbit of the skew tent map. The stored state always stays in the open
// interval: an iterate of exactly 1.0 is pulled back to 1 - 2^-52.
class SkewTentState {
 public:
  SkewTentState(double x, double p) : x_(x), p_(p) {
    detail::require(x > 0.0 && x < 1.0 && p > 0.0 && p < 1.0,
                    "SkewTentState: x and p must lie in (0, 1)");
  }

  // Advances one step and returns the raw iterate in (0, 1].
  double next() {
    const double raw = skew_tent_step(x_, p_);
    x_ = raw >= 1.0 ? 1.0 - 0x1p-52 : raw;
    return raw;
  }

  double x() const { return x_; }
  double p() const { return p_; }

 private:
  double x_;
  double p_;
};

inline constexpr std::uint32_t kMaxStandardMapParameter = 1u << 18;
inline constexpr int kTentWarmup = 64;

struct PermKeyParams {
  std::uint32_t k_c;
  std::uint32_t r_x;
  std::uint32_t r_y;

  friend bool operator==(const PermKeyParams&, const PermKeyParams&) = default;
};

struct StageKeys {
  std::vector<PermKeyParams> confusion;  // one entry per confusion round
  double k_d;                            // diffusion seed in (0, 1)
  std::uint32_t v_seed;                  // value-mixing chain seed in [0, G-1]

  friend bool operator==(const StageKeys&, const StageKeys&) = default;
};

// Sub-keys for m overall rounds of n confusion rounds each.
struct RoundKeys {
  std::vector<StageKeys> stages;

  std::size_t overall_rounds() const { return stages.size(); }
  std::size_t confusion_rounds() const { return stages.empty() ? 0 : stages.front().confusion.size(); }

  friend bool operator==(const RoundKeys&, const RoundKeys&) = default;
};

namespace detail {

inline double seed_word_to_unit(std::uint32_t w) {
  return (static_cast<double>(w) + 1.0) / (4294967296.0 + 2.0);
}

// Break point kept in [1/4, 3/4]: the orbit's Lyapunov exponent equals the
// binary entropy of p, which vanishes at the ends and would leave neighbouring
// seeds unseparated after the warm-up.
inline double seed_word_to_break_point(std::uint32_t w) { return 0.25 + 0.5 * seed_word_to_unit(w); }

inline std::uint32_t scale_to_index(double x, std::uint64_t range) {
  const auto v = static_cast<std::uint64_t>(std::floor(x * static_cast<double>(range)));
  return static_cast<std::uint32_t>(v >= range ? range - 1 : v);
}

// Keeps the diffusion seed off 0, 1/2 and 1, where the logistic orbit collapses.
inline double clamp_diffusion_seed(double x) {
  constexpr double kGuard = 0x1p-20;
  if (x < kGuard) return kGuard;
  if (x > 1.0 - kGuard) return 1.0 - kGuard;
  if (x > 0.5 - kGuard && x < 0.5 + kGuard) return x < 0.5 ? 0.5 - kGuard : 0.5 + kGuard;
  return x;
}

}  // namespace detail

// Expands the seed with two skew tent orbits, orbit 1 seeded from (w0, w1)
// and orbit 2 from (w2, w3). Integer sub-keys are drawn from the fractional
// part of the sum of one iterate of each orbit, so all 128 seed bits reach
// the permutations; K_d alone comes from orbit 2, since a diffusion seed only
// influences the first keystream word of its round. Consumption order per
// stage: (K_C, r_x, r_y) for confusion rounds 1..n, then v_seed, then K_d.
inline RoundKeys derive_round_keys(const SeedKey& seed, std::size_t m, std::size_t n,
                                   std::size_t side, std::uint32_t levels) {
  detail::require(m >= 1 && n >= 1, "derive_round_keys: round counts must be at least 1");
  detail::require(side >= 2, "derive_round_keys: side length must be at least 2");
  detail::require(levels >= 2, "derive_round_keys: need at least two gray levels");

  const auto& w = seed.words();
  SkewTentState integer_orbit(detail::seed_word_to_unit(w[0]), detail::seed_word_to_break_point(w[1]));
  SkewTentState real_orbit(detail::seed_word_to_unit(w[2]), detail::seed_word_to_break_point(w[3]));
  for (int i = 0; i < kTentWarmup; ++i) {
    integer_orbit.next();
    real_orbit.next();
  }

  auto integer_draw = [&] {
    const double u = integer_orbit.next() + real_orbit.next();
    return u >= 1.0 ? u - 1.0 : u;
  };

  RoundKeys keys;
  keys.stages.reserve(m);
  for (std::size_t r = 0; r < m; ++r) {
    StageKeys stage;
    stage.confusion.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      PermKeyParams pk{};
      pk.k_c = 1 + detail::scale_to_index(integer_draw(), kMaxStandardMapParameter);
      pk.r_x = detail::scale_to_index(integer_draw(), side);
      pk.r_y = detail::scale_to_index(integer_draw(), side);
      stage.confusion.push_back(pk);
    }
    stage.v_seed = detail::scale_to_index(integer_draw(), levels);
    stage.k_d = detail::clamp_diffusion_seed(real_orbit.next());
    keys.stages.push_back(std::move(stage));
  }
  return keys;
}

}  // namespace smcipher
