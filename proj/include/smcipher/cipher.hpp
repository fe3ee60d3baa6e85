#pragma once

#include <cstddef>
#include <vector>

#include "smcipher/confusion.hpp"
#include "smcipher/diffusion.hpp"
#include "smcipher/error.hpp"
#include "smcipher/key_schedule.hpp"
#include "smcipher/pixel_grid.hpp"

namespace smcipher {

// m overall rounds, each made of n confusion rounds followed by one
// diffusion round.
struct CipherParams {
  std::size_t m = 1;
  std::size_t n = 1;
  Variant variant = Variant::proposed;

  void validate() const {
    detail::require(m >= 1, "CipherParams: overall rounds m must be at least 1");
    detail::require(n >= 1, "CipherParams: confusion rounds n must be at least 1");
  }
};

inline RoundKeys round_keys_for(const PixelGrid& img, const SeedKey& seed, const CipherParams& params) {
  params.validate();
  return derive_round_keys(seed, params.m, params.n, img.size(), img.levels());
}

// Every confusion round in a stage restarts its value chain from that
// stage's v_seed.
inline PixelGrid encrypt_with_keys(const PixelGrid& img, const RoundKeys& keys, Variant variant) {
  PixelGrid state = img;
  for (const auto& stage : keys.stages) {
    for (const auto& pk : stage.confusion) {
      state = confuse_round(state, PermKey(pk, state.size()), stage.v_seed, variant);
    }
    state = PixelGrid(state.size(), state.bit_depth(),
                      diffuse(state.pixels(), DiffusionKey(stage.k_d), state.bit_depth()));
  }
  return state;
}

// Exact per-round inversion in reverse key order.
inline PixelGrid decrypt_with_keys(const PixelGrid& cipher, const RoundKeys& keys, Variant variant) {
  PixelGrid state = cipher;
  for (auto stage = keys.stages.rbegin(); stage != keys.stages.rend(); ++stage) {
    state = PixelGrid(state.size(), state.bit_depth(),
                      undiffuse(state.pixels(), DiffusionKey(stage->k_d), state.bit_depth()));
    for (auto pk = stage->confusion.rbegin(); pk != stage->confusion.rend(); ++pk) {
      state = inverse_confuse_round(state, PermKey(*pk, state.size()), stage->v_seed, variant);
    }
  }
  return state;
}

inline PixelGrid encrypt(const PixelGrid& img, const SeedKey& seed, const CipherParams& params) {
  return encrypt_with_keys(img, round_keys_for(img, seed, params), params.variant);
}

inline PixelGrid decrypt(const PixelGrid& cipher, const SeedKey& seed, const CipherParams& params) {
  return decrypt_with_keys(cipher, round_keys_for(cipher, seed, params), params.variant);
}

}  // namespace smcipher
