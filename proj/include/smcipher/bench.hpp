#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smcipher/cipher.hpp"
#include "smcipher/metrics.hpp"
#include "smcipher/synth.hpp"

namespace smcipher::bench {

inline constexpr int kWarmupRuns = 2;
inline constexpr int kMinTrials = 3;

// Median wall time in milliseconds of `trials` runs after two warm-up runs.
template <typename Fn>
double median_ms(Fn&& fn, int trials) {
  detail::require(trials >= kMinTrials, "bench: at least 3 trials are required");
  for (int i = 0; i < kWarmupRuns; ++i) fn();
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(trials));
  for (int i = 0; i < trials; ++i) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    samples.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
  }
  std::nth_element(samples.begin(), samples.begin() + trials / 2, samples.end());
  return samples[static_cast<std::size_t>(trials / 2)];
}

// Deterministic pseudo-random seed keys for experiments.
inline std::vector<SeedKey> experiment_keys(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SeedKey> keys;
  keys.reserve(count);
  while (keys.size() < count) {
    SeedKey::words_type w{};
    for (auto& x : w) x = static_cast<std::uint32_t>(rng());
    if (w[0] | w[1] | w[2] | w[3]) keys.emplace_back(w);
  }
  return keys;
}

struct Differential {
  double npcr = 0;
  double uaci = 0;
};

// Encrypts `plain` and its bottom-right-LSB-flipped twin under every key and
// averages NPCR/UACI of the ciphertext pairs.
inline Differential one_bit_differential(const PixelGrid& plain, const std::vector<SeedKey>& keys,
                                         const CipherParams& params, bool parallel = false) {
  detail::require(!keys.empty(), "one_bit_differential: no keys");
  const PixelGrid twin = synth::flip_last_lsb(plain);
  auto run = [&](const SeedKey& key) {
    const auto a = encrypt(plain, key, params);
    const auto b = encrypt(twin, key, params);
    return Differential{npcr(a, b), uaci(a, b)};
  };

  std::vector<Differential> per_key;
  if (parallel) {
    std::vector<std::future<Differential>> jobs;
    for (const auto& k : keys) jobs.push_back(std::async(std::launch::async, run, std::cref(k)));
    for (auto& j : jobs) per_key.push_back(j.get());
  } else {
    for (const auto& k : keys) per_key.push_back(run(k));
  }

  Differential mean;
  for (const auto& d : per_key) {
    mean.npcr += d.npcr;
    mean.uaci += d.uaci;
  }
  mean.npcr /= static_cast<double>(per_key.size());
  mean.uaci /= static_cast<double>(per_key.size());
  return mean;
}

struct BenchResult {
  std::size_t size = 0;
  int trials = 0;
  std::size_t m = 0;
  std::size_t n = 0;
  Variant variant = Variant::proposed;
  double key_generation_ms = 0;
  double permutation_round_ms = 0;   // position permutation only
  double confusion_round_ms = 0;     // permutation with value mixing
  double diffusion_round_ms = 0;
  double encrypt_ms = 0;
  double decrypt_ms = 0;

  std::string to_table() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(4);
    os << std::fixed;
    os << "size=" << size << " rounds=" << m << "," << n
       << " variant=" << (variant == Variant::proposed ? "proposed" : "baseline") << " trials=" << trials
       << " (median ms)\n";
    os << "key_generation      " << key_generation_ms << "\n";
    os << "permutation_round   " << permutation_round_ms << "\n";
    os << "confusion_round     " << confusion_round_ms << "\n";
    os << "diffusion_round     " << diffusion_round_ms << "\n";
    os << "encrypt             " << encrypt_ms << "\n";
    os << "decrypt             " << decrypt_ms << "\n";
    return os.str();
  }
};

inline BenchResult run_bench(const PixelGrid& plain, const SeedKey& key, const CipherParams& params,
                             int trials) {
  params.validate();
  BenchResult r;
  r.size = plain.size();
  r.trials = trials;
  r.m = params.m;
  r.n = params.n;
  r.variant = params.variant;

  const auto keys = round_keys_for(plain, key, params);
  const PermKey pk(keys.stages.front().confusion.front(), plain.size());
  const auto v_seed = keys.stages.front().v_seed;
  const DiffusionKey dk(keys.stages.front().k_d);

  std::size_t sink = 0;
  r.key_generation_ms = median_ms([&] { sink += round_keys_for(plain, key, params).stages.size(); }, trials);
  r.permutation_round_ms =
      median_ms([&] { sink += confuse_round(plain, pk, v_seed, Variant::baseline)[0]; }, trials);
  r.confusion_round_ms =
      median_ms([&] { sink += confuse_round(plain, pk, v_seed, Variant::proposed)[0]; }, trials);
  r.diffusion_round_ms =
      median_ms([&] { sink += diffuse(plain.pixels(), dk, plain.bit_depth())[0]; }, trials);
  const auto cipher = encrypt_with_keys(plain, keys, params.variant);
  r.encrypt_ms = median_ms([&] { sink += encrypt(plain, key, params)[0]; }, trials);
  r.decrypt_ms = median_ms([&] { sink += decrypt(cipher, key, params)[0]; }, trials);
  static volatile std::size_t keep;
  keep = sink;
  return r;
}

struct SweepRow {
  std::size_t m;
  std::size_t n;
  Variant variant;
  double encrypt_ms;
  double decrypt_ms;
  Differential differential;
};

inline std::string sweep_csv_header() { return "m,n,variant,encrypt_ms,decrypt_ms,npcr,uaci\n"; }

inline std::string sweep_csv_row(const SweepRow& row) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << row.m << "," << row.n << "," << (row.variant == Variant::proposed ? "proposed" : "baseline") << ",";
  os.precision(4);
  os << std::fixed << row.encrypt_ms << "," << row.decrypt_ms << ",";
  os.precision(6);
  os << row.differential.npcr << "," << row.differential.uaci << "\n";
  return os.str();
}

// The (m, n) combinations of the published timing/differential table.
inline std::vector<std::pair<std::size_t, std::size_t>> reference_grid() {
  return {{1, 2}, {1, 3}, {1, 4}, {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {3, 4},
          {4, 2}, {4, 3}, {4, 4}, {4, 5}, {5, 3}, {5, 4}, {5, 5}, {6, 2}, {6, 3}};
}

inline SweepRow sweep_point(const PixelGrid& plain, const SeedKey& timing_key, const std::vector<SeedKey>& keys,
                            const CipherParams& params, int trials, bool parallel) {
  const auto cipher = encrypt(plain, timing_key, params);
  std::size_t sink = 0;
  SweepRow row{params.m, params.n, params.variant, 0, 0, {}};
  row.encrypt_ms = median_ms([&] { sink += encrypt(plain, timing_key, params)[0]; }, trials);
  row.decrypt_ms = median_ms([&] { sink += decrypt(cipher, timing_key, params)[0]; }, trials);
  row.differential = one_bit_differential(plain, keys, params, parallel);
  static volatile std::size_t keep;
  keep = sink;
  return row;
}

}  // namespace smcipher::bench
