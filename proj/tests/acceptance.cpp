// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "smcipher/smcipher.hpp"

using namespace smcipher;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

PixelGrid run_confusion_only(PixelGrid img, const SeedKey& key, std::size_t rounds) {
  const auto keys = derive_round_keys(key, 1, rounds, img.size(), img.levels());
  const auto& stage = keys.stages.front();
  for (const auto& pk : stage.confusion) img = confuse_round(img, PermKey(pk, img.size()), stage.v_seed, Variant::proposed);
  return img;
}

Outcome exact_invertibility() {
  std::mt19937_64 rng(1);
  const auto keys = bench::experiment_keys(5, 1);
  std::size_t checked = 0, mismatches = 0;
  for (int image = 0; image < 100; ++image) {
    const auto img = synth::uniform_random(64, rng());
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n)
        for (auto variant : {Variant::proposed, Variant::baseline})
          for (const auto& key : keys) {
            const CipherParams p{m, n, variant};
            mismatches += decrypt(encrypt(img, key, p), key, p) != img;
            ++checked;
          }
  }
  return {mismatches == 0, fmt("%zu round trips, %zu mismatches", checked, mismatches)};
}

Outcome permutation_bijectivity() {
  std::mt19937_64 rng(2);
  std::size_t failures = 0, keys = 0;
  for (std::size_t n : {2u, 4u, 8u, 16u, 64u}) {
    for (int t = 0; t < 100; ++t, ++keys) {
      const PermKey key(1 + static_cast<std::uint32_t>(rng() % kMaxStandardMapParameter),
                        static_cast<std::uint32_t>(rng() % n), static_cast<std::uint32_t>(rng() % n), n);
      std::vector<int> hits(n * n, 0);
      bool ok = true;
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t x = 0; x < n; ++x) {
          const auto [ox, oy] = oracle::std_map(x, y, key.k_c, key.r_x, key.r_y, n);
          const auto c = std_map_point(x, y, key);
          ok &= c == Cell{ox, oy};
          ++hits[c.y * n + c.x];
          ok &= std_map_inverse_point(c.x, c.y, key) == Cell{x, y};
        }
      for (int h : hits) ok &= h == 1;
      try {
        build_permutation(key);
      } catch (const std::logic_error&) {
        ok = false;
      }
      failures += !ok;
    }
  }
  return {failures == 0, fmt("%zu keys over N in {2,4,8,16,64}, %zu failures", keys, failures)};
}

Outcome confusion_sensitivity() {
  const auto a = synth::value_noise(256, 3);
  const auto b = synth::flip_last_lsb(a);
  double sum = 0;
  const auto keys = bench::experiment_keys(5, 3);
  for (const auto& k : keys) sum += npcr(run_confusion_only(a, k, 3), run_confusion_only(b, k, 3));
  const double mean = sum / static_cast<double>(keys.size());
  return {mean >= 0.98, fmt("mean differing-pixel ratio %.6f (need >= 0.98)", mean)};
}

Outcome homogeneous_histogram() {
  const auto white = synth::white(512);
  double sum = 0;
  const auto keys = bench::experiment_keys(5, 4);
  std::string per_key;
  for (const auto& k : keys) {
    const double chi = chi_square_uniformity(histogram(run_confusion_only(white, k, 3)));
    per_key += fmt(" %.1f", chi);
    sum += chi;
  }
  const double mean = sum / static_cast<double>(keys.size());
  return {mean < oracle::kChiSquare255At005,
          fmt("mean chi-square %.2f (need < %.2f); per key:%s", mean, oracle::kChiSquare255At005, per_key.c_str())};
}

Outcome differential_metrics() {
  const auto plain = synth::value_noise(512, 5);
  const auto keys = bench::experiment_keys(5, 5);
  const auto p13 = bench::one_bit_differential(plain, keys, {1, 3, Variant::proposed}, true);
  const auto p22 = bench::one_bit_differential(plain, keys, {2, 2, Variant::proposed}, true);
  const auto b13 = bench::one_bit_differential(plain, keys, {1, 3, Variant::baseline}, true);
  const bool ok = p13.npcr >= 0.99 && p22.npcr >= 0.995 && p22.uaci >= 0.330 && p22.uaci <= 0.339 &&
                  b13.npcr <= 0.01;
  return {ok, fmt("proposed(1,3) NPCR %.6f; proposed(2,2) NPCR %.6f UACI %.6f; baseline(1,3) NPCR %.6f",
                  p13.npcr, p22.npcr, p22.uaci, b13.npcr)};
}

Outcome decorrelation() {
  const auto plain = synth::value_noise(512, 6);
  const auto cipher = encrypt(plain, bench::experiment_keys(1, 6).front(), {2, 2, Variant::proposed});
  const double h = correlation(cipher, Direction::horizontal);
  const double v = correlation(cipher, Direction::vertical);
  const double d = correlation(cipher, Direction::diagonal);
  const double plain_h = correlation(plain, Direction::horizontal);
  const bool ok = std::abs(h) <= 0.02 && std::abs(v) <= 0.02 && std::abs(d) <= 0.02 && plain_h >= 0.8;
  return {ok, fmt("cipher h %.6f v %.6f d %.6f; plain h %.6f", h, v, d, plain_h)};
}

Outcome timing() {
  const auto plain = synth::value_noise(512, 7);
  const auto key = bench::experiment_keys(1, 7).front();
  constexpr int kTrials = 7;
  const auto proposed = bench::run_bench(plain, key, {2, 2, Variant::proposed}, kTrials);
  const auto baseline = bench::run_bench(plain, key, {6, 3, Variant::baseline}, kTrials);
  const double speed_ratio = proposed.encrypt_ms / baseline.encrypt_ms;
  const double dec_ratio_p = proposed.decrypt_ms / proposed.encrypt_ms;
  const double dec_ratio_b = baseline.decrypt_ms / baseline.encrypt_ms;
  const bool ok = proposed.diffusion_round_ms > proposed.permutation_round_ms && speed_ratio < 0.6 &&
                  dec_ratio_p <= 1.25 && dec_ratio_b <= 1.25;
  return {ok, fmt("diffusion %.3f ms vs permutation %.3f ms; proposed(2,2)/baseline(6,3) encrypt %.3f; "
                  "decrypt/encrypt %.3f (proposed) %.3f (baseline)",
                  proposed.diffusion_round_ms, proposed.permutation_round_ms, speed_ratio, dec_ratio_p, dec_ratio_b)};
}

Outcome keystream_statistics() {
  std::mt19937_64 rng(8);
  const double k_d = derive_round_keys(bench::experiment_keys(1, 8).front(), 1, 1, 2, 256).stages[0].k_d;
  Histogram h{std::vector<std::uint64_t>(256, 0)};
  double x = k_d;
  for (int i = 0; i < 1'000'000; ++i) {
    x = logistic(x);
    ++h.counts[quantize(x, 8)];
  }
  const double chi = chi_square_uniformity(h);
  return {chi < oracle::kChiSquare255At001,
          fmt("K_d %.9f, chi-square %.1f over 1e6 bytes (need < %.2f)", k_d, chi, oracle::kChiSquare255At001)};
}

Outcome random_baseline() {
  const double expected_npcr = 1.0 - 1.0 / 256.0;
  const double expected_uaci = oracle::uniform_uaci_expectation(8);
  double sn = 0, su = 0;
  for (int t = 0; t < 50; ++t) {
    const auto a = synth::uniform_random(256, 9000 + 2 * t);
    const auto b = synth::uniform_random(256, 9001 + 2 * t);
    sn += npcr(a, b);
    su += uaci(a, b);
  }
  sn /= 50;
  su /= 50;
  const bool ok = std::abs(sn - expected_npcr) <= 0.002 && std::abs(su - expected_uaci) <= 0.002;
  return {ok, fmt("NPCR %.6f vs %.6f; UACI %.6f vs %.6f", sn, expected_npcr, su, expected_uaci)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact invertibility", 60, exact_invertibility},
      {2, "permutation bijectivity", 10, permutation_bijectivity},
      {3, "confusion-stage one-bit sensitivity", 5, confusion_sensitivity},
      {4, "homogeneous-image histogram after 3 rounds", 10, homogeneous_histogram},
      {5, "differential NPCR/UACI bands", 120, differential_metrics},
      {6, "adjacent-pixel decorrelation", 30, decorrelation},
      {7, "timing ordering and speedup", 120, timing},
      {8, "diffusion keystream chi-square", 10, keystream_statistics},
      {9, "random-grid NPCR/UACI expectations", 30, random_baseline},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, ""};
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.time_limit_s;
    const bool pass = outcome.pass && in_time;
    failed += !pass;
    std::printf("[%s] criterion %d: %s -- %s (%.2f s, limit %.0f s%s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), secs, c.time_limit_s, in_time ? "" : ", TOO SLOW");
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
