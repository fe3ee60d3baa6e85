#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "smcipher/smcipher.hpp"

namespace smcipher::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kFormat = 2,
  kContract = 3,
};

struct RoundsArg {
  std::size_t m = 0;
  std::size_t n = 0;
};

// "m,n" with both counts at least 1.
inline std::optional<RoundsArg> parse_rounds(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  RoundsArg r;
  try {
    std::size_t used = 0;
    const std::string a = text.substr(0, comma), b = text.substr(comma + 1);
    if (a.empty() || b.empty() || a[0] == '-' || b[0] == '-') return std::nullopt;
    r.m = std::stoul(a, &used);
    if (used != a.size()) return std::nullopt;
    r.n = std::stoul(b, &used);
    if (used != b.size()) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (r.m == 0 || r.n == 0) return std::nullopt;
  return r;
}

inline std::optional<Variant> parse_variant(const std::string& text) {
  if (text == "proposed") return Variant::proposed;
  if (text == "baseline") return Variant::baseline;
  return std::nullopt;
}

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline CipherParams cipher_params(const std::string& rounds, const std::string& variant) {
  const auto r = parse_rounds(rounds);
  if (!r) throw usage_error("--rounds expects m,n with m,n >= 1");
  const auto v = parse_variant(variant);
  if (!v) throw usage_error("--variant expects proposed or baseline");
  return CipherParams{r->m, r->n, *v};
}

inline std::string random_key_hex() {
  std::random_device rd;
  SeedKey::words_type w{};
  do {
    for (auto& x : w) x = static_cast<std::uint32_t>(rd());
  } while ((w[0] | w[1] | w[2] | w[3]) == 0);
  return SeedKey(w).to_hex();
}

// Appends one CSV row, writing the header first when the file is new or empty.
inline void append_csv(const std::string& path, const std::string& header, const std::string& row) {
  bool needs_header = true;
  {
    std::ifstream probe(path, std::ios::binary | std::ios::ate);
    if (probe && probe.tellg() > 0) needs_header = false;
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw pgm_error(PgmErrorCode::io, "cannot open " + path + " for writing");
  if (needs_header) out << header;
  out << row;
}

// Entry point shared by the executable and the in-process tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Standard-map image cipher with add-and-rotate confusion"};
  app.require_subcommand(1);

  std::string in_path, out_path, key_hex, rounds = "2,2", variant = "proposed";
  auto add_cipher_flags = [&](CLI::App* sub) {
    sub->add_option("--in", in_path, "input PGM")->required();
    sub->add_option("--out", out_path, "output PGM")->required();
    sub->add_option("--key", key_hex, "32 hex digit seed key")->required();
    sub->add_option("--rounds", rounds, "overall,confusion rounds (m,n)");
    sub->add_option("--variant", variant, "proposed or baseline");
  };
  auto* enc = app.add_subcommand("encrypt", "encrypt a PGM image");
  add_cipher_flags(enc);
  auto* dec = app.add_subcommand("decrypt", "decrypt a PGM image");
  add_cipher_flags(dec);

  std::string path_a, path_b, csv_path;
  auto* analyze = app.add_subcommand("analyze", "NPCR/UACI of a pair or statistics of one image");
  analyze->add_option("--a", path_a, "first image")->required();
  analyze->add_option("--b", path_b, "second image (pairwise metrics)");
  analyze->add_option("--csv", csv_path, "append a CSV row to this file");

  std::size_t size = 512;
  int trials = 5;
  std::size_t key_count = 5;
  std::uint64_t seed = 1;
  std::string grid, synth_kind, bench_in;
  bool sweep = false, parallel = false;
  auto* bench_cmd = app.add_subcommand("bench", "stage timings, sweeps and synthetic images");
  bench_cmd->add_option("--size", size, "side length of the synthetic test image");
  bench_cmd->add_option("--rounds", rounds, "overall,confusion rounds (m,n)");
  bench_cmd->add_option("--variant", variant, "proposed or baseline");
  bench_cmd->add_option("--trials", trials, "timed trials per measurement (median reported)");
  bench_cmd->add_option("--in", bench_in, "benchmark this PGM instead of a synthetic image");
  bench_cmd->add_option("--key", key_hex, "seed key for timing runs");
  bench_cmd->add_option("--seed", seed, "seed for synthetic images and experiment keys");
  bench_cmd->add_flag("--sweep", sweep, "emit timing/NPCR/UACI CSV over an (m,n) grid");
  bench_cmd->add_option("--grid", grid, "sweep 1..M x 1..N instead of the reference grid");
  bench_cmd->add_option("--keys", key_count, "keys averaged per differential measurement");
  bench_cmd->add_flag("--parallel", parallel, "run differential trials for different keys concurrently");
  bench_cmd->add_option("--synth", synth_kind, "write a synthetic image: white, gradient, random, noise");
  bench_cmd->add_option("--out", out_path, "output path for --synth");

  auto* keygen = app.add_subcommand("keygen", "print a fresh random 32 hex digit key");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*enc || *dec) {
      const auto params = cipher_params(rounds, variant);
      const auto key = SeedKey::from_hex(key_hex);
      const auto img = load_pgm(in_path);
      save_pgm(out_path, *enc ? encrypt(img, key, params) : decrypt(img, key, params));
      return kOk;
    }

    if (*analyze) {
      const auto a = load_pgm(path_a);
      const auto report = path_b.empty() ? analyze_image(a) : analyze_pair(a, load_pgm(path_b));
      out << report.to_key_value();
      if (!csv_path.empty()) append_csv(csv_path, report.csv_header(), report.csv_row());
      return kOk;
    }

    if (*keygen) {
      out << random_key_hex() << "\n";
      return kOk;
    }

    if (*bench_cmd) {
      if (!synth_kind.empty()) {
        if (out_path.empty()) throw usage_error("--synth requires --out");
        save_pgm(out_path, synth::by_name(synth_kind, size, seed));
        return kOk;
      }
      if (trials < bench::kMinTrials) throw usage_error("--trials must be at least 3");
      const auto plain = bench_in.empty() ? synth::value_noise(size, seed) : load_pgm(bench_in);
      const auto timing_key = key_hex.empty() ? bench::experiment_keys(1, seed).front() : SeedKey::from_hex(key_hex);

      if (sweep) {
        std::vector<std::pair<std::size_t, std::size_t>> points;
        if (grid.empty()) {
          points = bench::reference_grid();
        } else {
          const auto g = parse_rounds(grid);
          if (!g) throw usage_error("--grid expects M,N with M,N >= 1");
          for (std::size_t m = 1; m <= g->m; ++m)
            for (std::size_t n = 1; n <= g->n; ++n) points.emplace_back(m, n);
        }
        if (key_count == 0) throw usage_error("--keys must be at least 1");
        const auto keys = bench::experiment_keys(key_count, seed);
        out << bench::sweep_csv_header();
        for (const auto& [m, n] : points) {
          for (auto v : {Variant::proposed, Variant::baseline}) {
            out << bench::sweep_csv_row(
                       bench::sweep_point(plain, timing_key, keys, CipherParams{m, n, v}, trials, parallel))
                << std::flush;
          }
        }
        return kOk;
      }

      out << bench::run_bench(plain, timing_key, cipher_params(rounds, variant), trials).to_table();
      return kOk;
    }
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const pgm_error& e) {
    err << "error: " << e.what() << "\n";
    return kFormat;
  } catch (const contract_error& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  }
  return kUsage;
}

}  // namespace smcipher::cli
