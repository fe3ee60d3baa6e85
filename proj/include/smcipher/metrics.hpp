#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "smcipher/error.hpp"
#include "smcipher/pixel_grid.hpp"

namespace smcipher {

// Number of pixels change rate: fraction of positions where the grids differ.
inline double npcr(const PixelGrid& a, const PixelGrid& b) {
  require_same_shape(a, b);
  std::size_t changed = 0;
  for (std::size_t i = 0; i < a.cell_count(); ++i) changed += a[i] != b[i];
  return static_cast<double>(changed) / static_cast<double>(a.cell_count());
}

// Unified average changing intensity: mean |a - b| / (G - 1).
inline double uaci(const PixelGrid& a, const PixelGrid& b) {
  require_same_shape(a, b);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.cell_count(); ++i) {
    total += static_cast<std::uint64_t>(std::abs(static_cast<int>(a[i]) - static_cast<int>(b[i])));
  }
  return static_cast<double>(total) / static_cast<double>(a.max_value()) /
         static_cast<double>(a.cell_count());
}

enum class Direction { horizontal, vertical, diagonal };

inline const char* to_string(Direction d) {
  switch (d) {
    case Direction::horizontal: return "horizontal";
    case Direction::vertical: return "vertical";
    case Direction::diagonal: return "diagonal";
  }
  return "?";
}

// Options for correlation(). Without a sample count every adjacent pair is
// used; with one, that many pairs are drawn without replacement.
struct CorrelationSampling {
  std::optional<std::size_t> sample_count;
  std::uint64_t seed = 0;
};

// Pearson correlation between each pixel and its right, lower or lower-right
// neighbour.
inline double correlation(const PixelGrid& img, Direction dir, const CorrelationSampling& sampling = {}) {
  const std::size_t n = img.size();
  const std::size_t dx = dir == Direction::vertical ? 0 : 1;
  const std::size_t dy = dir == Direction::horizontal ? 0 : 1;
  const std::size_t cols = n - dx;
  const std::size_t rows = n - dy;
  const std::size_t available = cols * rows;

  std::vector<std::size_t> picks;
  const bool sampled = sampling.sample_count && *sampling.sample_count < available;
  if (sampled) {
    detail::require(*sampling.sample_count >= 2, "correlation: need at least two sampled pairs");
    picks.reserve(*sampling.sample_count);
    std::mt19937_64 rng(sampling.seed);
    std::vector<std::size_t> all(available);
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::sample(all.begin(), all.end(), std::back_inserter(picks), *sampling.sample_count, rng);
  }
  const std::size_t count = sampled ? picks.size() : available;

  // Integer moment sums; the centred combinations below are exact in 128 bits.
  std::int64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pair = sampled ? picks[k] : k;
    const std::size_t x = pair % cols;
    const std::size_t y = pair / cols;
    const std::int64_t u = img[y * n + x];
    const std::int64_t v = img[(y + dy) * n + x + dx];
    sx += u;
    sy += v;
    sxx += u * u;
    syy += v * v;
    sxy += u * v;
  }
  using wide = __int128;
  const wide c = static_cast<wide>(count);
  const wide cov = c * sxy - static_cast<wide>(sx) * sy;
  const wide var_u = c * sxx - static_cast<wide>(sx) * sx;
  const wide var_v = c * syy - static_cast<wide>(sy) * sy;
  if (var_u <= 0 || var_v <= 0) {
    throw degenerate_input_error("correlation: zero variance along the sampled direction");
  }
  const double r = static_cast<double>(cov) /
                   std::sqrt(static_cast<double>(var_u) * static_cast<double>(var_v));
  return std::clamp(r, -1.0, 1.0);
}

// Pearson's chi-square statistic against the uniform distribution.
inline double chi_square_uniformity(const Histogram& h) {
  const auto total = h.total();
  detail::require(total > 0, "chi_square_uniformity: empty histogram");
  detail::require(!h.counts.empty(), "chi_square_uniformity: no bins");
  const double expected = static_cast<double>(total) / static_cast<double>(h.counts.size());
  double stat = 0;
  for (auto count : h.counts) {
    const double d = static_cast<double>(count) - expected;
    stat += d * d / expected;
  }
  return stat;
}

// Results of one analysis run. Absent fields were not computed.
struct AnalysisReport {
  std::optional<double> npcr;
  std::optional<double> uaci;
  std::optional<double> corr_horizontal;
  std::optional<double> corr_vertical;
  std::optional<double> corr_diagonal;
  std::optional<double> chi_square;
  std::map<std::string, double> timings_ms;

  std::vector<std::pair<std::string, std::string>> fields() const {
    std::vector<std::pair<std::string, std::string>> out;
    auto put = [&out](const std::string& name, const std::optional<double>& value) {
      if (!value) return;
      std::ostringstream os;
      os.imbue(std::locale::classic());
      os.precision(6);
      os << std::fixed << *value;
      out.emplace_back(name, os.str());
    };
    put("npcr", npcr);
    put("uaci", uaci);
    put("corr_horizontal", corr_horizontal);
    put("corr_vertical", corr_vertical);
    put("corr_diagonal", corr_diagonal);
    put("chi_square", chi_square);
    for (const auto& [stage, ms] : timings_ms) put("time_" + stage + "_ms", ms);
    return out;
  }

  std::string to_key_value() const {
    std::string text;
    for (const auto& [k, v] : fields()) text += k + "=" + v + "\n";
    return text;
  }

  std::string csv_header() const {
    std::string line;
    for (const auto& [k, v] : fields()) line += (line.empty() ? "" : ",") + k;
    return line + "\n";
  }

  std::string csv_row() const {
    std::string line;
    bool first = true;
    for (const auto& [k, v] : fields()) {
      line += (first ? "" : ",") + v;
      first = false;
    }
    return line + "\n";
  }
};

// Single-image statistics; correlations of a constant image are left unset.
inline AnalysisReport analyze_image(const PixelGrid& img) {
  AnalysisReport report;
  auto safe_corr = [&img](Direction d) -> std::optional<double> {
    try {
      return correlation(img, d);
    } catch (const degenerate_input_error&) {
      return std::nullopt;
    }
  };
  report.corr_horizontal = safe_corr(Direction::horizontal);
  report.corr_vertical = safe_corr(Direction::vertical);
  report.corr_diagonal = safe_corr(Direction::diagonal);
  report.chi_square = chi_square_uniformity(histogram(img));
  return report;
}

inline AnalysisReport analyze_pair(const PixelGrid& a, const PixelGrid& b) {
  AnalysisReport report;
  report.npcr = npcr(a, b);
  report.uaci = uaci(a, b);
  return report;
}

}  // namespace smcipher
