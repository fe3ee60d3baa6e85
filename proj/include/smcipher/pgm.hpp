#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "smcipher/pixel_grid.hpp"

namespace smcipher {

enum class PgmErrorCode {
  bad_magic,
  bad_header,
  bad_maxval,
  truncated,
  non_square,
  io,
};

class pgm_error : public std::runtime_error {
 public:
  pgm_error(PgmErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  PgmErrorCode code() const { return code_; }

 private:
  PgmErrorCode code_;
};

namespace detail {

class PgmHeaderReader {
 public:
  explicit PgmHeaderReader(std::string_view bytes) : bytes_(bytes) {}

  // Next whitespace-delimited token; '#' starts a comment running to end of line.
  std::string_view token() {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
      } else if (is_space(c)) {
        ++pos_;
      } else {
        break;
      }
    }
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && !is_space(bytes_[pos_]) && bytes_[pos_] != '#') ++pos_;
    return bytes_.substr(start, pos_ - start);
  }

  std::uint64_t number(const char* field) {
    const auto t = token();
    if (t.empty() || t.size() > 9) throw pgm_error(PgmErrorCode::bad_header, std::string("PGM: bad ") + field);
    std::uint64_t v = 0;
    for (char c : t) {
      if (c < '0' || c > '9') throw pgm_error(PgmErrorCode::bad_header, std::string("PGM: bad ") + field);
      v = v * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return v;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  std::size_t raster_offset() {
    if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
      throw pgm_error(PgmErrorCode::truncated, "PGM: missing raster after header");
    }
    return pos_ + 1;
  }

 private:
  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Binary netpbm graymap. Samples wider than 8 bits are two bytes, big-endian.
inline PixelGrid read_pgm(std::string_view bytes) {
  detail::PgmHeaderReader reader(bytes);
  if (reader.token() != "P5") throw pgm_error(PgmErrorCode::bad_magic, "PGM: expected magic P5");
  const auto width = reader.number("width");
  const auto height = reader.number("height");
  const auto maxval = reader.number("maxval");
  if (width == 0 || height == 0) throw pgm_error(PgmErrorCode::bad_header, "PGM: zero dimension");
  if (maxval == 0 || maxval > 65535 || ((maxval + 1) & maxval) != 0) {
    throw pgm_error(PgmErrorCode::bad_maxval, "PGM: maxval must be 2^B - 1 with 1 <= B <= 16");
  }
  if (width != height) throw pgm_error(PgmErrorCode::non_square, "PGM: image is not square");
  if (width < 2) throw pgm_error(PgmErrorCode::bad_header, "PGM: side length must be at least 2");

  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) - 1 < maxval) ++bits;

  const std::size_t offset = reader.raster_offset();
  const std::size_t cells = static_cast<std::size_t>(width * height);
  const std::size_t sample_bytes = maxval < 256 ? 1 : 2;
  if (bytes.size() - offset < cells * sample_bytes) {
    throw pgm_error(PgmErrorCode::truncated, "PGM: raster shorter than width*height samples");
  }

  std::vector<PixelGrid::value_type> pixels(cells);
  const auto* raster = reinterpret_cast<const unsigned char*>(bytes.data() + offset);
  for (std::size_t i = 0; i < cells; ++i) {
    const std::uint32_t v = sample_bytes == 1 ? raster[i] : (std::uint32_t{raster[2 * i]} << 8) | raster[2 * i + 1];
    if (v > maxval) throw pgm_error(PgmErrorCode::bad_maxval, "PGM: sample exceeds maxval");
    pixels[i] = static_cast<PixelGrid::value_type>(v);
  }
  return PixelGrid(static_cast<std::size_t>(width), bits, std::move(pixels));
}

// Canonical form "P5\n<N> <N>\n<maxval>\n" followed by the raster.
inline std::string write_pgm(const PixelGrid& img) {
  const std::uint32_t maxval = img.max_value();
  std::string out = "P5\n" + std::to_string(img.size()) + " " + std::to_string(img.size()) + "\n" +
                    std::to_string(maxval) + "\n";
  const bool wide = maxval >= 256;
  out.reserve(out.size() + img.cell_count() * (wide ? 2 : 1));
  for (auto v : img.pixels()) {
    if (wide) out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xFF));
  }
  return out;
}

inline PixelGrid load_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pgm_error(PgmErrorCode::io, "cannot open " + path);
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

inline void save_pgm(const std::string& path, const PixelGrid& img) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw pgm_error(PgmErrorCode::io, "cannot open " + path + " for writing");
  const auto bytes = write_pgm(img);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw pgm_error(PgmErrorCode::io, "write failed for " + path);
}

}  // namespace smcipher
