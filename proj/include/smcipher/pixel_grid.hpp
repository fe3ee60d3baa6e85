#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "smcipher/error.hpp"

namespace smcipher {

inline constexpr unsigned kMinBitDepth = 1;
inline constexpr unsigned kMaxBitDepth = 16;

// Row-major linear index of column x, row y.
inline std::size_t scan_index(std::size_t x, std::size_t y, std::size_t n) {
  detail::require(x < n && y < n, "scan_index: coordinate out of range");
  return y * n + x;
}

// Square N x N image of B-bit gray values in row-major scan order.
//
// A grid never changes after construction; every transformation in this
// library builds a new one, so concurrent readers need no synchronization.
class PixelGrid {
 public:
  using value_type = std::uint16_t;

  PixelGrid(std::size_t size, unsigned bit_depth, std::vector<value_type> pixels)
      : size_(size), bit_depth_(bit_depth), pixels_(std::move(pixels)) {
    detail::require(size_ >= 2, "PixelGrid: side length must be at least 2");
    detail::require(bit_depth_ >= kMinBitDepth && bit_depth_ <= kMaxBitDepth,
                    "PixelGrid: bit depth must be in [1, 16]");
    detail::require(pixels_.size() == size_ * size_,
                    "PixelGrid: pixel count must equal N*N");
    const auto top = max_value();
    detail::require(std::all_of(pixels_.begin(), pixels_.end(),
                                [top](value_type v) { return v <= top; }),
                    "PixelGrid: pixel value exceeds 2^B - 1");
  }

  static PixelGrid filled(std::size_t size, unsigned bit_depth, value_type value) {
    return PixelGrid(size, bit_depth, std::vector<value_type>(size * size, value));
  }

  std::size_t size() const { return size_; }
  std::size_t cell_count() const { return pixels_.size(); }
  unsigned bit_depth() const { return bit_depth_; }
  std::uint32_t levels() const { return std::uint32_t{1} << bit_depth_; }
  value_type max_value() const { return static_cast<value_type>(levels() - 1); }

  std::span<const value_type> pixels() const { return pixels_; }
  value_type operator[](std::size_t index) const { return pixels_[index]; }
  value_type at(std::size_t x, std::size_t y) const { return pixels_[scan_index(x, y, size_)]; }

  // Copy with a single cell replaced.
  PixelGrid with_pixel(std::size_t index, value_type value) const {
    detail::require(index < pixels_.size(), "with_pixel: index out of range");
    auto copy = pixels_;
    copy[index] = value;
    return PixelGrid(size_, bit_depth_, std::move(copy));
  }

  friend bool operator==(const PixelGrid&, const PixelGrid&) = default;

 private:
  std::size_t size_;
  unsigned bit_depth_;
  std::vector<value_type> pixels_;
};

struct Histogram {
  std::vector<std::uint64_t> counts;

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
  }

  friend bool operator==(const Histogram&, const Histogram&) = default;
};

inline Histogram histogram(const PixelGrid& img) {
  Histogram h{std::vector<std::uint64_t>(img.levels(), 0)};
  for (auto v : img.pixels()) ++h.counts[v];
  return h;
}

inline void require_same_shape(const PixelGrid& a, const PixelGrid& b) {
  if (a.size() != b.size() || a.bit_depth() != b.bit_depth()) {
    throw contract_error("grids differ in side length or bit depth");
  }
}

}  // namespace smcipher
