#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace bda {

/// Plain bit vector with constant-time rank1.
class RankBitVector {
 public:
  RankBitVector() = default;
  explicit RankBitVector(const std::vector<bool>& bits);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  /// Number of set bits in [0, i).
  [[nodiscard]] std::size_t rank1(std::size_t i) const noexcept;
  [[nodiscard]] std::size_t rank0(std::size_t i) const noexcept { return i - rank1(i); }

 private:
  std::vector<std::uint64_t> words_;
  std::vector<std::uint32_t> block_rank_;  // set bits before each word
  std::size_t size_ = 0;
};

/// Static 2D orthogonal range reporting over a permutation of [0, m):
/// point (x, ys[x]) for every x. Points come back ordered by y.
class WaveletMatrix {
 public:
  WaveletMatrix() = default;
  explicit WaveletMatrix(const std::vector<std::uint32_t>& ys);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }

  /// All (x, y) with x in [x_first, x_last] and y in [y_first, y_last], 0-based, inclusive.
  [[nodiscard]] std::vector<std::pair<std::uint32_t, std::uint32_t>> report(
      std::size_t x_first, std::size_t x_last, std::size_t y_first, std::size_t y_last) const;

  /// Number of points in the rectangle, without enumerating them.
  [[nodiscard]] std::size_t count(std::size_t x_first, std::size_t x_last, std::size_t y_first,
                                  std::size_t y_last) const;

 private:
  void descend(std::size_t level, std::size_t b, std::size_t e, std::uint64_t prefix,
               std::uint64_t y_first, std::uint64_t y_last,
               std::vector<std::pair<std::uint32_t, std::uint32_t>>* out,
               std::size_t* counter) const;

  std::vector<RankBitVector> levels_;
  std::vector<std::size_t> zeros_;
  std::vector<std::uint32_t> x_of_y_;
  std::size_t size_ = 0;
  std::size_t bits_ = 0;
};

}  // namespace bda
