#include "bda/wavelet_matrix.hpp"

#include <bit>

#include "bda/common.hpp"

namespace bda {

RankBitVector::RankBitVector(const std::vector<bool>& bits) : size_(bits.size()) {
  words_.assign((size_ + 63) / 64, 0);
  for (std::size_t i = 0; i < size_; ++i)
    if (bits[i]) words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  block_rank_.resize(words_.size() + 1);
  std::uint32_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    block_rank_[w] = acc;
    acc += static_cast<std::uint32_t>(std::popcount(words_[w]));
  }
  block_rank_[words_.size()] = acc;
}

std::size_t RankBitVector::rank1(std::size_t i) const noexcept {
  const std::size_t w = i >> 6;
  const std::size_t r = i & 63;
  std::size_t acc = block_rank_[w];
  if (r != 0) acc += static_cast<std::size_t>(std::popcount(words_[w] & ((std::uint64_t{1} << r) - 1)));
  return acc;
}

WaveletMatrix::WaveletMatrix(const std::vector<std::uint32_t>& ys) : size_(ys.size()) {
  x_of_y_.assign(size_, 0);
  std::vector<bool> seen(size_, false);
  for (std::size_t x = 0; x < size_; ++x) {
    if (ys[x] >= size_ || seen[ys[x]]) throw Error("range structure expects a permutation");
    seen[ys[x]] = true;
    x_of_y_[ys[x]] = static_cast<std::uint32_t>(x);
  }
  bits_ = size_ <= 1 ? 1 : static_cast<std::size_t>(std::bit_width(size_ - 1));
  std::vector<std::uint32_t> cur(ys), next(size_);
  for (std::size_t level = 0; level < bits_; ++level) {
    const std::size_t shift = bits_ - 1 - level;
    std::vector<bool> bits(size_);
    std::size_t z = 0;
    for (std::size_t i = 0; i < size_; ++i) {
      bits[i] = (cur[i] >> shift) & 1u;
      if (!bits[i]) ++z;
    }
    std::size_t zi = 0, oi = z;
    for (std::size_t i = 0; i < size_; ++i) (bits[i] ? next[oi++] : next[zi++]) = cur[i];
    levels_.emplace_back(bits);
    zeros_.push_back(z);
    cur.swap(next);
  }
}

void WaveletMatrix::descend(std::size_t level, std::size_t b, std::size_t e, std::uint64_t prefix,
                            std::uint64_t y_first, std::uint64_t y_last,
                            std::vector<std::pair<std::uint32_t, std::uint32_t>>* out,
                            std::size_t* counter) const {
  if (b >= e) return;
  const std::size_t remaining = bits_ - level;
  const std::uint64_t lo = prefix << remaining;
  const std::uint64_t hi = lo + ((std::uint64_t{1} << remaining) - 1);
  if (hi < y_first || lo > y_last) return;
  if (lo >= y_first && hi <= y_last && out == nullptr) {
    *counter += e - b;
    return;
  }
  if (level == bits_) {
    // Leaf: exactly one value, and a permutation holds it at most once.
    if (out != nullptr) out->emplace_back(x_of_y_[lo], static_cast<std::uint32_t>(lo));
    if (counter != nullptr) *counter += e - b;
    return;
  }
  const auto& bv = levels_[level];
  const std::size_t b0 = bv.rank0(b), e0 = bv.rank0(e);
  descend(level + 1, b0, e0, prefix << 1, y_first, y_last, out, counter);
  const std::size_t z = zeros_[level];
  descend(level + 1, z + (b - b0), z + (e - e0), (prefix << 1) | 1u, y_first, y_last, out, counter);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> WaveletMatrix::report(
    std::size_t x_first, std::size_t x_last, std::size_t y_first, std::size_t y_last) const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (size_ == 0 || x_first > x_last || y_first > y_last || x_first >= size_) return out;
  if (x_last >= size_) x_last = size_ - 1;
  descend(0, x_first, x_last + 1, 0, y_first, y_last, &out, nullptr);
  return out;
}

std::size_t WaveletMatrix::count(std::size_t x_first, std::size_t x_last, std::size_t y_first,
                                 std::size_t y_last) const {
  std::size_t total = 0;
  if (size_ == 0 || x_first > x_last || y_first > y_last || x_first >= size_) return 0;
  if (x_last >= size_) x_last = size_ - 1;
  descend(0, x_first, x_last + 1, 0, y_first, y_last, nullptr, &total);
  return total;
}

}  // namespace bda
