#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bda/common.hpp"

namespace bda {

enum class SchemeKind { BDA, RBDA, MIN_STD, MIN_WIN };

/// Total order on k-mers used by the minimizer schemes.
struct KmerOrder {
  enum class Kind { LEX, HASHED } kind = Kind::LEX;
  std::uint64_t seed = 0;

  static KmerOrder lex() noexcept { return {}; }
  static KmerOrder hashed(std::uint64_t seed) noexcept { return {Kind::HASHED, seed}; }
};

struct SchemeParams {
  SchemeKind kind = SchemeKind::BDA;
  std::size_t ell = 1;
  std::size_t w = 0;  // minimizer kinds only
  std::size_t k = 0;  // minimizer kinds only
  std::size_t r = 0;  // RBDA only
  KmerOrder order{};
};

/// Sampled positions of a text with the parameters that produced them.
struct Sample {
  std::vector<Position> positions;        ///< strictly increasing, 1-based
  std::vector<Position> leftmost_window;  ///< parallel to positions: first window start selecting it
  SchemeParams params;
  std::size_t n = 0;

  [[nodiscard]] std::size_t size() const noexcept { return positions.size(); }
  /// Smallest window start that produced `pos`; 0 when `pos` is not sampled.
  [[nodiscard]] Position window_of(Position pos) const noexcept;
};

enum class ReductionRule { LEMMA, EXPERIMENT };

/// Order-ell bd-anchors of `text`.
Sample bd_anchors(std::string_view text, std::size_t ell);

/// Anchor of every window: element i - 1 is the bd-anchor of window T[i..i+ell-1].
std::vector<Position> window_anchors(std::string_view text, std::size_t ell);

/// Order-ell reduced bd-anchors: rotations restricted to the first ell - r starts of each window.
Sample reduced_bd_anchors(std::string_view text, std::size_t ell, std::size_t r);

/// ceil(c * log(ell) / log(sigma)) with c = 4 (LEMMA) or 3 (EXPERIMENT), clamped to ell - 1.
std::size_t default_r(std::size_t ell, std::size_t sigma, ReductionRule rule);

/// Same set as bd_anchors, computed over overlapping chunks of ceil(n^epsilon) windows.
Sample bd_anchors_chunked(std::string_view text, std::size_t ell, double epsilon);

/// Standard minimizers: every minimal k-mer position of every window of w k-mers.
Sample minimizers_std(std::string_view text, std::size_t w, std::size_t k, KmerOrder order = {});

/// Robust winnowing: one position per window, keeping the previous pick while it stays minimal.
Sample minimizers_win(std::string_view text, std::size_t w, std::size_t k, KmerOrder order = {});

/// |positions| / n.
double density(const Sample& s);

/// Dense ranks of the n-k+1 k-mers of `text` under `order`; equal k-mers share a rank.
std::vector<std::uint32_t> kmer_ranks(std::string_view text, std::size_t k, KmerOrder order);

std::string scheme_name(SchemeKind kind);

}  // namespace bda
