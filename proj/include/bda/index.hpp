#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bda/common.hpp"
#include "bda/sampling.hpp"
#include "bda/wavelet_matrix.hpp"

namespace bda {

/// V1_RANGE: both sides located, hits by 2D range reporting.
/// V2_ONESIDED: longer side located, shorter side verified letter by letter.
enum class QueryMode { V1_RANGE, V2_ONESIDED };

struct HitQuery {
  Position j_q = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;
};

struct Hit {
  Position j_q = 0;
  Position j_t = 0;
  friend bool operator==(const Hit&, const Hit&) = default;
  friend auto operator<=>(const Hit&, const Hit&) = default;
};

/// Bidirectional anchor index over a text: anchors sorted by their reversed
/// prefixes (left order) and by their suffixes (right order), linked by a
/// rank-space point set for rectangle queries.
class TextIndex {
 public:
  /// Index over bd-anchors (r == 0) or reduced bd-anchors (r > 0) of `text`.
  static TextIndex build(std::string text, std::size_t ell, QueryMode mode = QueryMode::V1_RANGE,
                         std::size_t r = 0);

  /// Index over an explicit anchor sample; `text` may contain separators.
  static TextIndex build_from_sample(std::string text, Sample anchors,
                                     QueryMode mode = QueryMode::V1_RANGE);

  [[nodiscard]] const std::string& text() const noexcept { return text_; }
  [[nodiscard]] std::size_t ell() const noexcept { return ell_; }
  [[nodiscard]] std::size_t reduction() const noexcept { return r_; }
  [[nodiscard]] QueryMode mode() const noexcept { return mode_; }
  [[nodiscard]] const std::vector<Position>& anchors() const noexcept { return anchors_; }
  /// Anchor positions sorted by reversed prefix T[1..j] read right to left.
  [[nodiscard]] const std::vector<Position>& left_order() const noexcept { return left_; }
  /// Anchor positions sorted by suffix T[j..n].
  [[nodiscard]] const std::vector<Position>& right_order() const noexcept { return right_; }
  /// Points (x, y), 1-based, with left_order[x] == right_order[y], sorted by x.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> points() const;

  /// Reversed prefix ending at anchor j (as a string) and suffix starting at j.
  [[nodiscard]] std::string left_string(Position j) const;
  [[nodiscard]] std::string right_string(Position j) const;

  /// Maximal interval of left_order whose reversed prefixes start with `p`
  /// (`p` is already reversed by the caller).
  [[nodiscard]] Interval locate_left_interval(std::string_view p) const;
  [[nodiscard]] Interval locate_right_interval(std::string_view p) const;

  /// Points inside the rectangle xr × yr (1-based), ordered by y.
  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> range_report(Interval xr,
                                                                             Interval yr) const;

  /// All (alpha, beta)-hits of anchor hq.j_q of `q`, sorted by text position.
  [[nodiscard]] std::vector<Hit> hit_query(std::string_view q, const HitQuery& hq) const;

  /// Occurrences of `q` (1-based starts, ascending) using the index's mode.
  [[nodiscard]] std::vector<Position> pattern_search(std::string_view q) const;
  /// Same result set; one side by binary search, the other by letter comparison.
  [[nodiscard]] std::vector<Position> pattern_search_onesided(std::string_view q) const;
  /// Same result set via both intervals and range reporting.
  [[nodiscard]] std::vector<Position> pattern_search_bidirectional(std::string_view q) const;

  /// Hits for several fragments sharing anchor j_q; extents (alpha_i, beta_i)
  /// with alpha_i + beta_i = ell + 1, alpha strictly decreasing.
  [[nodiscard]] std::vector<std::vector<Hit>> multi_fragment_query(
      std::string_view q, Position j_q,
      const std::vector<std::pair<std::size_t, std::size_t>>& extents) const;

  /// Serialized layout: "BDAIDX1\n", then ell, n, anchor count, anchors,
  /// left order, right order, each a little-endian uint64.
  void save(std::ostream& out) const;
  /// Reads an index saved by `save`; `text` must be the indexed text.
  static TextIndex load(std::istream& in, std::string text, QueryMode mode = QueryMode::V1_RANGE,
                        std::size_t r = 0);

 private:
  TextIndex() = default;
  void finish(QueryMode mode);
  void validate_query(std::string_view q, const HitQuery& hq) const;
  [[nodiscard]] bool letters_present(std::string_view q) const noexcept;
  [[nodiscard]] Position query_anchor(std::string_view q) const;

  // Narrows `iv` (strings sharing a prefix of length depth) to those with letter c at depth.
  [[nodiscard]] Interval narrow_left(Interval iv, std::size_t depth, unsigned char c) const;
  [[nodiscard]] Interval narrow_right(Interval iv, std::size_t depth, unsigned char c) const;

  [[nodiscard]] bool left_matches(Position j_t, std::string_view q, Position j_q,
                                  std::size_t alpha) const noexcept;
  [[nodiscard]] bool right_matches(Position j_t, std::string_view q, Position j_q,
                                   std::size_t beta) const noexcept;

  std::string text_;
  std::size_t ell_ = 0;
  std::size_t r_ = 0;
  QueryMode mode_ = QueryMode::V1_RANGE;
  std::vector<Position> anchors_;
  std::vector<Position> left_;
  std::vector<Position> right_;
  std::vector<std::uint32_t> y_of_x_;  // 0-based rank-space points
  WaveletMatrix range_;
  bool present_[256] = {};
};

}  // namespace bda
