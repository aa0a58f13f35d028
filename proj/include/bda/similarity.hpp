#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bda/index.hpp"

namespace bda {

/// Dictionary strings concatenated with separators and indexed by their bd-anchors.
class DictionaryIndex {
 public:
  static DictionaryIndex build(std::vector<std::string> strings, std::size_t ell,
                               QueryMode mode = QueryMode::V1_RANGE);

  struct Location {
    std::size_t string_id = 0;  // 0-based record id
    Position offset = 0;        // 1-based offset inside the record; |S|+1 on a separator
  };

  [[nodiscard]] Location locate(Position global) const;
  [[nodiscard]] const std::vector<std::string>& strings() const noexcept { return strings_; }
  [[nodiscard]] const TextIndex& inner() const noexcept { return inner_; }
  [[nodiscard]] std::size_t ell() const noexcept { return inner_.ell(); }
  /// 1-based global position of the first letter of each record.
  [[nodiscard]] const std::vector<Position>& record_starts() const noexcept { return starts_; }

 private:
  DictionaryIndex(std::vector<std::string> strings, std::vector<Position> starts, TextIndex inner);

  std::vector<std::string> strings_;
  std::vector<Position> starts_;
  TextIndex inner_;
};

struct Seed {
  Position j_q = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

/// One seed hit between the query and a dictionary string, in local coordinates.
struct SeedHit {
  Position q_pos = 0;
  Position s_pos = 0;
  std::size_t alpha = 0;
  std::size_t beta = 0;
  friend bool operator==(const SeedHit&, const SeedHit&) = default;
};

using SeedHitList = std::vector<SeedHit>;
using Chain = std::vector<SeedHit>;

struct QueryParams {
  std::size_t k = 1;
  std::size_t tau = 0;
  std::size_t delta = 0;
};

struct Candidate {
  std::size_t string_id = 0;
  std::size_t identity = 0;           // E: estimated matching letters
  std::optional<std::size_t> ub;     // upper bound on the edit distance, when verified
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

struct TopKResult {
  std::vector<Candidate> candidates;
  bool short_list = false;            // fewer than K strings survived filtering
  std::size_t gap_closing_calls = 0;  // close_gaps_ub invocations
};

/// One seed per distinct bd-anchor of q, from the producing window that centres it best
/// (smallest |alpha - beta|, then leftmost).
std::vector<Seed> query_seeds(std::string_view q, std::size_t ell);

/// Seed hits bucketed by dictionary string, sorted by query position.
std::map<std::size_t, SeedHitList> collect_hits(const DictionaryIndex& dix, std::string_view q);

/// Longest chain strictly increasing in both query and string positions.
Chain lis_chain(const SeedHitList& hits);

/// Size of the union of the chained seeds' query intervals, clamped to [0, min(qlen, slen)].
std::size_t estimate_identity(const Chain& chain, std::size_t qlen, std::size_t slen);
inline std::size_t estimate_identity(const Chain& chain, std::size_t qlen) {
  return estimate_identity(chain, qlen, qlen);
}

/// Sum of exact edit distances between the fragments separating the chained seeds.
std::size_t close_gaps_ub(std::string_view q, std::string_view s, const Chain& chain);

/// Levenshtein distance, O(|a||b|) time and O(min(|a|,|b|)) memory.
std::size_t edit_distance(std::string_view a, std::string_view b);

TopKResult top_k_query(const DictionaryIndex& dix, std::string_view q, const QueryParams& p);

}  // namespace bda
