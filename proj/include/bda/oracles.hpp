#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bda/common.hpp"

namespace bda::oracles {

/// Seeded generator with platform-independent bounded draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Letter number `i` of an alphabet of size sigma: 'a'.. for sigma <= 26, bytes 1.. otherwise.
char alphabet_letter(std::size_t i, std::size_t sigma);

/// Uniform i.i.d. string over an alphabet of size sigma.
std::string gen_random_string(std::size_t n, std::size_t sigma, std::uint64_t seed);
std::string gen_random_string(std::size_t n, std::size_t sigma, Rng& rng);

/// Sorts all rotations explicitly; returns the leftmost minimal start, 1-based.
std::size_t oracle_minimal_rotation(std::string_view x);

/// Per-window scan of all w k-mers, keeping every lexicographically minimal position.
std::vector<Position> oracle_minimizers(std::string_view t, std::size_t w, std::size_t k);

/// Naive scan for all (possibly overlapping) occurrences of q in t, 1-based.
std::vector<Position> oracle_occurrences(std::string_view t, std::string_view q);

/// Full-matrix textbook edit distance.
std::size_t oracle_edit_distance(std::string_view a, std::string_view b);

/// True when the edit distance of a and b is at most `bound` (banded DP).
bool oracle_edit_distance_within(std::string_view a, std::string_view b, std::size_t bound);

enum class TrialMode { EXHAUSTIVE, MONTE_CARLO };

struct TrialStats {
  std::size_t n = 0;
  std::size_t ell = 0;
  std::size_t sigma = 0;
  TrialMode mode = TrialMode::EXHAUSTIVE;
  std::uint64_t trials = 0;
  std::uint64_t total = 0;  // summed anchor counts; avg = total / trials exactly
  double avg = 0.0;
  double stderr_ = 0.0;     // 0 for exhaustive runs
};

/// Exhaustive enumeration is capped at sigma^n <= 2^24.
inline constexpr std::uint64_t kExhaustiveCap = std::uint64_t{1} << 24;

/// Mean number of order-ell bd-anchors over strings of length n.
TrialStats avg_anchor_count(std::size_t n, std::size_t ell, std::size_t sigma, TrialMode mode,
                            std::uint64_t trials, std::uint64_t seed);

struct SyntheticConfig {
  std::size_t num_queries = 50;
  std::size_t qlen = 1000;
  std::size_t k = 20;
  double d = 0.15;
  double d_prime = 0.10;
  std::size_t sigma = 20;
  std::uint64_t seed = 1;
};

struct SyntheticData {
  std::vector<std::string> queries;
  std::vector<std::string> dictionary;
  std::vector<std::set<std::size_t>> truth;  // dictionary ids of each query's cluster
};

/// Applies `ops` random edit operations (insert, delete, substitute; equiprobable).
std::string apply_random_edits(std::string s, std::size_t ops, std::size_t sigma, Rng& rng);

/// Chained queries with a planted cluster of K strings around each; the
/// cluster bounds are re-verified by DP before returning.
SyntheticData gen_synthetic(const SyntheticConfig& cfg);

/// Harmonic mean of precision and recall (recall relative to K).
double evaluate_f1(const std::vector<std::size_t>& returned, const std::set<std::size_t>& truth,
                   std::size_t k);

}  // namespace bda::oracles
