#include "bda/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bda/rotation.hpp"

namespace bda::oracles {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error("empty range");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return x % bound;
  }
}

char alphabet_letter(std::size_t i, std::size_t sigma) {
  if (sigma < 1 || sigma > 255) throw Error("alphabet size must lie in [1, 255]");
  return sigma <= 26 ? static_cast<char>('a' + i) : static_cast<char>(i + 1);
}

std::string gen_random_string(std::size_t n, std::size_t sigma, Rng& rng) {
  alphabet_letter(0, sigma);
  std::string s(n, '\0');
  for (auto& c : s) c = alphabet_letter(rng.below(sigma), sigma);
  return s;
}

std::string gen_random_string(std::size_t n, std::size_t sigma, std::uint64_t seed) {
  Rng rng(seed);
  return gen_random_string(n, sigma, rng);
}

std::size_t oracle_minimal_rotation(std::string_view x) {
  if (x.empty()) throw Error("empty input");
  const std::string doubled = std::string(x) + std::string(x);
  std::size_t best = 0;
  for (std::size_t j = 1; j < x.size(); ++j) {
    if (doubled.compare(j, x.size(), doubled, best, x.size()) < 0) best = j;
  }
  return best + 1;
}

std::vector<Position> oracle_minimizers(std::string_view t, std::size_t w, std::size_t k) {
  if (w < 1 || k < 1 || w + k - 1 > t.size()) throw Error("window longer than text");
  std::set<Position> picked;
  for (std::size_t i = 0; i + w + k - 1 <= t.size(); ++i) {
    std::string_view best = t.substr(i, k);
    for (std::size_t j = i + 1; j < i + w; ++j) best = std::min(best, t.substr(j, k));
    for (std::size_t j = i; j < i + w; ++j)
      if (t.substr(j, k) == best) picked.insert(j + 1);
  }
  return {picked.begin(), picked.end()};
}

std::vector<Position> oracle_occurrences(std::string_view t, std::string_view q) {
  std::vector<Position> out;
  if (q.empty() || q.size() > t.size()) return out;
  for (std::size_t i = 0; i + q.size() <= t.size(); ++i) {
    bool match = true;
    for (std::size_t j = 0; j < q.size() && match; ++j) match = t[i + j] == q[j];
    if (match) out.push_back(i + 1);
  }
  return out;
}

std::size_t oracle_edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::vector<std::size_t>> dp(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
  for (std::size_t i = 0; i <= a.size(); ++i) dp[i][0] = i;
  for (std::size_t j = 0; j <= b.size(); ++j) dp[0][j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i)
    for (std::size_t j = 1; j <= b.size(); ++j)
      dp[i][j] = std::min({dp[i - 1][j] + 1, dp[i][j - 1] + 1,
                           dp[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
  return dp[a.size()][b.size()];
}

bool oracle_edit_distance_within(std::string_view a, std::string_view b, std::size_t bound) {
  const std::size_t la = a.size(), lb = b.size();
  if ((la > lb ? la - lb : lb - la) > bound) return false;
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  // Cells with |i - j| > bound cannot lie on an alignment of cost <= bound.
  std::vector<std::size_t> prev(lb + 1, kInf), cur(lb + 1, kInf);
  for (std::size_t j = 0; j <= std::min(lb, bound); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= la; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    const std::size_t lo = i > bound ? i - bound : 0;
    const std::size_t hi = std::min(lb, i + bound);
    if (lo == 0) cur[0] = i;
    for (std::size_t j = std::max<std::size_t>(lo, 1); j <= hi; ++j)
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    prev.swap(cur);
  }
  return prev[lb] <= bound;
}

TrialStats avg_anchor_count(std::size_t n, std::size_t ell, std::size_t sigma, TrialMode mode,
                            std::uint64_t trials, std::uint64_t seed) {
  if (ell < 1 || ell > n) throw Error("window longer than text");
  alphabet_letter(0, sigma);
  TrialStats stats{n, ell, sigma, mode, 0, 0, 0.0, 0.0};

  RotationSolver solver;
  std::vector<char> marked(n, 0);
  auto count_anchors = [&](const std::string& s) {
    std::fill(marked.begin(), marked.end(), 0);
    std::uint64_t c = 0;
    for (std::size_t i = 0; i + ell <= n; ++i) {
      const std::size_t p = i + solver.least(std::string_view(s).substr(i, ell));
      if (!marked[p]) {
        marked[p] = 1;
        ++c;
      }
    }
    return c;
  };

  std::string s(n, alphabet_letter(0, sigma));
  if (mode == TrialMode::EXHAUSTIVE) {
    std::uint64_t space = 1;
    for (std::size_t i = 0; i < n; ++i) {
      space *= sigma;
      if (space > kExhaustiveCap) throw Error("exhaustive enumeration beyond sigma^n <= 2^24");
    }
    std::vector<std::size_t> digits(n, 0);
    for (std::uint64_t t = 0; t < space; ++t) {
      stats.total += count_anchors(s);
      // Odometer increment over the alphabet.
      for (std::size_t i = 0; i < n; ++i) {
        if (++digits[i] < sigma) {
          s[i] = alphabet_letter(digits[i], sigma);
          break;
        }
        digits[i] = 0;
        s[i] = alphabet_letter(0, sigma);
      }
    }
    stats.trials = space;
    stats.avg = static_cast<double>(stats.total) / static_cast<double>(space);
    return stats;
  }

  if (trials == 0) throw Error("Monte-Carlo estimation needs at least one trial");
  Rng rng(seed);
  double sum_sq = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& c : s) c = alphabet_letter(rng.below(sigma), sigma);
    const std::uint64_t c = count_anchors(s);
    stats.total += c;
    sum_sq += static_cast<double>(c) * static_cast<double>(c);
  }
  stats.trials = trials;
  const double mean = static_cast<double>(stats.total) / static_cast<double>(trials);
  stats.avg = mean;
  if (trials > 1) {
    const double var = (sum_sq - static_cast<double>(trials) * mean * mean) /
                       static_cast<double>(trials - 1);
    stats.stderr_ = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
  }
  return stats;
}

std::string apply_random_edits(std::string s, std::size_t ops, std::size_t sigma, Rng& rng) {
  for (std::size_t op = 0; op < ops; ++op) {
    auto kind = rng.below(3);
    if (s.empty()) kind = 0;
    if (kind == 0) {  // insert
      const auto pos = rng.below(s.size() + 1);
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), alphabet_letter(rng.below(sigma), sigma));
    } else if (kind == 1) {  // delete
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(rng.below(s.size())));
    } else {  // substitute with a different letter
      const auto pos = rng.below(s.size());
      if (sigma < 2) continue;
      char c = s[pos];
      while (c == s[pos]) c = alphabet_letter(rng.below(sigma), sigma);
      s[pos] = c;
    }
  }
  return s;
}

SyntheticData gen_synthetic(const SyntheticConfig& cfg) {
  if (cfg.k < 1) throw Error("cluster size must be at least 1");
  if (!(cfg.d_prime >= 0.0 && cfg.d_prime < cfg.d && cfg.d <= 1.0))
    throw Error("synthetic rates must satisfy 0 <= d' < d <= 1");
  const auto e = static_cast<std::size_t>(std::llround(cfg.d * static_cast<double>(cfg.qlen)));
  const auto e_prime =
      static_cast<std::size_t>(std::llround(cfg.d_prime * static_cast<double>(cfg.qlen)));
  Rng rng(cfg.seed);
  SyntheticData data;
  std::string q = gen_random_string(cfg.qlen, cfg.sigma, rng);
  for (std::size_t i = 0; i < cfg.num_queries; ++i) {
    if (i > 0) q = apply_random_edits(data.queries.back(), e, cfg.sigma, rng);
    data.queries.push_back(q);
    std::set<std::size_t> cluster;
    cluster.insert(data.dictionary.size());
    data.dictionary.push_back(q);
    for (std::size_t m = 1; m < cfg.k; ++m) {
      const std::size_t ops = rng.between(0, e_prime);
      cluster.insert(data.dictionary.size());
      data.dictionary.push_back(apply_random_edits(q, ops, cfg.sigma, rng));
    }
    data.truth.push_back(std::move(cluster));
  }
  for (std::size_t i = 0; i < data.queries.size(); ++i) {
    if (i > 0 && !oracle_edit_distance_within(data.queries[i - 1], data.queries[i], e))
      throw Error("generated query chain violates its edit budget");
    for (const std::size_t id : data.truth[i])
      if (!oracle_edit_distance_within(data.dictionary[id], data.queries[i], e_prime))
        throw Error("generated cluster member violates its edit budget");
  }
  return data;
}

double evaluate_f1(const std::vector<std::size_t>& returned, const std::set<std::size_t>& truth,
                   std::size_t k) {
  if (k == 0) throw Error("K must be at least 1");
  std::size_t hits = 0;
  for (const std::size_t id : returned) hits += truth.count(id);
  if (hits == 0) return 0.0;
  const double precision = static_cast<double>(hits) / static_cast<double>(returned.size());
  const double recall = static_cast<double>(hits) / static_cast<double>(k);
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace bda::oracles
