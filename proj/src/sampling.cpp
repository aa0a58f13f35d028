#include "bda/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <utility>

#include "bda/rotation.hpp"
#include "bda/suffix_array.hpp"

namespace bda {

void validate_text(std::string_view text) {
  if (text.empty()) throw Error("empty text");
  if (text.find(kSeparator) != std::string_view::npos)
    throw Error("text contains the reserved separator byte 0x00");
}

std::size_t alphabet_size(std::string_view text) noexcept {
  bool seen[256] = {};
  std::size_t sigma = 0;
  for (const char c : text) {
    auto& s = seen[static_cast<unsigned char>(c)];
    if (!s) {
      s = true;
      ++sigma;
    }
  }
  return sigma;
}

Position Sample::window_of(Position pos) const noexcept {
  const auto it = std::lower_bound(positions.begin(), positions.end(), pos);
  if (it == positions.end() || *it != pos) return 0;
  return leftmost_window[static_cast<std::size_t>(it - positions.begin())];
}

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::BDA: return "BDA";
    case SchemeKind::RBDA: return "rBDA";
    case SchemeKind::MIN_STD: return "STD";
    case SchemeKind::MIN_WIN: return "WIN";
  }
  return "?";
}

namespace {

void check_window(std::size_t n, std::size_t ell) {
  if (ell < 1) throw Error("window length must be at least 1");
  if (ell > n) throw Error("window longer than text");
}

// Collects anchors of windows [first, last) (0-based starts) into a sorted
// (position, window) list, both 1-based, keeping the smallest window per position.
std::vector<std::pair<Position, Position>> anchors_of_windows(std::string_view text,
                                                              std::size_t ell, std::size_t r,
                                                              std::size_t first, std::size_t last,
                                                              RotationSolver& solver) {
  const std::size_t span = last - first + ell - 1;
  std::vector<Position> first_window(span, 0);
  for (std::size_t i = first; i < last; ++i) {
    const auto window = text.substr(i, ell);
    const std::size_t off = r == 0 ? solver.least(window) : solver.least_restricted(window, ell - r);
    auto& slot = first_window[i - first + off];
    if (slot == 0) slot = i + 1;
  }
  std::vector<std::pair<Position, Position>> out;
  for (std::size_t p = 0; p < span; ++p) {
    if (first_window[p] != 0) out.emplace_back(first + p + 1, first_window[p]);
  }
  return out;
}

Sample make_sample(std::vector<std::pair<Position, Position>> pairs, SchemeParams params,
                   std::size_t n) {
  Sample s;
  s.params = params;
  s.n = n;
  s.positions.reserve(pairs.size());
  s.leftmost_window.reserve(pairs.size());
  for (const auto& [pos, window] : pairs) {
    s.positions.push_back(pos);
    s.leftmost_window.push_back(window);
  }
  return s;
}

Sample anchors_impl(std::string_view text, std::size_t ell, std::size_t r) {
  validate_text(text);
  check_window(text.size(), ell);
  if (r >= ell) throw Error("reduction too large");
  RotationSolver solver;
  SchemeParams params{r == 0 ? SchemeKind::BDA : SchemeKind::RBDA, ell, 0, 0, r, {}};
  return make_sample(anchors_of_windows(text, ell, r, 0, text.size() - ell + 1, solver), params,
                     text.size());
}

void check_minimizer_params(std::string_view text, std::size_t w, std::size_t k) {
  validate_text(text);
  if (w < 1 || k < 1) throw Error("w and k must be at least 1");
  if (w + k - 1 > text.size()) throw Error("window longer than text");
}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t seeded_hash(std::string_view s, std::uint64_t seed) noexcept {
  std::uint64_t h = mix64(seed);
  for (const char c : s) h = mix64(h ^ static_cast<unsigned char>(c));
  return h;
}

}  // namespace

Sample bd_anchors(std::string_view text, std::size_t ell) { return anchors_impl(text, ell, 0); }

std::vector<Position> window_anchors(std::string_view text, std::size_t ell) {
  validate_text(text);
  check_window(text.size(), ell);
  RotationSolver solver;
  std::vector<Position> out(text.size() - ell + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i + 1 + solver.least(text.substr(i, ell));
  return out;
}

Sample reduced_bd_anchors(std::string_view text, std::size_t ell, std::size_t r) {
  return anchors_impl(text, ell, r);
}

std::size_t default_r(std::size_t ell, std::size_t sigma, ReductionRule rule) {
  if (sigma < 2) throw Error("alphabet size must be at least 2");
  if (ell < 2) throw Error("window length must be at least 2");
  const double c = rule == ReductionRule::LEMMA ? 4.0 : 3.0;
  const double value = c * std::log(static_cast<double>(ell)) / std::log(static_cast<double>(sigma));
  // Guard exact integers against log round-off.
  const auto r = static_cast<std::size_t>(std::ceil(value - 1e-9));
  return std::min(r, ell - 1);
}

Sample bd_anchors_chunked(std::string_view text, std::size_t ell, double epsilon) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw Error("epsilon must lie in (0, 1]");
  if (epsilon == 1.0) return bd_anchors(text, ell);
  validate_text(text);
  check_window(text.size(), ell);
  const std::size_t n = text.size();
  const std::size_t windows = n - ell + 1;
  const auto chunk = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::pow(static_cast<double>(n), epsilon))));
  RotationSolver solver;
  std::vector<std::pair<Position, Position>> merged;
  for (std::size_t start = 0; start < windows; start += chunk) {
    const std::size_t stop = std::min(windows, start + chunk);
    for (const auto& item : anchors_of_windows(text, ell, 0, start, stop, solver)) {
      // Earlier chunks only overlap the tail of `merged` and always hold the smaller window.
      auto it = std::lower_bound(merged.begin(), merged.end(), item,
                                 [](const auto& a, const auto& b) { return a.first < b.first; });
      if (it == merged.end() || it->first != item.first) merged.insert(it, item);
    }
  }
  return make_sample(std::move(merged), {SchemeKind::BDA, ell, 0, 0, 0, {}}, n);
}

std::vector<std::uint32_t> kmer_ranks(std::string_view text, std::size_t k, KmerOrder order) {
  const std::size_t n = text.size();
  if (k < 1 || k > n) throw Error("k-mer length out of range");
  const std::size_t m = n - k + 1;
  const auto sa = build_suffix_array(text);
  const auto lcp = build_lcp_array(text, sa);
  std::vector<std::uint32_t> lex(m);
  std::uint32_t rank = 0;
  bool open = false;  // whether the previous suffix of length >= k started a group
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t p = sa[i];
    if (p >= m) {
      open = false;
      continue;
    }
    if (!open || lcp[i] < k) ++rank;
    open = true;
    lex[p] = rank - 1;
  }
  if (order.kind == KmerOrder::Kind::LEX) return lex;

  // Hashed order: key (hash, first occurrence) per distinct k-mer.
  const std::size_t distinct = rank;
  std::vector<std::size_t> first_occ(distinct, m);
  for (std::size_t p = 0; p < m; ++p) first_occ[lex[p]] = std::min(first_occ[lex[p]], p);
  std::vector<std::pair<std::uint64_t, std::size_t>> keys(distinct);
  for (std::size_t g = 0; g < distinct; ++g)
    keys[g] = {seeded_hash(text.substr(first_occ[g], k), order.seed), first_occ[g]};
  std::vector<std::uint32_t> by_key(distinct);
  std::iota(by_key.begin(), by_key.end(), 0u);
  std::sort(by_key.begin(), by_key.end(),
            [&](std::uint32_t a, std::uint32_t b) { return keys[a] < keys[b]; });
  std::vector<std::uint32_t> remap(distinct);
  for (std::uint32_t r = 0; r < distinct; ++r) remap[by_key[r]] = r;
  for (auto& v : lex) v = remap[v];
  return lex;
}

Sample minimizers_std(std::string_view text, std::size_t w, std::size_t k, KmerOrder order) {
  check_minimizer_params(text, w, k);
  const auto ranks = kmer_ranks(text, k, order);
  const std::size_t m = ranks.size();
  std::vector<Position> first_window(m, 0);
  std::deque<std::size_t> dq;  // ranks non-decreasing front to back
  for (std::size_t j = 0; j < m; ++j) {
    while (!dq.empty() && ranks[dq.back()] > ranks[j]) dq.pop_back();
    dq.push_back(j);
    if (j + 1 < w) continue;
    const std::size_t i = j + 1 - w;
    while (dq.front() < i) dq.pop_front();
    const auto best = ranks[dq.front()];
    for (auto it = dq.begin(); it != dq.end() && ranks[*it] == best; ++it) {
      if (first_window[*it] == 0) first_window[*it] = i + 1;
    }
  }
  std::vector<std::pair<Position, Position>> pairs;
  for (std::size_t p = 0; p < m; ++p)
    if (first_window[p] != 0) pairs.emplace_back(p + 1, first_window[p]);
  return make_sample(std::move(pairs), {SchemeKind::MIN_STD, w + k - 1, w, k, 0, order},
                     text.size());
}

Sample minimizers_win(std::string_view text, std::size_t w, std::size_t k, KmerOrder order) {
  check_minimizer_params(text, w, k);
  const auto ranks = kmer_ranks(text, k, order);
  const std::size_t m = ranks.size();
  std::vector<Position> first_window(m, 0);
  std::deque<std::size_t> dq;  // ranks strictly increasing: front is the rightmost minimum
  std::size_t pick = m;
  for (std::size_t j = 0; j < m; ++j) {
    while (!dq.empty() && ranks[dq.back()] >= ranks[j]) dq.pop_back();
    dq.push_back(j);
    if (j + 1 < w) continue;
    const std::size_t i = j + 1 - w;
    while (dq.front() < i) dq.pop_front();
    const auto best = ranks[dq.front()];
    if (pick == m || pick < i || ranks[pick] != best) pick = dq.front();
    if (first_window[pick] == 0) first_window[pick] = i + 1;
  }
  std::vector<std::pair<Position, Position>> pairs;
  for (std::size_t p = 0; p < m; ++p)
    if (first_window[p] != 0) pairs.emplace_back(p + 1, first_window[p]);
  return make_sample(std::move(pairs), {SchemeKind::MIN_WIN, w + k - 1, w, k, 0, order},
                     text.size());
}

double density(const Sample& s) {
  if (s.n == 0) throw Error("density of an empty text");
  return static_cast<double>(s.positions.size()) / static_cast<double>(s.n);
}

}  // namespace bda
