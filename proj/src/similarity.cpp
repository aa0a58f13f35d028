#include "bda/similarity.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

namespace bda {

DictionaryIndex::DictionaryIndex(std::vector<std::string> strings, std::vector<Position> starts,
                                 TextIndex inner)
    : strings_(std::move(strings)), starts_(std::move(starts)), inner_(std::move(inner)) {}

DictionaryIndex DictionaryIndex::build(std::vector<std::string> strings, std::size_t ell,
                                       QueryMode mode) {
  if (strings.empty()) throw Error("empty dictionary");
  if (ell < 1) throw Error("window length must be at least 1");
  std::string concat;
  std::vector<Position> starts;
  Sample anchors;
  anchors.params = {SchemeKind::BDA, ell, 0, 0, 0, {}};
  for (std::size_t id = 0; id < strings.size(); ++id) {
    const auto& s = strings[id];
    if (s.size() < ell)
      throw Error("dictionary record " + std::to_string(id) + " is shorter than ℓ");
    validate_text(s);
    if (id > 0) concat.push_back(kSeparator);
    const Position base = concat.size();
    starts.push_back(base + 1);
    concat += s;
    // Anchors per record: no window crosses a separator.
    const Sample local = bd_anchors(s, ell);
    for (std::size_t i = 0; i < local.size(); ++i) {
      anchors.positions.push_back(base + local.positions[i]);
      anchors.leftmost_window.push_back(base + local.leftmost_window[i]);
    }
  }
  anchors.n = concat.size();
  auto inner = TextIndex::build_from_sample(std::move(concat), std::move(anchors), mode);
  return DictionaryIndex(std::move(strings), std::move(starts), std::move(inner));
}

DictionaryIndex::Location DictionaryIndex::locate(Position global) const {
  if (global < 1 || global > inner_.text().size()) throw Error("position outside the dictionary");
  const auto it = std::upper_bound(starts_.begin(), starts_.end(), global);
  const auto id = static_cast<std::size_t>(it - starts_.begin()) - 1;
  const Position offset = global - starts_[id] + 1;
  return {id, std::min(offset, strings_[id].size() + 1)};
}

std::vector<Seed> query_seeds(std::string_view q, std::size_t ell) {
  if (q.size() < ell) throw Error("query shorter than ℓ");
  const auto per_window = window_anchors(q, ell);
  // For each anchor keep the producing window that centres it best.
  const auto balance = [ell](std::size_t a) {
    return 2 * a > ell + 1 ? 2 * a - ell - 1 : ell + 1 - 2 * a;
  };
  std::map<Position, std::size_t> alpha_of;
  for (std::size_t i = 0; i < per_window.size(); ++i) {
    const Position j = per_window[i];
    const std::size_t alpha = j - i;  // window starts at i + 1
    auto [it, inserted] = alpha_of.emplace(j, alpha);
    if (!inserted && balance(alpha) < balance(it->second)) it->second = alpha;
  }
  std::vector<Seed> seeds;
  seeds.reserve(alpha_of.size());
  for (const auto& [j, alpha] : alpha_of) seeds.push_back({j, alpha, ell - alpha + 1});
  return seeds;
}

std::map<std::size_t, SeedHitList> collect_hits(const DictionaryIndex& dix, std::string_view q) {
  std::map<std::size_t, SeedHitList> lists;
  for (const Seed& seed : query_seeds(q, dix.ell())) {
    for (const Hit& hit : dix.inner().hit_query(q, {seed.j_q, seed.alpha, seed.beta})) {
      const auto loc = dix.locate(hit.j_t);
      lists[loc.string_id].push_back({hit.j_q, loc.offset, seed.alpha, seed.beta});
    }
  }
  return lists;
}

Chain lis_chain(const SeedHitList& hits) {
  if (hits.empty()) return {};
  // Equal query positions ordered by decreasing string position so that at
  // most one of them enters a strictly increasing chain.
  SeedHitList items(hits);
  std::stable_sort(items.begin(), items.end(), [](const SeedHit& a, const SeedHit& b) {
    return a.q_pos != b.q_pos ? a.q_pos < b.q_pos : a.s_pos > b.s_pos;
  });
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> tails;  // index of the smallest tail per pile
  std::vector<std::size_t> prev(items.size(), kNone);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto pile = static_cast<std::size_t>(
        std::lower_bound(tails.begin(), tails.end(), items[i].s_pos,
                         [&](std::size_t t, Position s) { return items[t].s_pos < s; }) -
        tails.begin());
    prev[i] = pile > 0 ? tails[pile - 1] : kNone;
    if (pile == tails.size()) tails.push_back(i);
    else tails[pile] = i;
  }
  Chain chain;
  for (std::size_t i = tails.back(); i != kNone; i = prev[i]) chain.push_back(items[i]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::size_t estimate_identity(const Chain& chain, std::size_t qlen, std::size_t slen) {
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [first, last], 1-based
  spans.reserve(chain.size());
  for (const auto& h : chain) {
    if (h.alpha == 0 || h.beta == 0 || h.q_pos < h.alpha) continue;
    spans.emplace_back(h.q_pos - h.alpha + 1, h.q_pos + h.beta - 1);
  }
  std::sort(spans.begin(), spans.end());
  std::size_t covered = 0;
  std::size_t reach = 0;  // last position already counted
  for (const auto& [first, last] : spans) {
    const std::size_t from = std::max(first, reach + 1);
    if (last >= from) {
      covered += last - from + 1;
      reach = last;
    }
  }
  return std::min({covered, qlen, slen});
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  // b is the shorter string; one row of |b| + 1 cells.
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

std::size_t close_gaps_ub(std::string_view q, std::string_view s, const Chain& chain) {
  struct Block {
    std::size_t qs, ss, len;  // 0-based starts of an exact match of length len
  };
  std::vector<Block> blocks;
  for (const auto& h : chain) {
    if (h.alpha == 0 || h.beta == 0 || h.q_pos < h.alpha || h.s_pos < h.alpha)
      throw Error("stale chain");
    Block nb{h.q_pos - h.alpha, h.s_pos - h.alpha, h.alpha + h.beta - 1};
    if (nb.qs + nb.len > q.size() || nb.ss + nb.len > s.size() ||
        q.substr(nb.qs, nb.len) != s.substr(nb.ss, nb.len))
      throw Error("stale chain");
    if (!blocks.empty()) {
      Block& last = blocks.back();
      const std::size_t q_end = last.qs + last.len, s_end = last.ss + last.len;
      const std::size_t overlap = std::max({q_end > nb.qs ? q_end - nb.qs : 0,
                                            s_end > nb.ss ? s_end - nb.ss : 0});
      if (overlap > 0) {
        // Split the overlap at its midpoint between the two seeds.
        const std::size_t cut_last = std::min(overlap / 2, last.len);
        const std::size_t cut_next = overlap - cut_last;
        if (cut_next >= nb.len) continue;
        last.len -= cut_last;
        nb.qs += cut_next;
        nb.ss += cut_next;
        nb.len -= cut_next;
        if (last.len == 0) blocks.pop_back();
      }
    }
    blocks.push_back(nb);
  }
  std::size_t ub = 0;
  std::size_t qpos = 0, spos = 0;
  for (const Block& b : blocks) {
    ub += edit_distance(q.substr(qpos, b.qs - qpos), s.substr(spos, b.ss - spos));
    qpos = b.qs + b.len;
    spos = b.ss + b.len;
  }
  return ub + edit_distance(q.substr(qpos), s.substr(spos));
}

TopKResult top_k_query(const DictionaryIndex& dix, std::string_view q, const QueryParams& p) {
  if (p.k < 1) throw Error("K must be at least 1");
  validate_text(q);
  if (q.size() < dix.ell()) throw Error("query shorter than ℓ");
  auto lists = collect_hits(dix, q);

  struct Scored {
    std::size_t id;
    std::size_t identity;
    Chain chain;
  };
  std::vector<Scored> survivors;
  const auto& strings = dix.strings();
  for (std::size_t id = 0; id < strings.size(); ++id) {
    const auto it = lists.find(id);
    const std::size_t h = it == lists.end() ? 0 : it->second.size();
    if (h < p.tau) continue;
    Chain chain = it == lists.end() ? Chain{} : lis_chain(it->second);
    const std::size_t e = estimate_identity(chain, q.size(), strings[id].size());
    survivors.push_back({id, e, std::move(chain)});
  }
  std::sort(survivors.begin(), survivors.end(), [](const Scored& a, const Scored& b) {
    return a.identity != b.identity ? a.identity > b.identity : a.id < b.id;
  });

  TopKResult result;
  result.short_list = survivors.size() < p.k;
  if (survivors.empty()) return result;

  if (p.delta == 0) {
    const std::size_t take = std::min(p.k, survivors.size());
    for (std::size_t i = 0; i < take; ++i)
      result.candidates.push_back({survivors[i].id, survivors[i].identity, std::nullopt});
    return result;
  }

  const std::size_t e_k = survivors[std::min(p.k, survivors.size()) - 1].identity;
  const std::size_t floor = e_k > p.delta ? e_k - p.delta : 0;
  std::vector<Candidate> verified;
  for (const auto& sc : survivors) {
    if (sc.identity < floor) break;
    ++result.gap_closing_calls;
    verified.push_back({sc.id, sc.identity, close_gaps_ub(q, strings[sc.id], sc.chain)});
  }
  std::sort(verified.begin(), verified.end(), [](const Candidate& a, const Candidate& b) {
    if (*a.ub != *b.ub) return *a.ub < *b.ub;
    if (a.identity != b.identity) return a.identity > b.identity;
    return a.string_id < b.string_id;
  });
  if (verified.size() > p.k) verified.resize(p.k);
  result.candidates = std::move(verified);
  return result;
}

}  // namespace bda
