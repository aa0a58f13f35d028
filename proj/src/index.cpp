#include "bda/index.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <unordered_map>

#include "bda/rotation.hpp"
#include "bda/suffix_array.hpp"

namespace bda {

namespace {

constexpr std::string_view kMagic = "BDAIDX1\n";

inline int letter(std::string_view s, std::size_t i) noexcept {
  return static_cast<unsigned char>(s[i]);
}

void write_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> buf{};
  for (std::size_t i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(buf.data(), buf.size());
}

std::uint64_t read_u64(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size())) throw Error("truncated index file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < 8; ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return v;
}

std::vector<Position> read_positions(std::istream& in, std::size_t count, std::size_t n) {
  std::vector<Position> out(count);
  for (auto& p : out) {
    p = static_cast<Position>(read_u64(in));
    if (p < 1 || p > n) throw Error("index file holds a position outside the text");
  }
  return out;
}

}  // namespace

TextIndex TextIndex::build(std::string text, std::size_t ell, QueryMode mode, std::size_t r) {
  auto sample = r == 0 ? bd_anchors(text, ell) : reduced_bd_anchors(text, ell, r);
  return build_from_sample(std::move(text), std::move(sample), mode);
}

TextIndex TextIndex::build_from_sample(std::string text, Sample anchors, QueryMode mode) {
  TextIndex ix;
  ix.text_ = std::move(text);
  ix.ell_ = anchors.params.ell;
  ix.r_ = anchors.params.kind == SchemeKind::RBDA ? anchors.params.r : 0;
  ix.anchors_ = std::move(anchors.positions);
  const std::size_t n = ix.text_.size();
  for (const Position j : ix.anchors_)
    if (j < 1 || j > n) throw Error("anchor outside the text");

  const auto isa = inverse_suffix_array(build_suffix_array(ix.text_));
  const std::string reversed(ix.text_.rbegin(), ix.text_.rend());
  const auto isa_rev = inverse_suffix_array(build_suffix_array(reversed));

  ix.right_ = ix.anchors_;
  std::sort(ix.right_.begin(), ix.right_.end(),
            [&](Position a, Position b) { return isa[a - 1] < isa[b - 1]; });
  // The reversed prefix T[1..j] is the suffix of the reversed text starting at n - j.
  ix.left_ = ix.anchors_;
  std::sort(ix.left_.begin(), ix.left_.end(),
            [&](Position a, Position b) { return isa_rev[n - a] < isa_rev[n - b]; });
  ix.finish(mode);
  return ix;
}

void TextIndex::finish(QueryMode mode) {
  mode_ = mode;
  std::unordered_map<Position, std::uint32_t> y_of_pos;
  y_of_pos.reserve(right_.size());
  for (std::size_t y = 0; y < right_.size(); ++y) y_of_pos.emplace(right_[y], static_cast<std::uint32_t>(y));
  if (y_of_pos.size() != right_.size() || left_.size() != right_.size() ||
      anchors_.size() != right_.size())
    throw Error("inconsistent anchor orders");
  y_of_x_.resize(left_.size());
  std::vector<bool> taken(right_.size(), false);
  for (std::size_t x = 0; x < left_.size(); ++x) {
    const auto it = y_of_pos.find(left_[x]);
    if (it == y_of_pos.end() || taken[it->second]) throw Error("inconsistent anchor orders");
    taken[it->second] = true;
    y_of_x_[x] = it->second;
  }
  for (const Position j : anchors_)
    if (!y_of_pos.count(j)) throw Error("inconsistent anchor orders");
  range_ = mode == QueryMode::V1_RANGE ? WaveletMatrix(y_of_x_) : WaveletMatrix();
  std::fill(std::begin(present_), std::end(present_), false);
  for (const char c : text_) present_[static_cast<unsigned char>(c)] = true;
}

std::vector<std::pair<std::size_t, std::size_t>> TextIndex::points() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(y_of_x_.size());
  for (std::size_t x = 0; x < y_of_x_.size(); ++x) out.emplace_back(x + 1, y_of_x_[x] + 1);
  return out;
}

std::string TextIndex::left_string(Position j) const {
  const std::string_view prefix = std::string_view(text_).substr(0, j);
  return {prefix.rbegin(), prefix.rend()};
}

std::string TextIndex::right_string(Position j) const { return text_.substr(j - 1); }

Interval TextIndex::narrow_right(Interval iv, std::size_t depth, unsigned char c) const {
  // Letter at `depth` of the suffix at anchor j, or -1 past the end.
  auto key = [&](Position j) {
    const std::size_t i = j - 1 + depth;
    return i < text_.size() ? letter(text_, i) : -1;
  };
  const auto first = right_.begin() + static_cast<std::ptrdiff_t>(iv.first - 1);
  const auto last = right_.begin() + static_cast<std::ptrdiff_t>(iv.last);
  const auto lo = std::partition_point(first, last, [&](Position j) { return key(j) < c; });
  const auto hi = std::partition_point(lo, last, [&](Position j) { return key(j) <= c; });
  return {static_cast<std::size_t>(lo - right_.begin()) + 1,
          static_cast<std::size_t>(hi - right_.begin())};
}

Interval TextIndex::narrow_left(Interval iv, std::size_t depth, unsigned char c) const {
  auto key = [&](Position j) { return j > depth ? letter(text_, j - 1 - depth) : -1; };
  const auto first = left_.begin() + static_cast<std::ptrdiff_t>(iv.first - 1);
  const auto last = left_.begin() + static_cast<std::ptrdiff_t>(iv.last);
  const auto lo = std::partition_point(first, last, [&](Position j) { return key(j) < c; });
  const auto hi = std::partition_point(lo, last, [&](Position j) { return key(j) <= c; });
  return {static_cast<std::size_t>(lo - left_.begin()) + 1,
          static_cast<std::size_t>(hi - left_.begin())};
}

Interval TextIndex::locate_left_interval(std::string_view p) const {
  Interval iv{1, left_.size()};
  for (std::size_t d = 0; d < p.size() && !iv.empty(); ++d)
    iv = narrow_left(iv, d, static_cast<unsigned char>(p[d]));
  return iv;
}

Interval TextIndex::locate_right_interval(std::string_view p) const {
  Interval iv{1, right_.size()};
  for (std::size_t d = 0; d < p.size() && !iv.empty(); ++d)
    iv = narrow_right(iv, d, static_cast<unsigned char>(p[d]));
  return iv;
}

std::vector<std::pair<std::size_t, std::size_t>> TextIndex::range_report(Interval xr,
                                                                         Interval yr) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (xr.empty() || yr.empty()) return out;
  if (xr.first < 1 || yr.first < 1 || xr.last > y_of_x_.size() || yr.last > y_of_x_.size())
    throw Error("range outside the anchor list");
  if (mode_ == QueryMode::V1_RANGE) {
    for (const auto& [x, y] : range_.report(xr.first - 1, xr.last - 1, yr.first - 1, yr.last - 1))
      out.emplace_back(std::size_t{x} + 1, std::size_t{y} + 1);
    return out;
  }
  for (std::size_t x = xr.first; x <= xr.last; ++x) {
    const std::size_t y = y_of_x_[x - 1] + 1;
    if (y >= yr.first && y <= yr.last) out.emplace_back(x, y);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

bool TextIndex::letters_present(std::string_view q) const noexcept {
  for (const char c : q)
    if (!present_[static_cast<unsigned char>(c)]) return false;
  return true;
}

void TextIndex::validate_query(std::string_view q, const HitQuery& hq) const {
  if (hq.alpha < 1 || hq.beta < 1 || hq.alpha + hq.beta < ell_ + 1) throw Error("extent too small");
  if (hq.j_q < 1 || hq.j_q > q.size() || hq.j_q < hq.alpha || hq.j_q + hq.beta - 1 > q.size())
    throw Error("extent exceeds the query bounds");
}

bool TextIndex::left_matches(Position j_t, std::string_view q, Position j_q,
                             std::size_t alpha) const noexcept {
  if (j_t < alpha) return false;
  return std::string_view(text_).substr(j_t - alpha, alpha) == q.substr(j_q - alpha, alpha);
}

bool TextIndex::right_matches(Position j_t, std::string_view q, Position j_q,
                              std::size_t beta) const noexcept {
  if (j_t - 1 + beta > text_.size()) return false;
  return std::string_view(text_).substr(j_t - 1, beta) == q.substr(j_q - 1, beta);
}

std::vector<Hit> TextIndex::hit_query(std::string_view q, const HitQuery& hq) const {
  validate_query(q, hq);
  std::vector<Hit> hits;
  const std::string_view fragment = q.substr(hq.j_q - hq.alpha, hq.alpha + hq.beta - 1);
  if (!letters_present(fragment)) return hits;
  const std::string_view right = q.substr(hq.j_q - 1, hq.beta);
  const std::string_view left_fwd = q.substr(hq.j_q - hq.alpha, hq.alpha);
  const std::string left(left_fwd.rbegin(), left_fwd.rend());

  if (mode_ == QueryMode::V1_RANGE) {
    const Interval xr = locate_left_interval(left);
    if (xr.empty()) return hits;
    const Interval yr = locate_right_interval(right);
    for (const auto& [x, y] : range_report(xr, yr)) hits.push_back({hq.j_q, right_[y - 1]});
  } else if (hq.beta >= hq.alpha) {
    const Interval yr = locate_right_interval(right);
    for (std::size_t y = yr.first; y <= yr.last; ++y)
      if (left_matches(right_[y - 1], q, hq.j_q, hq.alpha)) hits.push_back({hq.j_q, right_[y - 1]});
  } else {
    const Interval xr = locate_left_interval(left);
    for (std::size_t x = xr.first; x <= xr.last; ++x)
      if (right_matches(left_[x - 1], q, hq.j_q, hq.beta)) hits.push_back({hq.j_q, left_[x - 1]});
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

Position TextIndex::query_anchor(std::string_view q) const {
  validate_text(q);
  if (q.size() < ell_) throw Error("pattern shorter than ℓ");
  const std::string_view window = q.substr(0, ell_);
  return r_ == 0 ? minimal_rotation(window) : reduced_minimal_rotation(window, ell_ - r_);
}

std::vector<Position> TextIndex::pattern_search(std::string_view q) const {
  return mode_ == QueryMode::V1_RANGE ? pattern_search_bidirectional(q) : pattern_search_onesided(q);
}

std::vector<Position> TextIndex::pattern_search_bidirectional(std::string_view q) const {
  const Position j = query_anchor(q);
  std::vector<Position> out;
  if (!letters_present(q)) return out;
  std::string left(q.substr(0, j));
  std::reverse(left.begin(), left.end());
  const Interval xr = locate_left_interval(left);
  if (xr.empty()) return out;
  const Interval yr = locate_right_interval(q.substr(j - 1));
  for (const auto& [x, y] : range_report(xr, yr)) out.push_back(right_[y - 1] - j + 1);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Position> TextIndex::pattern_search_onesided(std::string_view q) const {
  const Position j = query_anchor(q);
  std::vector<Position> out;
  if (!letters_present(q)) return out;
  const std::size_t alpha = j;
  const std::size_t beta = q.size() - j + 1;
  if (beta >= alpha) {
    const Interval yr = locate_right_interval(q.substr(j - 1));
    for (std::size_t y = yr.first; y <= yr.last; ++y)
      if (left_matches(right_[y - 1], q, j, alpha)) out.push_back(right_[y - 1] - j + 1);
  } else {
    std::string left(q.substr(0, j));
    std::reverse(left.begin(), left.end());
    const Interval xr = locate_left_interval(left);
    for (std::size_t x = xr.first; x <= xr.last; ++x)
      if (right_matches(left_[x - 1], q, j, beta)) out.push_back(left_[x - 1] - j + 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Hit>> TextIndex::multi_fragment_query(
    std::string_view q, Position j_q,
    const std::vector<std::pair<std::size_t, std::size_t>>& extents) const {
  if (extents.empty()) throw Error("no fragments given");
  for (std::size_t i = 0; i < extents.size(); ++i) {
    const auto [alpha, beta] = extents[i];
    if (alpha + beta != ell_ + 1) throw Error("fragment extents must satisfy alpha + beta = ell + 1");
    validate_query(q, {j_q, alpha, beta});
    if (i > 0 && !(alpha < extents[i - 1].first && beta > extents[i - 1].second))
      throw Error("fragment extents must be strictly monotone");
  }
  std::vector<std::vector<Hit>> out(extents.size());
  const std::size_t max_alpha = extents.front().first;
  const std::size_t max_beta = extents.back().second;
  if (!letters_present(q.substr(j_q - max_alpha, max_alpha + max_beta - 1))) return out;

  // Intervals for every prefix length of the longest left and right strings,
  // one letter step each: the fragments' strings are prefixes of these two.
  std::vector<Interval> left_iv(max_alpha + 1), right_iv(max_beta + 1);
  left_iv[0] = {1, left_.size()};
  for (std::size_t d = 0; d < max_alpha; ++d)
    left_iv[d + 1] = left_iv[d].empty() ? left_iv[d]
                                        : narrow_left(left_iv[d], d, static_cast<unsigned char>(q[j_q - 1 - d]));
  right_iv[0] = {1, right_.size()};
  for (std::size_t d = 0; d < max_beta; ++d)
    right_iv[d + 1] = right_iv[d].empty() ? right_iv[d]
                                          : narrow_right(right_iv[d], d, static_cast<unsigned char>(q[j_q - 1 + d]));

  for (std::size_t i = 0; i < extents.size(); ++i) {
    const auto [alpha, beta] = extents[i];
    auto& hits = out[i];
    if (mode_ == QueryMode::V1_RANGE) {
      for (const auto& [x, y] : range_report(left_iv[alpha], right_iv[beta]))
        hits.push_back({j_q, right_[y - 1]});
    } else if (beta >= alpha) {
      const Interval yr = right_iv[beta];
      for (std::size_t y = yr.first; y <= yr.last; ++y)
        if (left_matches(right_[y - 1], q, j_q, alpha)) hits.push_back({j_q, right_[y - 1]});
    } else {
      const Interval xr = left_iv[alpha];
      for (std::size_t x = xr.first; x <= xr.last; ++x)
        if (right_matches(left_[x - 1], q, j_q, beta)) hits.push_back({j_q, left_[x - 1]});
    }
    std::sort(hits.begin(), hits.end());
  }
  return out;
}

void TextIndex::save(std::ostream& out) const {
  out.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
  write_u64(out, ell_);
  write_u64(out, text_.size());
  write_u64(out, anchors_.size());
  for (const Position p : anchors_) write_u64(out, p);
  for (const Position p : left_) write_u64(out, p);
  for (const Position p : right_) write_u64(out, p);
  if (!out) throw Error("failed to write index");
}

TextIndex TextIndex::load(std::istream& in, std::string text, QueryMode mode, std::size_t r) {
  std::string magic(kMagic.size(), '\0');
  if (!in.read(magic.data(), static_cast<std::streamsize>(magic.size())) || magic != kMagic)
    throw Error("not a BDAIDX1 index file");
  TextIndex ix;
  ix.ell_ = static_cast<std::size_t>(read_u64(in));
  const auto n = static_cast<std::size_t>(read_u64(in));
  if (n != text.size()) throw Error("index was built over a text of different length");
  const auto count = static_cast<std::size_t>(read_u64(in));
  if (count > n) throw Error("corrupt index: more anchors than letters");
  if (ix.ell_ < 1 || ix.ell_ > n || r >= ix.ell_) throw Error("corrupt index: bad window length");
  ix.text_ = std::move(text);
  ix.r_ = r;
  ix.anchors_ = read_positions(in, count, n);
  ix.left_ = read_positions(in, count, n);
  ix.right_ = read_positions(in, count, n);
  ix.finish(mode);
  return ix;
}

}  // namespace bda
