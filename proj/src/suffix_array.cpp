#include "bda/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "bda/common.hpp"

namespace bda {

// Prefix doubling with two radix passes per round.
std::vector<std::uint32_t> build_suffix_array(std::string_view text) {
  const std::size_t n = text.size();
  if (n >= std::numeric_limits<std::uint32_t>::max()) throw Error("text too long for suffix array");
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n);
  if (n == 0) return sa;
  for (std::size_t i = 0; i < n; ++i) rank[i] = static_cast<unsigned char>(text[i]) + 1;
  std::iota(sa.begin(), sa.end(), 0u);

  std::vector<std::uint32_t> count;
  std::vector<std::uint32_t> buffer(n);
  std::size_t classes = 257;
  // Ranks are >= 1; rank 0 stands for "past the end".
  auto key = [&](std::uint32_t i, std::size_t h) -> std::uint32_t {
    return i + h < n ? rank[i + h] : 0;
  };
  auto radix_pass = [&](std::size_t h) {
    count.assign(classes + 1, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[key(sa[i], h)];
    std::uint32_t sum = 0;
    for (auto& c : count) {
      const std::uint32_t c0 = c;
      c = sum;
      sum += c0;
    }
    for (std::size_t i = 0; i < n; ++i) buffer[count[key(sa[i], h)]++] = sa[i];
    sa.swap(buffer);
  };

  for (std::size_t h = 1;; h <<= 1) {
    radix_pass(h);  // secondary key
    radix_pass(0);  // primary key, stable
    tmp[sa[0]] = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const bool same = rank[sa[i]] == rank[sa[i - 1]] && key(sa[i], h) == key(sa[i - 1], h);
      tmp[sa[i]] = tmp[sa[i - 1]] + (same ? 0 : 1);
    }
    rank.swap(tmp);
    classes = rank[sa[n - 1]];
    if (classes == n || h >= n) break;
  }
  return sa;
}

std::vector<std::uint32_t> build_lcp_array(std::string_view text,
                                           const std::vector<std::uint32_t>& sa) {
  const std::size_t n = sa.size();
  std::vector<std::uint32_t> lcp(n, 0);
  if (n == 0) return lcp;
  const auto isa = inverse_suffix_array(sa);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (isa[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[isa[i] - 1];
    while (i + h < n && j + h < n && text[i + h] == text[j + h]) ++h;
    lcp[isa[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

std::vector<std::uint32_t> inverse_suffix_array(const std::vector<std::uint32_t>& sa) {
  std::vector<std::uint32_t> isa(sa.size());
  for (std::size_t i = 0; i < sa.size(); ++i) isa[sa[i]] = static_cast<std::uint32_t>(i);
  return isa;
}

}  // namespace bda
