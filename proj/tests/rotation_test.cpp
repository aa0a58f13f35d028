#include <gtest/gtest.h>

#include <string>

#include "bda/common.hpp"
#include "bda/oracles.hpp"
#include "bda/rotation.hpp"
#include "bda/suffix_array.hpp"

namespace {

using bda::minimal_rotation;
using bda::reduced_minimal_rotation;
namespace oc = bda::oracles;

TEST(MinimalRotation, WorkedExamples) {
  EXPECT_EQ(minimal_rotation("abaaa"), 3u);
  EXPECT_EQ(minimal_rotation("aaaa"), 1u);
}

TEST(MinimalRotation, LeftmostOfPeriodicMinima) { EXPECT_EQ(minimal_rotation("cbacbacba"), 3u); }

TEST(MinimalRotation, EmptyInputThrows) {
  EXPECT_THROW(minimal_rotation(""), bda::Error);
  try {
    minimal_rotation("");
  } catch (const bda::Error& e) {
    EXPECT_STREQ(e.what(), "empty input");
  }
}

TEST(MinimalRotation, ExhaustiveTernaryUpTo12) {
  for (std::size_t len = 1; len <= 12; ++len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) total *= 3;
    if (len > 10) total = std::min<std::size_t>(total, 60000);
    std::string x(len, 'a');
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (std::size_t i = 0; i < len; ++i, c /= 3) x[i] = static_cast<char>('a' + c % 3);
      ASSERT_EQ(minimal_rotation(x), oc::oracle_minimal_rotation(x)) << x;
    }
  }
}

TEST(MinimalRotation, RandomLongerStrings) {
  oc::Rng rng(7);
  for (int t = 0; t < 10000; ++t) {
    const auto n = rng.between(13, 80);
    const auto sigma = rng.between(1, 4);
    const auto x = oc::gen_random_string(n, sigma, rng);
    ASSERT_EQ(minimal_rotation(x), oc::oracle_minimal_rotation(x)) << x;
  }
}

TEST(MinimalRotation, PowersReturnLeftmostPeriod) {
  oc::Rng rng(11);
  for (int t = 0; t < 500; ++t) {
    const auto u = oc::gen_random_string(rng.between(1, 6), 2, rng);
    const auto m = rng.between(2, 5);
    std::string x;
    for (std::size_t i = 0; i < m; ++i) x += u;
    const auto j = minimal_rotation(x);
    EXPECT_LE(j, x.size() / m) << x;
    EXPECT_EQ(j, oc::oracle_minimal_rotation(x));
  }
}

TEST(ReducedRotation, FullRangeEqualsUnrestricted) {
  oc::Rng rng(3);
  for (int t = 0; t < 2000; ++t) {
    const auto x = oc::gen_random_string(rng.between(1, 20), 3, rng);
    EXPECT_EQ(reduced_minimal_rotation(x, x.size()), minimal_rotation(x));
  }
}

TEST(ReducedRotation, MatchesRestrictedScan) {
  oc::Rng rng(5);
  for (int t = 0; t < 5000; ++t) {
    const auto x = oc::gen_random_string(rng.between(2, 16), rng.between(2, 3), rng);
    const auto allowed = rng.between(1, x.size());
    std::size_t best = 1;
    for (std::size_t j = 2; j <= allowed; ++j) {
      const auto cand = x.substr(j - 1) + x.substr(0, j - 1);
      const auto cur = x.substr(best - 1) + x.substr(0, best - 1);
      if (cand < cur) best = j;
    }
    ASSERT_EQ(reduced_minimal_rotation(x, allowed), best) << x << " " << allowed;
  }
}

TEST(ReducedRotation, RejectsBadRange) {
  EXPECT_THROW(reduced_minimal_rotation("abc", 0), bda::Error);
  EXPECT_THROW(reduced_minimal_rotation("abc", 4), bda::Error);
}

TEST(SuffixArray, MatchesNaiveSort) {
  oc::Rng rng(9);
  for (int t = 0; t < 500; ++t) {
    const auto s = oc::gen_random_string(rng.between(1, 60), rng.between(1, 4), rng);
    const auto sa = bda::build_suffix_array(s);
    ASSERT_EQ(sa.size(), s.size());
    for (std::size_t i = 1; i < sa.size(); ++i)
      ASSERT_LT(s.substr(sa[i - 1]), s.substr(sa[i])) << s;
    const auto lcp = bda::build_lcp_array(s, sa);
    for (std::size_t i = 1; i < sa.size(); ++i) {
      const auto a = s.substr(sa[i - 1]), b = s.substr(sa[i]);
      std::size_t l = 0;
      while (l < a.size() && l < b.size() && a[l] == b[l]) ++l;
      ASSERT_EQ(lcp[i], l);
    }
    const auto inv = bda::inverse_suffix_array(sa);
    for (std::size_t i = 0; i < sa.size(); ++i) ASSERT_EQ(inv[sa[i]], i);
  }
}

}  // namespace
