// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bda/cli.hpp"
#include "bda/index.hpp"
#include "bda/io.hpp"
#include "bda/oracles.hpp"
#include "bda/rotation.hpp"
#include "bda/sampling.hpp"
#include "bda/similarity.hpp"

namespace {

namespace oc = bda::oracles;
using bda::Position;
using Positions = std::vector<Position>;

struct Report {
  std::vector<std::string> failures;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!ok && failures.size() < 10) failures.push_back(what);
    if (!ok && failures.size() == 10) failures.push_back("...");
  }
};

int run_criterion(int id, const std::string& title, const std::function<void(Report&)>& body) {
  Report r;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool ok = r.failures.empty();
  std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", ok ? "PASS" : "FAIL", id, title.c_str(), secs,
              r.detail.empty() ? "" : " | ", r.detail.c_str());
  for (const auto& f : r.failures) std::printf("    %s\n", f.c_str());
  std::fflush(stdout);
  return ok ? 0 : 1;
}

std::string fixed(double v, int decimals) { return bda::io::format_real(v, decimals); }

void worked_examples(Report& r) {
  const std::string t = "aabaaabcbda", t2 = "aacaaaccbda", q = "abaaa";
  r.expect(bda::minimizers_std(t, 3, 3).positions == Positions{1, 4, 5, 6, 7}, "M33(T)");
  r.expect(bda::minimizers_std(q, 3, 3).positions == Positions{3}, "M33(Q)");
  r.expect(bda::bd_anchors(t, 5).positions == Positions{4, 5, 6, 11}, "A5(T)");
  r.expect(bda::bd_anchors(t2, 5).positions == Positions{4, 5, 6, 11}, "A5(T')");
  r.expect(bda::bd_anchors(q, 5).positions == Positions{3}, "A5(Q)");

  const auto ix = bda::TextIndex::build(t, 5);
  r.expect(ix.hit_query("aacabaaaae", {6, 3, 3}) == std::vector<bda::Hit>{{6, 4}}, "(3,3)-hit (6,4)");
  r.expect(ix.pattern_search(q) == Positions{2}, "abaaa at 2");
  const auto v2 = bda::TextIndex::build(t, 5, bda::QueryMode::V2_ONESIDED);
  r.expect(v2.pattern_search(q) == Positions{2}, "abaaa at 2 (one-sided)");

  std::vector<std::string> lefts, rights;
  for (const auto j : ix.left_order()) lefts.push_back(ix.left_string(j));
  for (const auto j : ix.right_order()) rights.push_back(ix.right_string(j));
  const std::set<std::string> want_left{"abaa", "aabaa", "aaabaa", "adbcbaaabaa"};
  const std::set<std::string> want_right{"aaabcbda", "aabcbda", "abcbda", "a"};
  r.expect(std::set<std::string>(lefts.begin(), lefts.end()) == want_left, "left strings");
  r.expect(std::set<std::string>(rights.begin(), rights.end()) == want_right, "right strings");
  r.expect(std::is_sorted(lefts.begin(), lefts.end()) && std::is_sorted(rights.begin(), rights.end()),
           "orders sorted");
}

void exhaustive_averages(Report& r) {
  const std::vector<std::pair<std::size_t, double>> rows{{4, 8.53}, {8, 4.37}, {12, 2.77}, {16, 1.76}};
  for (const auto& [ell, expected] : rows) {
    const auto s = oc::avg_anchor_count(20, ell, 2, oc::TrialMode::EXHAUSTIVE, 0, 0);
    r.detail += "l=" + std::to_string(ell) + ":" + fixed(s.avg, 4) + " ";
    r.expect(s.trials == (1u << 20), "trial count");
    r.expect(std::abs(s.avg - expected) <= 0.005 + 1e-12,
             "l=" + std::to_string(ell) + " got " + fixed(s.avg, 6) + " want " + fixed(expected, 2));
  }
}

void sampled_averages(Report& r) {
  const std::vector<std::pair<std::size_t, double>> rows{{4, 14.16}, {8, 7.67}, {12, 5.26}, {16, 3.85}};
  for (const auto& [ell, expected] : rows) {
    const auto s = oc::avg_anchor_count(32, ell, 2, oc::TrialMode::MONTE_CARLO, 1000000,
                                        bda::cli::kDefaultSeed + ell);
    r.detail += "l=" + std::to_string(ell) + ":" + fixed(s.avg, 3) + "±" + fixed(s.stderr_, 3) + " ";
    r.expect(std::abs(s.avg - expected) <= 0.05,
             "l=" + std::to_string(ell) + " got " + fixed(s.avg, 4) + " want " + fixed(expected, 2));
  }
}

void reduced_density(Report& r) {
  const auto text = oc::gen_random_string(1000000, 4, bda::cli::kDefaultSeed);
  const std::size_t sigma = bda::alphabet_size(text);
  r.expect(sigma == 4, "alphabet size");
  double prev = 2.0;
  for (const std::size_t ell : {8, 16, 32, 64}) {
    const auto rr = bda::default_r(ell, sigma, bda::ReductionRule::EXPERIMENT);
    const double d = bda::density(bda::reduced_bd_anchors(text, ell, rr));
    const double lo = 1.0 / static_cast<double>(ell), hi = 2.5 / static_cast<double>(ell);
    r.detail += "l=" + std::to_string(ell) + ",r=" + std::to_string(rr) + ":" + fixed(d * ell, 3) + "/l ";
    r.expect(d >= lo && d <= hi, "l=" + std::to_string(ell) + " density " + fixed(d, 6) +
                                     " outside [" + fixed(lo, 6) + ", " + fixed(hi, 6) + "]");
    r.expect(d <= prev, "density increased at l=" + std::to_string(ell));
    prev = d;
  }
}

std::vector<bda::Hit> brute_hits(const bda::TextIndex& ix, const std::string& q, Position jq,
                                 std::size_t alpha, std::size_t beta) {
  const auto& t = ix.text();
  std::vector<bda::Hit> out;
  for (const Position jt : ix.anchors()) {
    if (jt < alpha || jt + beta - 1 > t.size()) continue;
    bool ok = true;
    for (std::size_t d = 0; d < alpha && ok; ++d) ok = t[jt - 1 - d] == q[jq - 1 - d];
    for (std::size_t d = 0; d < beta && ok; ++d) ok = t[jt - 1 + d] == q[jq - 1 + d];
    if (ok) out.push_back({jq, jt});
  }
  return out;
}

void oracle_suites(Report& r) {
  oc::Rng rng(bda::cli::kDefaultSeed);
  std::size_t cases = 0;

  // (a) exhaustive binary strings up to length 12, then random strings.
  for (std::size_t len = 1; len <= 12; ++len) {
    std::string x(len, 'a');
    for (std::uint32_t code = 0; code < (1u << len); ++code) {
      for (std::size_t i = 0; i < len; ++i) x[i] = (code >> i & 1u) ? 'b' : 'a';
      r.expect(bda::minimal_rotation(x) == oc::oracle_minimal_rotation(x), "(a) " + x);
      ++cases;
    }
  }
  for (int t = 0; t < 10000; ++t) {
    const auto x = oc::gen_random_string(rng.between(1, 64), rng.between(2, 26), rng);
    r.expect(bda::minimal_rotation(x) == oc::oracle_minimal_rotation(x), "(a) " + x);
  }
  r.detail += "a=" + std::to_string(cases + 10000) + " ";

  // (b)
  for (int t = 0; t < 1000; ++t) {
    const auto n = rng.between(1, 300);
    const auto text = oc::gen_random_string(n, rng.between(2, 4), rng);
    const auto k = rng.between(1, std::min<std::uint64_t>(n, 10));
    const auto w = rng.between(1, std::min<std::uint64_t>(n - k + 1, 16));
    r.expect(bda::minimizers_std(text, w, k).positions == oc::oracle_minimizers(text, w, k),
             "(b) " + text + " w=" + std::to_string(w) + " k=" + std::to_string(k));
  }

  // (c)
  for (int t = 0; t < 1000; ++t) {
    const std::size_t sigma = std::vector<std::size_t>{2, 4, 26}[t % 3];
    const std::size_t ell = std::vector<std::size_t>{4, 8, 16}[rng.below(3)];
    const auto text = oc::gen_random_string(rng.between(ell, 2000), sigma, rng);
    std::string q;
    if (rng.below(2) == 0 && text.size() >= ell) {
      const auto len = rng.between(ell, std::min<std::size_t>(text.size(), ell + 40));
      q = text.substr(rng.below(text.size() - len + 1), len);
    } else {
      q = oc::gen_random_string(rng.between(ell, ell + 8), sigma, rng);
    }
    const auto expected = oc::oracle_occurrences(text, q);
    const auto v1 = bda::TextIndex::build(text, ell, bda::QueryMode::V1_RANGE);
    const auto v2 = bda::TextIndex::build(text, ell, bda::QueryMode::V2_ONESIDED);
    r.expect(v1.pattern_search(q) == expected, "(c) v1 " + q);
    r.expect(v2.pattern_search(q) == expected, "(c) v2 " + q);
  }

  // (d)
  for (int t = 0; t < 1000; ++t) {
    const std::size_t sigma = rng.between(2, 4);
    const std::size_t ell = rng.between(2, 10);
    const auto text = oc::gen_random_string(rng.between(ell, 600), sigma, rng);
    const auto ix = bda::TextIndex::build(text, ell, t % 2 ? bda::QueryMode::V2_ONESIDED
                                                           : bda::QueryMode::V1_RANGE);
    std::string q;
    if (rng.below(2) == 0 && text.size() >= ell + 4) {
      const auto len = rng.between(ell, std::min<std::size_t>(text.size(), 3 * ell));
      q = text.substr(rng.below(text.size() - len + 1), len);
    } else {
      q = oc::gen_random_string(rng.between(ell, 3 * ell), sigma, rng);
    }
    const auto anchors = bda::window_anchors(q, ell);
    const std::size_t wi = rng.below(anchors.size());
    const Position jq = anchors[wi];
    const std::size_t min_alpha = 1, max_alpha = jq;
    const std::size_t alpha = rng.between(min_alpha, max_alpha);
    const std::size_t max_beta = q.size() - jq + 1;
    const std::size_t min_beta = alpha >= ell ? 1 : ell + 1 - alpha;
    if (min_beta > max_beta) {
      --t;
      continue;
    }
    const std::size_t beta = rng.between(min_beta, max_beta);
    r.expect(ix.hit_query(q, {jq, alpha, beta}) == brute_hits(ix, q, jq, alpha, beta),
             "(d) " + q + " j=" + std::to_string(jq));
  }

  // (e)
  for (int t = 0; t < 100; ++t) {
    const auto n = rng.between(1, 5000);
    const auto text = oc::gen_random_string(n, rng.between(2, 4), rng);
    const auto ell = rng.between(1, std::min<std::uint64_t>(n, 32));
    const double eps = 0.05 + 0.95 * static_cast<double>(rng.below(10000)) / 10000.0;
    r.expect(bda::bd_anchors_chunked(text, ell, eps).positions == bda::bd_anchors(text, ell).positions,
             "(e) n=" + std::to_string(n) + " l=" + std::to_string(ell));
  }
}

std::size_t brute_lis(const bda::SeedHitList& hits) {
  std::size_t best = 0;
  const std::size_t h = hits.size();
  for (std::uint32_t mask = 0; mask < (1u << h); ++mask) {
    Position lq = 0, ls = 0;
    std::size_t len = 0;
    bool ok = true;
    for (std::size_t i = 0; i < h && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      ok = len == 0 || (hits[i].q_pos > lq && hits[i].s_pos > ls);
      lq = hits[i].q_pos;
      ls = hits[i].s_pos;
      ++len;
    }
    if (ok) best = std::max(best, len);
  }
  return best;
}

void lis_and_ub(Report& r) {
  oc::Rng rng(bda::cli::kDefaultSeed + 6);
  auto check_chain = [&](const bda::SeedHitList& hits) {
    const auto c = bda::lis_chain(hits);
    bool inc = true;
    for (std::size_t i = 1; i < c.size(); ++i)
      inc = inc && c[i].q_pos > c[i - 1].q_pos && c[i].s_pos > c[i - 1].s_pos;
    r.expect(inc && c.size() == brute_lis(hits), "lis h=" + std::to_string(hits.size()));
  };
  // Every permutation of string positions for h <= 7.
  std::size_t lists = 0;
  for (std::size_t h = 0; h <= 7; ++h) {
    std::vector<Position> s(h);
    std::iota(s.begin(), s.end(), Position{1});
    do {
      bda::SeedHitList hits;
      for (std::size_t i = 0; i < h; ++i) hits.push_back({i + 1, s[i], 1, 1});
      check_chain(hits);
      ++lists;
    } while (std::next_permutation(s.begin(), s.end()));
  }
  // Random lists with repeated coordinates for every h <= 12.
  for (std::size_t h = 0; h <= 12; ++h) {
    for (int t = 0; t < 300; ++t) {
      bda::SeedHitList hits;
      for (std::size_t i = 0; i < h; ++i) hits.push_back({rng.between(1, h + 1), rng.between(1, h + 1), 1, 1});
      std::stable_sort(hits.begin(), hits.end(),
                       [](const bda::SeedHit& a, const bda::SeedHit& b) { return a.q_pos < b.q_pos; });
      check_chain(hits);
      ++lists;
    }
  }
  r.detail += "lis lists=" + std::to_string(lists) + " ";

  std::size_t nonempty = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t sigma = rng.between(2, 20);
    const std::size_t ell = rng.between(3, 10);
    const auto q = oc::gen_random_string(rng.between(ell + 10, 200), sigma, rng);
    auto s = oc::apply_random_edits(q, rng.between(0, q.size() / 5), sigma, rng);
    while (s.size() < ell) s += oc::alphabet_letter(0, sigma);
    const auto dix = bda::DictionaryIndex::build({s}, ell);
    const auto lists_by_id = bda::collect_hits(dix, q);
    const auto it = lists_by_id.find(0);
    const bda::Chain chain = it == lists_by_id.end() ? bda::Chain{} : bda::lis_chain(it->second);
    nonempty += !chain.empty();
    const auto ed = oc::oracle_edit_distance(q, s);
    r.expect(bda::close_gaps_ub(q, s, chain) >= ed, "ub below edit distance");
    r.expect(bda::close_gaps_ub(q, s, {}) == ed, "empty-chain ub differs from edit distance");
  }
  r.detail += "ub pairs=500 (" + std::to_string(nonempty) + " with seeds) ";

  for (int t = 0; t < 1000; ++t) {
    const auto a = oc::gen_random_string(rng.between(0, 120), rng.between(1, 20), rng);
    const auto b = oc::gen_random_string(rng.between(0, 120), rng.between(1, 20), rng);
    r.expect(bda::edit_distance(a, b) == oc::oracle_edit_distance(a, b), "edit distance " + a + "/" + b);
  }
}

void similarity_end_to_end(Report& r) {
  oc::SyntheticConfig cfg;  // 50 queries, |Q| = 1000, sigma = 20, K = 20, d = 0.15, d' = 0.10
  cfg.seed = bda::cli::kDefaultSeed;
  const auto data = oc::gen_synthetic(cfg);
  for (const std::size_t ell : {8, 12, 16}) {
    const double f1 = bda::cli::evaluate_synthetic(data, ell, {cfg.k, 0, 0});
    r.detail += "l=" + std::to_string(ell) + ":F1=" + fixed(f1, 4) + " ";
    r.expect(f1 >= 0.95, "l=" + std::to_string(ell) + " mean F1 " + fixed(f1, 4));
  }

  // delta > 0: gap closing only for candidates with E >= E_K - delta.
  const auto dix = bda::DictionaryIndex::build(data.dictionary, 12);
  std::size_t calls = 0;
  for (std::size_t qi = 0; qi < 10; ++qi) {
    const auto& q = data.queries[qi];
    const auto all = bda::top_k_query(dix, q, {data.dictionary.size(), 0, 0});
    r.expect(all.gap_closing_calls == 0, "delta=0 issued gap closing");
    const std::size_t e_k = all.candidates[cfg.k - 1].identity;
    for (const std::size_t delta : {1u, 25u, 100u}) {
      const std::size_t floor = e_k > delta ? e_k - delta : 0;
      std::set<std::size_t> eligible;
      for (const auto& c : all.candidates)
        if (c.identity >= floor) eligible.insert(c.string_id);
      const auto res = bda::top_k_query(dix, q, {cfg.k, 0, delta});
      calls += res.gap_closing_calls;
      r.expect(res.gap_closing_calls == eligible.size(),
               "delta=" + std::to_string(delta) + " calls " + std::to_string(res.gap_closing_calls) +
                   " eligible " + std::to_string(eligible.size()));
      for (const auto& c : res.candidates)
        r.expect(eligible.count(c.string_id) && c.ub.has_value(), "unverified candidate returned");
    }
  }
  r.detail += "ub calls=" + std::to_string(calls);
}

std::string cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = bda::cli::run(args, out, err);
  if (code != 0) throw std::runtime_error("bda exited with " + std::to_string(code) + ": " + err.str());
  return out.str();
}

void determinism_and_round_trip(Report& r) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "bda_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };

  bda::io::write_file(p("cfg.json"), R"({"num_queries": 5, "qlen": 300, "k": 6, "seed": 77})");
  const std::string text = oc::gen_random_string(20000, 4, 99);
  bda::io::write_file(p("t.txt"), text);
  std::string patterns;
  oc::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto len = rng.between(12, 40);
    patterns += (i % 2 ? text.substr(rng.below(text.size() - len), len) : oc::gen_random_string(len, 4, rng)) + "\n";
  }
  bda::io::write_file(p("patterns.txt"), patterns);

  const std::vector<std::vector<std::string>> commands{
      {"gen", "--n", "1000", "--sigma", "20", "--seed", "3"},
      {"sample", "--text", p("t.txt"), "--scheme", "win", "--w", "8", "--k", "5", "--order", "hashed", "--seed", "9", "--csv"},
      {"density", "--text", p("t.txt"), "--ell", "8,16", "--order", "hashed"},
      {"avg-count", "--n", "32", "--ell", "8", "--mode", "monte-carlo", "--trials", "20000", "--seed", "11"},
      {"eval", "--config", p("cfg.json"), "--ell", "8,12", "--delta", "5"},
  };
  for (const auto& cmd : commands) r.expect(cli(cmd) == cli(cmd), "non-deterministic: " + cmd[0]);

  for (const std::string sub : {"a", "b"})
    cli({"gen-synthetic", "--config", p("cfg.json"), "--out-dir", p(sub)});
  for (const std::string f : {"queries.txt", "dictionary.txt", "truth.csv"})
    r.expect(bda::io::read_file(p("a") + "/" + f) == bda::io::read_file(p("b") + "/" + f), "gen-synthetic " + f);
  const auto topk = [&] {
    return cli({"topk", "--dict", p("a") + "/dictionary.txt", "--queries", p("a") + "/queries.txt",
                "--ell", "10", "--k", "6", "--delta", "10"});
  };
  r.expect(topk() == topk(), "topk output differs between runs");

  // Round trip through the CLI on the suite text.
  for (const std::string mode : {"v1", "v2"}) {
    for (const std::string ell : {"4", "8", "12"}) {
      cli({"index", "build", "--text", p("t.txt"), "--ell", ell, "--mode", mode, "--out", p("t.idx")});
      const auto idx_bytes = bda::io::read_file(p("t.idx"));
      cli({"index-build", "--text", p("t.txt"), "--ell", ell, "--mode", mode, "--out", p("t2.idx")});
      r.expect(idx_bytes == bda::io::read_file(p("t2.idx")), "index bytes differ");
      const auto from_file = cli({"index", "search", "--text", p("t.txt"), "--index", p("t.idx"),
                                  "--pattern-file", p("patterns.txt"), "--mode", mode});
      const auto ix = bda::TextIndex::build(text, std::stoul(ell),
                                            mode == "v1" ? bda::QueryMode::V1_RANGE : bda::QueryMode::V2_ONESIDED);
      std::string in_memory = "pattern_id,start\n";
      const auto lines = bda::io::read_lines(p("patterns.txt"));
      for (std::size_t i = 0; i < lines.size(); ++i)
        for (const auto s : ix.pattern_search(lines[i]))
          in_memory += std::to_string(i) + "," + std::to_string(s) + "\n";
      r.expect(from_file == in_memory, "round trip mismatch mode=" + mode + " l=" + ell);
    }
  }

  // In-memory round trip over random suite inputs.
  for (int t = 0; t < 200; ++t) {
    const std::size_t sigma = std::vector<std::size_t>{2, 4, 26}[t % 3];
    const std::size_t ell = std::vector<std::size_t>{4, 8, 16}[rng.below(3)];
    const auto s = oc::gen_random_string(rng.between(ell, 2000), sigma, rng);
    const auto ix = bda::TextIndex::build(s, ell);
    std::stringstream buf;
    ix.save(buf);
    const auto back = bda::TextIndex::load(buf, s, t % 2 ? bda::QueryMode::V2_ONESIDED : bda::QueryMode::V1_RANGE);
    for (int k = 0; k < 5; ++k) {
      const auto len = rng.between(ell, std::min<std::size_t>(s.size(), ell + 20));
      const auto q = k % 2 ? s.substr(rng.below(s.size() - len + 1), len) : oc::gen_random_string(len, sigma, rng);
      r.expect(back.pattern_search(q) == ix.pattern_search(q), "in-memory round trip");
    }
  }
  fs::remove_all(dir);
}

}  // namespace

int main() {
  int failed = 0;
  failed += run_criterion(1, "worked examples", worked_examples);
  failed += run_criterion(2, "exhaustive average anchor counts, n=20", exhaustive_averages);
  failed += run_criterion(3, "Monte-Carlo average anchor counts, n=32", sampled_averages);
  failed += run_criterion(4, "rBDA density within [1/l, 2.5/l] and non-increasing", reduced_density);
  failed += run_criterion(5, "oracle equivalence suites (a)-(e)", oracle_suites);
  failed += run_criterion(6, "LIS, gap-closing bound and edit distance", lis_and_ub);
  failed += run_criterion(7, "synthetic top-K similarity search", similarity_end_to_end);
  failed += run_criterion(8, "determinism and index round trip", determinism_and_round_trip);
  std::printf("%d of 8 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
