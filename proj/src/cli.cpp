#include "bda/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "bda/io.hpp"

namespace bda::cli {

namespace {

SchemeKind parse_scheme(const std::string& name) {
  if (name == "bda") return SchemeKind::BDA;
  if (name == "rbda") return SchemeKind::RBDA;
  if (name == "std") return SchemeKind::MIN_STD;
  if (name == "win") return SchemeKind::MIN_WIN;
  throw UsageError("unknown scheme '" + name + "' (expected bda, rbda, std or win)");
}

QueryMode parse_mode(const std::string& name) {
  if (name == "v1") return QueryMode::V1_RANGE;
  if (name == "v2") return QueryMode::V2_ONESIDED;
  throw UsageError("unknown mode '" + name + "' (expected v1 or v2)");
}

KmerOrder parse_order(const std::string& name, std::uint64_t seed) {
  if (name == "lex") return KmerOrder::lex();
  if (name == "hashed") return KmerOrder::hashed(seed);
  throw UsageError("unknown order '" + name + "' (expected lex or hashed)");
}

std::size_t reduction_for(std::string_view text, std::size_t ell, std::optional<std::size_t> r) {
  if (r) return *r;
  return default_r(ell, alphabet_size(text), ReductionRule::EXPERIMENT);
}

// Options shared by every subcommand reading a text file.
struct TextSource {
  std::string path;
  bool fasta = false;

  void attach(CLI::App* app) {
    app->add_option("--text", path, "Text file (raw bytes)")->required();
    app->add_flag("--fasta", fasta, "Strip '>' header lines and line breaks");
  }
  [[nodiscard]] std::string load() const {
    auto text = io::read_text(path, fasta);
    validate_text(text);
    return text;
  }
};

struct SampleCmd {
  TextSource source;
  std::string scheme = "bda";
  std::optional<std::size_t> ell, w, k, r;
  std::optional<double> epsilon;
  std::string order = "lex";
  std::uint64_t seed = kDefaultSeed;
  bool csv = false;

  void attach(CLI::App* app) {
    source.attach(app);
    app->add_option("--scheme", scheme, "bda | rbda | std | win")->capture_default_str();
    app->add_option("--ell", ell, "Window length")->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--w", w, "Minimizer window count")->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--k", k, "Minimizer k-mer length")->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--r", r, "rBDA reduction (default: ceil(3 log ell / log sigma))");
    app->add_option("--epsilon", epsilon, "Chunked bd-anchor construction, epsilon in (0,1]")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--order", order, "Minimizer order: lex | hashed")->capture_default_str();
    app->add_option("--seed", seed, "Seed of the hashed order")->capture_default_str();
    app->add_flag("--csv", csv, "Emit a density CSV row instead of positions");
  }

  int execute(std::ostream& out) const {
    const SchemeKind kind = parse_scheme(scheme);
    const bool minimizer = kind == SchemeKind::MIN_STD || kind == SchemeKind::MIN_WIN;
    if (minimizer) {
      if (!w || !k) throw UsageError("--w and --k are required for minimizer schemes");
      if (ell && *ell != *w + *k - 1) throw UsageError("--ell must equal w + k - 1");
      if (r || epsilon) throw UsageError("--r and --epsilon apply to bd-anchor schemes only");
    } else {
      if (!ell) throw UsageError("--ell is required for bd-anchor schemes");
      if (w || k) throw UsageError("--w and --k apply to minimizer schemes only");
      if (r && kind != SchemeKind::RBDA) throw UsageError("--r applies to the rbda scheme only");
      if (epsilon && kind != SchemeKind::BDA) throw UsageError("--epsilon applies to the bda scheme only");
      if (epsilon && *epsilon <= 0.0) throw UsageError("--epsilon must lie in (0, 1]");
    }
    const KmerOrder kmer_order = parse_order(order, seed);
    const std::string text = source.load();

    Sample s;
    switch (kind) {
      case SchemeKind::BDA:
        s = epsilon ? bd_anchors_chunked(text, *ell, *epsilon) : bd_anchors(text, *ell);
        break;
      case SchemeKind::RBDA:
        s = reduced_bd_anchors(text, *ell, reduction_for(text, *ell, r));
        break;
      case SchemeKind::MIN_STD: s = minimizers_std(text, *w, *k, kmer_order); break;
      case SchemeKind::MIN_WIN: s = minimizers_win(text, *w, *k, kmer_order); break;
    }
    std::ostringstream buf;
    if (csv) {
      buf << sample_csv_header() << sample_csv_row(s);
    } else {
      for (const Position p : s.positions) buf << p << '\n';
    }
    out << buf.str();
    return kExitOk;
  }
};

struct DensityCmd {
  TextSource source;
  std::vector<std::size_t> ells;
  std::vector<std::string> schemes{"bda", "rbda", "std", "win"};
  std::vector<std::size_t> ks;
  std::optional<std::size_t> r;
  std::string order = "lex";
  std::uint64_t seed = kDefaultSeed;

  void attach(CLI::App* app) {
    source.attach(app);
    app->add_option("--ell", ells, "Window lengths")->required()->delimiter(',')
        ->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--schemes", schemes, "Subset of bda,rbda,std,win")->delimiter(',');
    app->add_option("--k", ks, "Minimizer k values (default: all k in [1, ell])")->delimiter(',')
        ->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--r", r, "rBDA reduction (default: ceil(3 log ell / log sigma))");
    app->add_option("--order", order, "Minimizer order: lex | hashed")->capture_default_str();
    app->add_option("--seed", seed, "Seed of the hashed order")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    DensityOptions options;
    options.schemes.clear();
    for (const auto& name : schemes) options.schemes.push_back(parse_scheme(name));
    options.order = parse_order(order, seed);
    options.r = r;
    options.ks = ks;
    out << density_report(source.load(), ells, options);
    return kExitOk;
  }
};

struct IndexBuildCmd {
  TextSource source;
  std::size_t ell = 0;
  std::string mode = "v1";
  std::string out_path;

  void attach(CLI::App* app) {
    source.attach(app);
    app->add_option("--ell", ell, "Anchor order")->required()->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--mode", mode, "v1 | v2")->capture_default_str();
    app->add_option("--out", out_path, "Index file to write")->required();
  }

  int execute(std::ostream&) const {
    const QueryMode m = parse_mode(mode);
    const auto ix = TextIndex::build(source.load(), ell, m);
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error("cannot write " + out_path);
    ix.save(file);
    return kExitOk;
  }
};

struct IndexSearchCmd {
  TextSource source;
  std::string index_path;
  std::string pattern_path;
  std::string mode = "v1";

  void attach(CLI::App* app) {
    source.attach(app);
    app->add_option("--index", index_path, "Index file written by index build")->required();
    app->add_option("--pattern-file", pattern_path, "Patterns, one per line")->required();
    app->add_option("--mode", mode, "v1 | v2")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    const QueryMode m = parse_mode(mode);
    std::ifstream file(index_path, std::ios::binary);
    if (!file) throw Error("cannot open " + index_path);
    const auto ix = TextIndex::load(file, source.load(), m);
    const auto patterns = io::read_lines(pattern_path);
    std::ostringstream buf;
    buf << "pattern_id,start\n";
    for (std::size_t id = 0; id < patterns.size(); ++id)
      for (const Position start : ix.pattern_search(patterns[id])) buf << id << ',' << start << '\n';
    out << buf.str();
    return kExitOk;
  }
};

struct TopKCmd {
  std::string dict_path;
  std::string query_path;
  std::size_t ell = 0;
  std::size_t k = 1;
  std::size_t tau = 0;
  std::size_t delta = 0;
  std::string mode = "v1";

  void attach(CLI::App* app) {
    app->add_option("--dict", dict_path, "Dictionary, one string per line")->required();
    app->add_option("--queries", query_path, "Queries, one per line")->required();
    app->add_option("--ell", ell, "Anchor order")->required()->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--k", k, "Results per query")->required()->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--tau", tau, "Minimum hit-list length")->capture_default_str();
    app->add_option("--delta", delta, "Identity-score slack for verification")->capture_default_str();
    app->add_option("--mode", mode, "v1 | v2")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    const QueryMode m = parse_mode(mode);
    const auto dix = DictionaryIndex::build(io::read_lines(dict_path), ell, m);
    const auto queries = io::read_lines(query_path);
    std::ostringstream buf;
    buf << "query_id,rank,string_id,E,UB\n";
    for (std::size_t qid = 0; qid < queries.size(); ++qid) {
      const auto result = top_k_query(dix, queries[qid], {k, tau, delta});
      for (std::size_t rank = 0; rank < result.candidates.size(); ++rank) {
        const auto& c = result.candidates[rank];
        buf << qid << ',' << rank + 1 << ',' << c.string_id << ',' << c.identity << ',';
        if (c.ub) buf << *c.ub;
        buf << '\n';
      }
    }
    out << buf.str();
    return kExitOk;
  }
};

struct GenCmd {
  std::size_t n = 0;
  std::size_t sigma = 0;
  std::uint64_t seed = kDefaultSeed;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "Length")->required();
    app->add_option("--sigma", sigma, "Alphabet size")->required()->check(CLI::Range(std::size_t{1}, std::size_t{255}));
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    out << oracles::gen_random_string(n, sigma, seed) << '\n';
    return kExitOk;
  }
};

struct GenSyntheticCmd {
  std::string config_path;
  std::string out_dir;

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON synthetic configuration")->required();
    app->add_option("--out-dir", out_dir, "Directory for queries.txt, dictionary.txt, truth.csv")
        ->required();
  }

  int execute(std::ostream& out) const {
    const auto cfg = parse_synthetic_config(io::read_file(config_path));
    const auto data = oracles::gen_synthetic(cfg);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create " + out_dir);
    std::string queries, dictionary, truth = "query_id,string_id\n";
    for (const auto& q : data.queries) queries += q + '\n';
    for (const auto& s : data.dictionary) dictionary += s + '\n';
    for (std::size_t qid = 0; qid < data.truth.size(); ++qid)
      for (const auto id : data.truth[qid]) truth += std::to_string(qid) + ',' + std::to_string(id) + '\n';
    const std::filesystem::path dir(out_dir);
    io::write_file((dir / "queries.txt").string(), queries);
    io::write_file((dir / "dictionary.txt").string(), dictionary);
    io::write_file((dir / "truth.csv").string(), truth);
    out << "queries,dictionary\n" << data.queries.size() << ',' << data.dictionary.size() << '\n';
    return kExitOk;
  }
};

struct AvgCountCmd {
  std::size_t n = 0;
  std::size_t ell = 0;
  std::size_t sigma = 2;
  std::string mode = "exhaustive";
  std::uint64_t trials = 1000000;
  std::uint64_t seed = kDefaultSeed;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "String length")->required()->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--ell", ell, "Anchor order")->required()->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--sigma", sigma, "Alphabet size")->capture_default_str()->check(CLI::Range(std::size_t{1}, std::size_t{255}));
    app->add_option("--mode", mode, "exhaustive | monte-carlo")->capture_default_str();
    app->add_option("--trials", trials, "Monte-Carlo trials")->capture_default_str();
    app->add_option("--seed", seed, "RNG seed")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    oracles::TrialMode m;
    if (mode == "exhaustive") m = oracles::TrialMode::EXHAUSTIVE;
    else if (mode == "monte-carlo") m = oracles::TrialMode::MONTE_CARLO;
    else throw UsageError("unknown mode '" + mode + "' (expected exhaustive or monte-carlo)");
    const auto stats = oracles::avg_anchor_count(n, ell, sigma, m, trials, seed);
    out << "n,ell,sigma,mode,trials,avg,stderr\n"
        << stats.n << ',' << stats.ell << ',' << stats.sigma << ',' << mode << ',' << stats.trials
        << ',' << io::format_real(stats.avg) << ',' << io::format_real(stats.stderr_) << '\n';
    return kExitOk;
  }
};

struct EvalCmd {
  std::string config_path;
  std::vector<std::size_t> ells{8, 12, 16};
  std::size_t tau = 0;
  std::size_t delta = 0;
  std::string mode = "v1";

  void attach(CLI::App* app) {
    app->add_option("--config", config_path, "JSON synthetic configuration")->required();
    app->add_option("--ell", ells, "Anchor orders")->delimiter(',')->check(CLI::Range(std::size_t{1}, SIZE_MAX));
    app->add_option("--tau", tau, "Minimum hit-list length")->capture_default_str();
    app->add_option("--delta", delta, "Identity-score slack")->capture_default_str();
    app->add_option("--mode", mode, "v1 | v2")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    const QueryMode m = parse_mode(mode);
    const auto cfg = parse_synthetic_config(io::read_file(config_path));
    const auto data = oracles::gen_synthetic(cfg);
    std::ostringstream buf;
    buf << "ell,K,d,d_prime,num_queries,tau,delta,mean_f1\n";
    for (const std::size_t ell : ells) {
      const double f1 = evaluate_synthetic(data, ell, {cfg.k, tau, delta}, m);
      buf << ell << ',' << cfg.k << ',' << io::format_real(cfg.d, 2) << ','
          << io::format_real(cfg.d_prime, 2) << ',' << cfg.num_queries << ',' << tau << ','
          << delta << ',' << io::format_real(f1) << '\n';
    }
    out << buf.str();
    return kExitOk;
  }
};

}  // namespace

std::string sample_csv_header() { return "scheme,ell,w,k,r,n,sample_size,density\n"; }

std::string sample_csv_row(const Sample& s) {
  std::ostringstream row;
  row << scheme_name(s.params.kind) << ',' << s.params.ell << ',' << s.params.w << ','
      << s.params.k << ',' << s.params.r << ',' << s.n << ',' << s.size() << ','
      << io::format_real(density(s)) << '\n';
  return row.str();
}

std::string density_report(std::string_view text, const std::vector<std::size_t>& ells,
                           const DensityOptions& options) {
  std::string report = sample_csv_header();
  for (const std::size_t ell : ells) {
    for (const SchemeKind kind : options.schemes) {
      switch (kind) {
        case SchemeKind::BDA: report += sample_csv_row(bd_anchors(text, ell)); break;
        case SchemeKind::RBDA:
          report += sample_csv_row(reduced_bd_anchors(text, ell, reduction_for(text, ell, options.r)));
          break;
        case SchemeKind::MIN_STD:
        case SchemeKind::MIN_WIN: {
          std::vector<std::size_t> ks = options.ks;
          if (ks.empty())
            for (std::size_t k = 1; k <= ell; ++k) ks.push_back(k);
          for (const std::size_t k : ks) {
            if (k > ell) continue;
            const std::size_t w = ell - k + 1;
            report += sample_csv_row(kind == SchemeKind::MIN_STD
                                         ? minimizers_std(text, w, k, options.order)
                                         : minimizers_win(text, w, k, options.order));
          }
          break;
        }
      }
    }
  }
  return report;
}

double evaluate_synthetic(const oracles::SyntheticData& data, std::size_t ell,
                          const QueryParams& params, QueryMode mode) {
  const auto dix = DictionaryIndex::build(data.dictionary, ell, mode);
  double sum = 0.0;
  for (std::size_t qid = 0; qid < data.queries.size(); ++qid) {
    const auto result = top_k_query(dix, data.queries[qid], params);
    std::vector<std::size_t> ids;
    for (const auto& c : result.candidates) ids.push_back(c.string_id);
    sum += oracles::evaluate_f1(ids, data.truth[qid], params.k);
  }
  return data.queries.empty() ? 0.0 : sum / static_cast<double>(data.queries.size());
}

oracles::SyntheticConfig parse_synthetic_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid synthetic configuration: ") + e.what());
  }
  oracles::SyntheticConfig cfg;
  try {
    cfg.num_queries = j.value("num_queries", cfg.num_queries);
    cfg.qlen = j.value("qlen", cfg.qlen);
    cfg.k = j.value("k", cfg.k);
    cfg.d = j.value("d", cfg.d);
    cfg.d_prime = j.value("d_prime", cfg.d - 0.05);
    cfg.sigma = j.value("sigma", cfg.sigma);
    cfg.seed = j.value("seed", kDefaultSeed);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("invalid synthetic configuration: ") + e.what());
  }
  return cfg;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"bd-anchor sampling, indexing and similarity search toolkit", "bda"};
  app.require_subcommand(1);

  SampleCmd sample;
  DensityCmd density_cmd;
  IndexBuildCmd index_build, index_build_alias;
  IndexSearchCmd index_search, index_search_alias;
  TopKCmd topk;
  GenCmd gen;
  GenSyntheticCmd gen_synthetic;
  AvgCountCmd avg_count;
  EvalCmd eval;

  sample.attach(app.add_subcommand("sample", "Sample positions of a text"));
  density_cmd.attach(app.add_subcommand("density", "Density report over window lengths and schemes"));
  auto* index = app.add_subcommand("index", "Build or query a bd-anchor index");
  index->require_subcommand(1);
  index_build.attach(index->add_subcommand("build", "Build and serialize an index"));
  index_search.attach(index->add_subcommand("search", "Search patterns with a serialized index"));
  index_build_alias.attach(app.add_subcommand("index-build", "Same as 'index build'"));
  index_search_alias.attach(app.add_subcommand("index-search", "Same as 'index search'"));
  topk.attach(app.add_subcommand("topk", "Top-K similarity search under edit distance"));
  gen.attach(app.add_subcommand("gen", "Uniform random string"));
  gen_synthetic.attach(app.add_subcommand("gen-synthetic", "Synthetic similarity-search dataset"));
  avg_count.attach(app.add_subcommand("avg-count", "Average number of bd-anchors"));
  eval.attach(app.add_subcommand("eval", "F1 of top-K search on a synthetic dataset"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  auto chosen = [&](const char* name) { return app.got_subcommand(name); };
  try {
    if (chosen("sample")) return sample.execute(out);
    if (chosen("density")) return density_cmd.execute(out);
    if (chosen("index")) {
      if (index->got_subcommand("build")) return index_build.execute(out);
      return index_search.execute(out);
    }
    if (chosen("index-build")) return index_build_alias.execute(out);
    if (chosen("index-search")) return index_search_alias.execute(out);
    if (chosen("topk")) return topk.execute(out);
    if (chosen("gen")) return gen.execute(out);
    if (chosen("gen-synthetic")) return gen_synthetic.execute(out);
    if (chosen("avg-count")) return avg_count.execute(out);
    if (chosen("eval")) return eval.execute(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  err << "usage error: no subcommand\n";
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("bda");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bda::cli
