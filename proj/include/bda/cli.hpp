#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bda/index.hpp"
#include "bda/oracles.hpp"
#include "bda/sampling.hpp"
#include "bda/similarity.hpp"

namespace bda::cli {

/// Seed used whenever --seed is not given.
inline constexpr std::uint64_t kDefaultSeed = 20210917;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

/// Flag combination rejected before any work starts.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Header and row of the `scheme,ell,w,k,r,n,sample_size,density` schema.
std::string sample_csv_header();
std::string sample_csv_row(const Sample& s);

struct DensityOptions {
  std::vector<SchemeKind> schemes{SchemeKind::BDA, SchemeKind::RBDA, SchemeKind::MIN_STD,
                                  SchemeKind::MIN_WIN};
  KmerOrder order{};
  std::optional<std::size_t> r;  // rBDA reduction; default_r(EXPERIMENT) on the text's alphabet
  std::vector<std::size_t> ks;   // minimizer k values; empty enumerates every k in [1, ell]
};

/// One CSV row per (scheme, ell, w, k), header included.
std::string density_report(std::string_view text, const std::vector<std::size_t>& ells,
                           const DensityOptions& options);

/// Mean F1 of top-K answers over a synthetic dataset.
double evaluate_synthetic(const oracles::SyntheticData& data, std::size_t ell,
                          const QueryParams& params, QueryMode mode = QueryMode::V1_RANGE);

oracles::SyntheticConfig parse_synthetic_config(const std::string& json_text);

/// Entry point of the `bda` tool. Exit 0 on success, 1 on domain errors, 2 on usage errors.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bda::cli
