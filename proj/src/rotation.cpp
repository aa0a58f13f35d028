#include "bda/rotation.hpp"

#include "bda/common.hpp"

namespace bda {

namespace {

inline unsigned char at(std::string_view x, std::size_t i) noexcept {
  return static_cast<unsigned char>(x[i]);
}

// Compares the rotations of `x` starting at a and b; negative when a < b.
int compare_rotations(std::string_view x, std::size_t a, std::size_t b) noexcept {
  const std::size_t n = x.size();
  for (std::size_t t = 0; t < n; ++t) {
    const unsigned char ca = at(x, (a + t) % n);
    const unsigned char cb = at(x, (b + t) % n);
    if (ca != cb) return ca < cb ? -1 : 1;
  }
  return 0;
}

}  // namespace

std::size_t RotationSolver::least(std::string_view x) {
  const std::size_t n = x.size();
  if (n == 0) throw Error("empty input");
  if (n == 1) return 0;
  failure_.assign(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const unsigned char cj = at(x, j % n);
    int i = failure_[j - k - 1];
    while (i != -1 && cj != at(x, (k + i + 1) % n)) {
      if (cj < at(x, (k + i + 1) % n)) k = j - i - 1;
      i = failure_[i];
    }
    // i == -1 here unless the inner loop stopped on a match.
    if (i == -1 && cj != at(x, k % n)) {
      if (cj < at(x, k % n)) k = j;
      failure_[j - k] = -1;
    } else {
      failure_[j - k] = i + 1;
    }
  }
  return k;
}

std::size_t RotationSolver::least_restricted(std::string_view x, std::size_t allowed) {
  const std::size_t best = least(x);
  if (best < allowed) return best;
  // The global minimum lies outside the allowed starts; scan them directly.
  std::size_t pick = 0;
  for (std::size_t j = 1; j < allowed; ++j) {
    if (compare_rotations(x, j, pick) < 0) pick = j;
  }
  return pick;
}

std::size_t minimal_rotation(std::string_view x) {
  RotationSolver solver;
  return solver.least(x) + 1;
}

std::size_t reduced_minimal_rotation(std::string_view x, std::size_t allowed) {
  if (x.empty()) throw Error("empty input");
  if (allowed == 0 || allowed > x.size()) throw Error("reduction too large");
  RotationSolver solver;
  return solver.least_restricted(x, allowed) + 1;
}

}  // namespace bda
