#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace bda {

/// Leftmost lexicographically minimal rotation of `x` (Booth's algorithm), 1-based.
/// Throws bda::Error("empty input") when `x` is empty.
std::size_t minimal_rotation(std::string_view x);

/// Leftmost minimal rotation among the starts [1, allowed] of `x`, 1-based.
/// With allowed == |x| this is minimal_rotation.
std::size_t reduced_minimal_rotation(std::string_view x, std::size_t allowed);

/// Reusable scratch space for repeated rotation queries over windows of one length.
/// Returned positions are 0-based offsets into the window.
class RotationSolver {
 public:
  std::size_t least(std::string_view x);
  std::size_t least_restricted(std::string_view x, std::size_t allowed);

 private:
  std::vector<int> failure_;
};

}  // namespace bda
