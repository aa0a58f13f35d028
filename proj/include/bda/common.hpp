#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bda {

/// 1-based text position. Every public API speaks 1-based positions.
using Position = std::size_t;

/// Domain error raised when an operation's precondition is violated.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Byte reserved as the record separator of concatenated dictionaries.
inline constexpr char kSeparator = '\0';

/// Closed 1-based interval [first, last] over a sorted list; empty when first > last.
struct Interval {
  std::size_t first = 1;
  std::size_t last = 0;

  [[nodiscard]] bool empty() const noexcept { return first > last; }
  [[nodiscard]] std::size_t size() const noexcept { return empty() ? 0 : last - first + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Throws when `text` is empty or contains the reserved separator byte.
void validate_text(std::string_view text);

/// Number of distinct byte values occurring in `text`.
std::size_t alphabet_size(std::string_view text) noexcept;

}  // namespace bda
