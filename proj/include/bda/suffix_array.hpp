#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace bda {

/// Suffix array of `text` (0-based suffix starts). The end of the text compares
/// smaller than every byte, so a proper prefix sorts before its extensions.
std::vector<std::uint32_t> build_suffix_array(std::string_view text);

/// Kasai et al. LCP array: lcp[i] = LCP(sa[i-1], sa[i]), lcp[0] = 0.
std::vector<std::uint32_t> build_lcp_array(std::string_view text,
                                           const std::vector<std::uint32_t>& sa);

/// Inverse permutation of a suffix array.
std::vector<std::uint32_t> inverse_suffix_array(const std::vector<std::uint32_t>& sa);

}  // namespace bda
