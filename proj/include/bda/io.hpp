#pragma once

#include <string>
#include <vector>

namespace bda::io {

/// Reads a text file as raw bytes, dropping one trailing newline. In FASTA
/// mode header lines starting with '>' and all line breaks are removed.
std::string read_text(const std::string& path, bool fasta = false);

/// Non-empty lines of a file, without line terminators.
std::vector<std::string> read_lines(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Fixed-point rendering used by every CSV report.
std::string format_real(double value, int decimals = 6);

}  // namespace bda::io
