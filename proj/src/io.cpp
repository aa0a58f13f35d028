#include "bda/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "bda/common.hpp"

namespace bda::io {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !out.write(content.data(), static_cast<std::streamsize>(content.size())))
    throw Error("cannot write " + path);
}

std::string read_text(const std::string& path, bool fasta) {
  std::string raw = read_file(path);
  if (!fasta) {
    if (!raw.empty() && raw.back() == '\n') raw.pop_back();
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    return raw;
  }
  std::string text;
  text.reserve(raw.size());
  std::istringstream lines(raw);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '>') continue;
    text += line;
  }
  return text;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream lines(read_file(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

std::string format_real(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace bda::io
