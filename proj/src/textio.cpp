#include "monephase/textio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "monephase/error.hpp"
#include "monephase/series.hpp"

namespace monephase {

std::string format_real(double v) {
  if (is_missing(v)) return {};
  if (v == 0.0) return "0";  // drop the sign of negative zero
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("failed to format number");
  return std::string(buf, ptr);
}

double parse_real(std::string_view cell) {
  if (cell.empty()) return kMissing;
  const char* first = cell.data();
  const char* end = cell.data() + cell.size();
  if (*first == '+') ++first;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(first, end, v, std::chars_format::general);
  if (ec != std::errc() || ptr != end || first == end) {
    throw ParseError("not a number: '" + std::string(cell) + "'");
  }
  if (!std::isfinite(v)) throw ParseError("non-finite number: '" + std::string(cell) + "'");
  return v;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace monephase
