#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace monephase {

// Shortest decimal text that parses back to the same double; "" for missing.
std::string format_real(double v);

// Locale-independent decimal parse. Empty cells return NaN; anything that is
// not a plain decimal number (including thousands separators) throws ParseError.
double parse_real(std::string_view cell);

std::vector<std::string_view> split_csv(std::string_view line);

// Reads a text file as lines, stripping a trailing '\r' from each.
std::vector<std::string> read_lines(const std::filesystem::path& path);

// Writes text atomically enough for batch use: truncate, write, check.
void write_text(const std::filesystem::path& path, const std::string& text);

std::string trim(std::string_view s);

}  // namespace monephase
