#include "monephase/month.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "monephase/error.hpp"

namespace monephase {

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("invalid date '" + std::string(whole) + "' (expected YYYY-MM)");
  }
  return v;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

MonthIndex::MonthIndex(int year, int month) {
  if (month < 1 || month > 12) {
    throw DomainError("month out of range: " + std::to_string(month));
  }
  ordinal_ = static_cast<std::int64_t>(year) * 12 + (month - 1);
}

MonthIndex MonthIndex::parse(std::string_view text) {
  if (text.size() != 7 && text.size() != 10) {
    throw ParseError("invalid date '" + std::string(text) + "' (expected YYYY-MM)");
  }
  if (text[4] != '-' || (text.size() == 10 && text[7] != '-')) {
    throw ParseError("invalid date '" + std::string(text) + "' (expected YYYY-MM)");
  }
  int year = parse_int(text.substr(0, 4), text);
  int month = parse_int(text.substr(5, 2), text);
  if (text.size() == 10) {
    int day = parse_int(text.substr(8, 2), text);
    if (day < 1 || day > 31) throw ParseError("invalid day in date '" + std::string(text) + "'");
  }
  if (month < 1 || month > 12) {
    throw ParseError("invalid month in date '" + std::string(text) + "'");
  }
  return MonthIndex(year, month);
}

int MonthIndex::year() const { return static_cast<int>(floor_div(ordinal_, 12)); }

int MonthIndex::month() const { return static_cast<int>(ordinal_ - floor_div(ordinal_, 12) * 12) + 1; }

std::string MonthIndex::str() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year(), month());
  return buf;
}

std::string format_fractional_month(double ordinal) {
  double whole = std::floor(ordinal);
  auto m = MonthIndex::from_ordinal(static_cast<std::int64_t>(whole));
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s+%.4f", m.str().c_str(), ordinal - whole);
  return buf;
}

}  // namespace monephase
