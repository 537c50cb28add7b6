#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace monephase {

// Calendar month. Ordering and differences are exact integer arithmetic on
// the ordinal year*12 + (month - 1).
class MonthIndex {
public:
  constexpr MonthIndex() = default;
  MonthIndex(int year, int month);

  static constexpr MonthIndex from_ordinal(std::int64_t ordinal) {
    MonthIndex m;
    m.ordinal_ = ordinal;
    return m;
  }

  // Accepts YYYY-MM; a trailing -DD day component is dropped.
  static MonthIndex parse(std::string_view text);

  int year() const;
  int month() const;
  constexpr std::int64_t ordinal() const { return ordinal_; }

  constexpr MonthIndex operator+(std::int64_t n) const { return from_ordinal(ordinal_ + n); }
  constexpr MonthIndex operator-(std::int64_t n) const { return from_ordinal(ordinal_ - n); }
  constexpr std::int64_t operator-(MonthIndex other) const { return ordinal_ - other.ordinal_; }
  MonthIndex next() const { return *this + 1; }
  MonthIndex prev() const { return *this - 1; }

  constexpr auto operator<=>(const MonthIndex&) const = default;

  std::string str() const;  // YYYY-MM

private:
  std::int64_t ordinal_ = 0;
};

// Fractional month coordinate (ordinal plus offset) rendered as
// "YYYY-MM+0.25" style text.
std::string format_fractional_month(double ordinal);

}  // namespace monephase

namespace monephase {

// Inclusive month range.
struct MonthRange {
  MonthIndex first;
  MonthIndex last;

  bool contains(MonthIndex m) const { return m >= first && m <= last; }
  std::int64_t length() const { return last - first + 1; }
  bool operator==(const MonthRange&) const = default;
};

}  // namespace monephase
