#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "monephase/month.hpp"

namespace monephase {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

// Contiguous month-indexed series. Missing months are stored as NaN; every
// present value is finite.
class MonthlySeries {
public:
  MonthlySeries(MonthIndex start, std::vector<double> values);

  MonthIndex start() const { return start_; }
  MonthIndex last() const { return start_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }

  bool contains(MonthIndex m) const { return m >= start_ && m <= last(); }
  std::size_t offset(MonthIndex m) const;  // throws AlignmentError outside range
  MonthIndex month_at(std::size_t i) const { return start_ + static_cast<std::int64_t>(i); }

  double operator[](std::size_t i) const { return values_[i]; }
  bool has(std::size_t i) const { return !is_missing(values_[i]); }
  // Missing when m is outside the range or the value is absent.
  std::optional<double> at(MonthIndex m) const;
  double value_or_missing(MonthIndex m) const;

  const std::vector<double>& values() const { return values_; }
  Eigen::Map<const Eigen::VectorXd> as_vector() const {
    return {values_.data(), static_cast<Eigen::Index>(values_.size())};
  }

  std::size_t count_present() const;
  // Inclusive sub-range; both ends must lie inside the series.
  MonthlySeries slice(MonthIndex from, MonthIndex to) const;

  bool operator==(const MonthlySeries& other) const;  // NaN == NaN

private:
  MonthIndex start_;
  std::vector<double> values_;
};

// Named series sharing one month range.
class Panel {
public:
  Panel() = default;
  void add(std::string name, MonthlySeries series);

  bool empty() const { return series_.empty(); }
  bool has(const std::string& name) const { return series_.count(name) != 0; }
  const MonthlySeries& get(const std::string& name) const;
  const std::map<std::string, MonthlySeries>& series() const { return series_; }
  std::vector<std::string> names() const;

  MonthIndex start() const;
  MonthIndex last() const;
  std::size_t length() const;

  bool operator==(const Panel& other) const = default;

private:
  std::map<std::string, MonthlySeries> series_;
};

// 100 * (x_t / x_{t-12} - 1). First twelve months are missing.
MonthlySeries yoy(const MonthlySeries& series);

// RB_t / MB_t on the common range of the two inputs.
MonthlySeries order_parameter(const MonthlySeries& rb, const MonthlySeries& mb);

// 100 * x_t / x_{t0} where t0 is the first present month.
MonthlySeries index_to_base(const MonthlySeries& series);

// Natural log; non-positive values become missing.
MonthlySeries log_series(const MonthlySeries& series);

// Restricts every series to the intersection of their month ranges.
Panel merge(const std::vector<std::pair<std::string, MonthlySeries>>& series);

// Concatenates two panels with identical ranges and disjoint names.
Panel join(const Panel& a, const Panel& b);

}  // namespace monephase
