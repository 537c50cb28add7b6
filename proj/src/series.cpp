#include "monephase/series.hpp"

#include <algorithm>

#include "monephase/error.hpp"

namespace monephase {

MonthlySeries::MonthlySeries(MonthIndex start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw LengthError("series must contain at least one month");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::isinf(values_[i])) {
      throw DomainError("non-finite value at " + month_at(i).str());
    }
  }
}

std::size_t MonthlySeries::offset(MonthIndex m) const {
  if (!contains(m)) {
    throw AlignmentError("month " + m.str() + " outside series range " + start_.str() + ".." +
                         last().str());
  }
  return static_cast<std::size_t>(m - start_);
}

std::optional<double> MonthlySeries::at(MonthIndex m) const {
  if (!contains(m)) return std::nullopt;
  double v = values_[static_cast<std::size_t>(m - start_)];
  if (is_missing(v)) return std::nullopt;
  return v;
}

double MonthlySeries::value_or_missing(MonthIndex m) const {
  if (!contains(m)) return kMissing;
  return values_[static_cast<std::size_t>(m - start_)];
}

std::size_t MonthlySeries::count_present() const {
  return static_cast<std::size_t>(
      std::count_if(values_.begin(), values_.end(), [](double v) { return !is_missing(v); }));
}

MonthlySeries MonthlySeries::slice(MonthIndex from, MonthIndex to) const {
  if (to < from) throw DomainError("empty slice " + from.str() + ".." + to.str());
  auto a = offset(from);
  auto b = offset(to);
  return MonthlySeries(from, std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(a),
                                                 values_.begin() + static_cast<std::ptrdiff_t>(b) + 1));
}

bool MonthlySeries::operator==(const MonthlySeries& other) const {
  if (start_ != other.start_ || values_.size() != other.values_.size()) return false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    double a = values_[i];
    double b = other.values_[i];
    if (is_missing(a) != is_missing(b)) return false;
    if (!is_missing(a) && a != b) return false;
  }
  return true;
}

void Panel::add(std::string name, MonthlySeries series) {
  if (series_.count(name) != 0) throw Error("duplicate series name '" + name + "'");
  if (!series_.empty()) {
    const auto& first = series_.begin()->second;
    if (first.start() != series.start() || first.size() != series.size()) {
      throw AlignmentError("series '" + name + "' does not share the panel month range");
    }
  }
  series_.emplace(std::move(name), std::move(series));
}

const MonthlySeries& Panel::get(const std::string& name) const {
  auto it = series_.find(name);
  if (it == series_.end()) throw Error("panel has no series '" + name + "'");
  return it->second;
}

std::vector<std::string> Panel::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : series_) out.push_back(name);
  return out;
}

MonthIndex Panel::start() const {
  if (series_.empty()) throw Error("empty panel");
  return series_.begin()->second.start();
}

MonthIndex Panel::last() const {
  if (series_.empty()) throw Error("empty panel");
  return series_.begin()->second.last();
}

std::size_t Panel::length() const { return series_.empty() ? 0 : series_.begin()->second.size(); }

MonthlySeries yoy(const MonthlySeries& series) {
  if (series.size() < 13) {
    throw LengthError("year-over-year growth needs at least 13 months, got " +
                      std::to_string(series.size()));
  }
  std::vector<double> out(series.size(), kMissing);
  for (std::size_t t = 12; t < series.size(); ++t) {
    double now = series[t];
    double base = series[t - 12];
    if (is_missing(now) || is_missing(base) || base == 0.0) continue;
    out[t] = 100.0 * (now / base - 1.0);
  }
  return MonthlySeries(series.start(), std::move(out));
}

MonthlySeries order_parameter(const MonthlySeries& rb, const MonthlySeries& mb) {
  if (rb.start() != mb.start() || rb.size() != mb.size()) {
    throw AlignmentError("RB and MB ranges differ");
  }
  std::vector<double> out(rb.size(), kMissing);
  for (std::size_t t = 0; t < rb.size(); ++t) {
    if (!rb.has(t)) continue;
    const auto month = rb.month_at(t).str();
    if (!mb.has(t)) continue;
    if (mb[t] <= 0.0) throw DomainError("monetary base must be positive at " + month);
    if (rb[t] < 0.0) throw DomainError("negative reserve balances at " + month);
    if (rb[t] > mb[t]) {
      throw DomainError("reserve balances exceed monetary base at " + month);
    }
    out[t] = rb[t] / mb[t];
  }
  return MonthlySeries(rb.start(), std::move(out));
}

MonthlySeries index_to_base(const MonthlySeries& series) {
  std::size_t t0 = 0;
  while (t0 < series.size() && !series.has(t0)) ++t0;
  if (t0 == series.size()) throw Error("cannot index an all-missing series");
  const double base = series[t0];
  if (base == 0.0) throw DomainError("base value is zero at " + series.month_at(t0).str());
  std::vector<double> out(series.size(), kMissing);
  for (std::size_t t = t0; t < series.size(); ++t) {
    if (series.has(t)) out[t] = t == t0 ? 100.0 : 100.0 * series[t] / base;
  }
  return MonthlySeries(series.start(), std::move(out));
}

MonthlySeries log_series(const MonthlySeries& series) {
  std::vector<double> out(series.size(), kMissing);
  for (std::size_t t = 0; t < series.size(); ++t) {
    if (series.has(t) && series[t] > 0.0) out[t] = std::log(series[t]);
  }
  return MonthlySeries(series.start(), std::move(out));
}

Panel merge(const std::vector<std::pair<std::string, MonthlySeries>>& series) {
  if (series.empty()) throw Error("merge needs at least one series");
  MonthIndex from = series.front().second.start();
  MonthIndex to = series.front().second.last();
  for (const auto& [_, s] : series) {
    from = std::max(from, s.start());
    to = std::min(to, s.last());
  }
  if (to < from) throw AlignmentError("series month ranges do not overlap");
  Panel panel;
  for (const auto& [name, s] : series) panel.add(name, s.slice(from, to));
  return panel;
}

Panel join(const Panel& a, const Panel& b) {
  Panel out = a;
  for (const auto& [name, s] : b.series()) out.add(name, s);
  return out;
}

}  // namespace monephase
