#include "monephase/breakpoint.hpp"

#include <cmath>

#include "monephase/error.hpp"

namespace monephase {

namespace {

// Least-squares line through (x_i, y_i), i in [lo, hi), with x_i = i.
LineFit fit_line(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
  const double n = static_cast<double>(hi - lo);
  double xbar = 0.0;
  double ybar = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    xbar += static_cast<double>(i);
    ybar += y[i];
  }
  xbar /= n;
  ybar /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const double dx = static_cast<double>(i) - xbar;
    sxx += dx * dx;
    sxy += dx * (y[i] - ybar);
  }
  LineFit f;
  f.beta = sxy / sxx;
  f.alpha = ybar - f.beta * xbar;
  for (std::size_t i = lo; i < hi; ++i) {
    const double r = y[i] - f.alpha - f.beta * static_cast<double>(i);
    f.rss += r * r;
  }
  return f;
}

std::vector<double> window_values(const MonthlySeries& y, MonthRange window, int min_seg) {
  if (min_seg < 2) throw DomainError("breakpoint: minimum segment length must be at least 2");
  if (window.length() < 2 * static_cast<std::int64_t>(min_seg) + 1) {
    throw DomainError("breakpoint: window " + window.first.str() + ".." + window.last.str() +
                      " shorter than " + std::to_string(2 * min_seg + 1) + " months");
  }
  if (!y.contains(window.first) || !y.contains(window.last)) {
    throw DomainError("breakpoint: window " + window.first.str() + ".." + window.last.str() +
                      " outside data range " + y.start().str() + ".." + y.last().str());
  }
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(window.length()));
  for (MonthIndex m = window.first; m <= window.last; m = m.next()) {
    auto x = y.at(m);
    if (!x) throw DomainError("breakpoint: missing value at " + m.str());
    v.push_back(*x);
  }
  return v;
}

}  // namespace

std::vector<double> breakpoint_profile(const MonthlySeries& y, MonthRange window, int min_seg) {
  const auto v = window_values(y, window, min_seg);
  const std::size_t n = v.size();
  const auto m = static_cast<std::size_t>(min_seg);
  std::vector<double> rss;
  for (std::size_t split = m; split + m <= n; ++split) {
    rss.push_back(fit_line(v, 0, split).rss + fit_line(v, split, n).rss);
  }
  return rss;
}

BreakResult breakpoint(const MonthlySeries& y, MonthRange window, int min_seg) {
  const auto v = window_values(y, window, min_seg);
  const std::size_t n = v.size();
  const auto m = static_cast<std::size_t>(min_seg);

  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(n);
  double tss = 0.0;
  for (double x : v) tss += (x - mean) * (x - mean);
  const double tol = 1e-10 * tss + 1e-300;

  const auto profile = breakpoint_profile(y, window, min_seg);
  double best = profile.front();
  for (double r : profile) best = std::min(best, r);

  std::size_t chosen = 0;
  while (profile[chosen] > best + tol) ++chosen;
  std::size_t near = 0;
  for (double r : profile) {
    if (r <= best + tol) ++near;
  }

  const std::size_t split = m + chosen;
  BreakResult out;
  out.window = window;
  out.tau = window.first + static_cast<std::int64_t>(split) - 1;
  out.first = fit_line(v, 0, split);
  out.second = fit_line(v, split, n);
  out.rss = profile[chosen];
  out.tie = near > 1;
  return out;
}

}  // namespace monephase
