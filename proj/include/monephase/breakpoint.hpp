#pragma once

#include <string>
#include <vector>

#include "monephase/month.hpp"
#include "monephase/series.hpp"

namespace monephase {

struct LineFit {
  double alpha = 0.0;  // intercept at the window's first month
  double beta = 0.0;   // slope per month
  double rss = 0.0;
};

struct BreakResult {
  MonthIndex tau;  // last month of the first segment
  double rss = 0.0;
  LineFit first;
  LineFit second;
  MonthRange window;
  bool tie = false;  // another admissible tau reaches the same RSS
};

// Total two-segment RSS for every admissible tau, earliest first. Element i
// corresponds to tau = window.first + min_seg - 1 + i.
std::vector<double> breakpoint_profile(const MonthlySeries& y, MonthRange window, int min_seg = 24);

// Single-break search: y_t = a1 + b1 t for t <= tau, a2 + b2 t after, both
// segments at least `min_seg` months. Equal RSS (relative tolerance 1e-10 of
// the window's total sum of squares) resolves to the earliest tau and sets
// `tie`.
BreakResult breakpoint(const MonthlySeries& y, MonthRange window, int min_seg = 24);

}  // namespace monephase
