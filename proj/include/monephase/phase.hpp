#pragma once

#include <string>
#include <vector>

#include "monephase/month.hpp"
#include "monephase/series.hpp"

namespace monephase {

enum class PhaseLabel { Cash, Intermediate, Reserve, Missing };

std::string to_string(PhaseLabel label);
PhaseLabel parse_phase(const std::string& text);

struct PhaseThresholds {
  double cash_max = 0.30;
  double reserve_min = 0.60;

  PhaseThresholds() = default;
  PhaseThresholds(double cash, double reserve);  // validates 0 < cash < reserve < 1

  // Alternative splits used for threshold robustness.
  static std::vector<PhaseThresholds> robustness_grid();  // {0.25,0.30,0.35} x {0.55,0.60,0.65}
  bool operator==(const PhaseThresholds&) const = default;
};

class PhasePartition {
public:
  PhasePartition(MonthIndex start, std::vector<PhaseLabel> labels, PhaseThresholds thresholds);

  MonthIndex start() const { return start_; }
  std::size_t size() const { return labels_.size(); }
  const std::vector<PhaseLabel>& labels() const { return labels_; }
  const PhaseThresholds& thresholds() const { return thresholds_; }

  // Missing outside the covered range.
  PhaseLabel label_at(MonthIndex m) const;
  // Maximal runs of `label`, in time order.
  std::vector<MonthRange> segments(PhaseLabel label) const;
  std::size_t count(PhaseLabel label) const;

private:
  MonthIndex start_;
  std::vector<PhaseLabel> labels_;
  PhaseThresholds thresholds_;
};

// cash iff phi < cash_max, reserve iff phi > reserve_min, intermediate
// otherwise (boundaries included). Missing phi gives PhaseLabel::Missing.
PhasePartition classify(const MonthlySeries& phi, const PhaseThresholds& thresholds);

struct PhaseMeans {
  double cash = 0.0;
  double reserve = 0.0;
};

PhaseMeans phase_means(const MonthlySeries& phi, const PhasePartition& partition);

// phi(t) = phi0 + A tanh((t - t0) / w)
struct TanhFit {
  double phi0 = 0.0;
  double A = 0.0;
  double t0 = 0.0;  // month ordinal (see MonthIndex::ordinal) plus fraction
  double w = 1.0;   // months
  double sse = 0.0;
  bool converged = false;
  int iterations = 0;
  int start_index = 0;
  MonthRange window;
  bool degenerate_width = false;  // no identifiable transition (A ~ 0 or w out of range)
  bool bounds_ok = true;          // phi0 +/- A inside [0, 1]
  std::string diagnostic;

  double evaluate(double ordinal) const;
  MonthIndex t0_month() const;
};

struct TanhOptions {
  int max_iterations = 500;
  double rel_sse_tol = 1e-12;
  double step_tol = 1e-10;
  int t0_grid = 9;
  std::vector<double> widths{6.0, 12.0, 24.0};
};

// Multi-start Gauss-Newton on (phi0, A, t0, log w) with backtracking and an
// analytic Jacobian, in months since the window start. Returns the lowest-SSE
// converged start (ties to the lowest start index); when no start converges
// the best partial fit is returned with converged = false.
TanhFit fit_tanh(const MonthlySeries& phi, MonthRange window, const TanhOptions& options = {});

}  // namespace monephase
