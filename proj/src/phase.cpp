#include "monephase/phase.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "monephase/error.hpp"

namespace monephase {

std::string to_string(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::Cash: return "cash";
    case PhaseLabel::Intermediate: return "intermediate";
    case PhaseLabel::Reserve: return "reserve";
    case PhaseLabel::Missing: return "missing";
  }
  return "missing";
}

PhaseLabel parse_phase(const std::string& text) {
  if (text == "cash") return PhaseLabel::Cash;
  if (text == "intermediate") return PhaseLabel::Intermediate;
  if (text == "reserve") return PhaseLabel::Reserve;
  if (text == "missing") return PhaseLabel::Missing;
  throw ParseError("unknown phase '" + text + "'");
}

PhaseThresholds::PhaseThresholds(double cash, double reserve) : cash_max(cash), reserve_min(reserve) {
  if (!(0.0 < cash && cash < reserve && reserve < 1.0)) {
    throw DomainError("phase thresholds must satisfy 0 < cash_max < reserve_min < 1");
  }
}

std::vector<PhaseThresholds> PhaseThresholds::robustness_grid() {
  std::vector<PhaseThresholds> out;
  for (double c : {0.25, 0.30, 0.35}) {
    for (double r : {0.55, 0.60, 0.65}) out.emplace_back(c, r);
  }
  return out;
}

PhasePartition::PhasePartition(MonthIndex start, std::vector<PhaseLabel> labels,
                               PhaseThresholds thresholds)
    : start_(start), labels_(std::move(labels)), thresholds_(thresholds) {}

PhaseLabel PhasePartition::label_at(MonthIndex m) const {
  if (m < start_) return PhaseLabel::Missing;
  const auto i = static_cast<std::size_t>(m - start_);
  return i < labels_.size() ? labels_[i] : PhaseLabel::Missing;
}

std::vector<MonthRange> PhasePartition::segments(PhaseLabel label) const {
  std::vector<MonthRange> out;
  std::size_t i = 0;
  while (i < labels_.size()) {
    if (labels_[i] != label) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < labels_.size() && labels_[j + 1] == label) ++j;
    out.push_back({start_ + static_cast<std::int64_t>(i), start_ + static_cast<std::int64_t>(j)});
    i = j + 1;
  }
  return out;
}

std::size_t PhasePartition::count(PhaseLabel label) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), label));
}

PhasePartition classify(const MonthlySeries& phi, const PhaseThresholds& th) {
  std::vector<PhaseLabel> labels(phi.size(), PhaseLabel::Missing);
  for (std::size_t t = 0; t < phi.size(); ++t) {
    if (!phi.has(t)) continue;
    const double v = phi[t];
    if (v < 0.0 || v > 1.0) {
      throw DomainError("order parameter outside [0, 1] at " + phi.month_at(t).str());
    }
    if (v < th.cash_max) labels[t] = PhaseLabel::Cash;
    else if (v > th.reserve_min) labels[t] = PhaseLabel::Reserve;
    else labels[t] = PhaseLabel::Intermediate;
  }
  return PhasePartition(phi.start(), std::move(labels), th);
}

PhaseMeans phase_means(const MonthlySeries& phi, const PhasePartition& partition) {
  auto mean_of = [&](PhaseLabel label) {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t t = 0; t < phi.size(); ++t) {
      if (phi.has(t) && partition.label_at(phi.month_at(t)) == label) {
        sum += phi[t];
        ++n;
      }
    }
    if (n == 0) throw Error("phase '" + to_string(label) + "' has no months");
    return sum / static_cast<double>(n);
  };
  return {mean_of(PhaseLabel::Cash), mean_of(PhaseLabel::Reserve)};
}

double TanhFit::evaluate(double ordinal) const { return phi0 + A * std::tanh((ordinal - t0) / w); }

MonthIndex TanhFit::t0_month() const {
  return MonthIndex::from_ordinal(static_cast<std::int64_t>(std::floor(t0)));
}

namespace {

struct Start {
  Eigen::Vector4d theta;  // phi0, A, t0 (relative months), log w
};

struct Outcome {
  Eigen::Vector4d theta;
  double sse = 0.0;
  bool converged = false;
  int iterations = 0;
};

constexpr double kMaxLogWidth = 13.8;  // w <= ~1e6 months
constexpr double kMinLogWidth = -9.2;  // w >= ~1e-4 months

double sse_at(const Eigen::VectorXd& t, const Eigen::VectorXd& y, const Eigen::Vector4d& th) {
  const double w = std::exp(th(3));
  return ((th(0) + th(1) * ((t.array() - th(2)) / w).tanh()) - y.array()).square().sum();
}

Outcome gauss_newton(const Eigen::VectorXd& t, const Eigen::VectorXd& y, Eigen::Vector4d theta,
                     const TanhOptions& opt) {
  const Eigen::Index n = t.size();
  Outcome out;
  double sse = sse_at(t, y, theta);
  Eigen::MatrixXd J(n, 4);
  Eigen::VectorXd r(n);
  for (int it = 1; it <= opt.max_iterations; ++it) {
    out.iterations = it;
    const double w = std::exp(theta(3));
    for (Eigen::Index i = 0; i < n; ++i) {
      const double z = (t(i) - theta(2)) / w;
      const double th = std::tanh(z);
      const double sech2 = 1.0 - th * th;
      r(i) = theta(0) + theta(1) * th - y(i);
      J(i, 0) = 1.0;
      J(i, 1) = th;
      J(i, 2) = -theta(1) * sech2 / w;
      J(i, 3) = -theta(1) * sech2 * z;
    }
    if (sse == 0.0) {
      out.converged = true;
      break;
    }
    Eigen::Vector4d step = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>(J).solve(-r);
    double alpha = 1.0;
    Eigen::Vector4d trial;
    double trial_sse = sse;
    bool improved = false;
    for (int k = 0; k < 40; ++k) {
      trial = theta + alpha * step;
      trial(3) = std::clamp(trial(3), kMinLogWidth, kMaxLogWidth);
      trial_sse = sse_at(t, y, trial);
      if (std::isfinite(trial_sse) && trial_sse <= sse) {
        improved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!improved) {
      // No descent along the Gauss-Newton direction: stationary to working precision.
      out.converged = (alpha * step).norm() < 1e-6 * (1.0 + theta.norm());
      break;
    }
    const double change = sse - trial_sse;
    const double moved = (trial - theta).norm();
    theta = trial;
    sse = trial_sse;
    if (change <= opt.rel_sse_tol * std::max(sse + change, 1e-300) || moved < opt.step_tol) {
      out.converged = true;
      break;
    }
  }
  out.theta = theta;
  out.sse = sse;
  return out;
}

}  // namespace

TanhFit fit_tanh(const MonthlySeries& phi, MonthRange window, const TanhOptions& opt) {
  std::vector<double> ts;
  std::vector<double> ys;
  for (MonthIndex m = window.first; m <= window.last; m = m.next()) {
    if (auto v = phi.at(m)) {
      ts.push_back(static_cast<double>(m - window.first));
      ys.push_back(*v);
    }
  }
  if (ts.size() < 24) {
    throw LengthError("tanh fit needs at least 24 months of data in " + window.first.str() + ".." +
                      window.last.str() + ", found " + std::to_string(ts.size()));
  }
  const auto n = static_cast<Eigen::Index>(ts.size());
  Eigen::VectorXd t = Eigen::Map<Eigen::VectorXd>(ts.data(), n);
  Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(ys.data(), n);

  const double mean = y.mean();
  const double half_range = 0.5 * (y.maxCoeff() - y.minCoeff());
  const Eigen::Index third = std::max<Eigen::Index>(1, n / 3);
  const double direction = y.tail(third).mean() >= y.head(third).mean() ? 1.0 : -1.0;
  const double span = static_cast<double>(window.length() - 1);

  std::vector<Start> starts;
  for (int g = 0; g < opt.t0_grid; ++g) {
    const double frac = 0.1 + 0.8 * (opt.t0_grid == 1 ? 0.5 : static_cast<double>(g) / (opt.t0_grid - 1));
    for (double w : opt.widths) {
      starts.push_back({Eigen::Vector4d(mean, direction * half_range, frac * span, std::log(w))});
    }
  }

  int best = -1;
  Outcome best_out;
  int best_partial = -1;
  Outcome partial_out;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    auto o = gauss_newton(t, y, starts[s].theta, opt);
    if (o.converged && (best < 0 || o.sse < best_out.sse)) {
      best = static_cast<int>(s);
      best_out = o;
    }
    if (best_partial < 0 || o.sse < partial_out.sse) {
      best_partial = static_cast<int>(s);
      partial_out = o;
    }
  }

  const Outcome& chosen = best >= 0 ? best_out : partial_out;
  TanhFit fit;
  fit.phi0 = chosen.theta(0);
  fit.A = chosen.theta(1);
  fit.t0 = static_cast<double>(window.first.ordinal()) + chosen.theta(2);
  fit.w = std::exp(chosen.theta(3));
  fit.sse = chosen.sse;
  fit.converged = best >= 0;
  fit.iterations = chosen.iterations;
  fit.start_index = best >= 0 ? best : best_partial;
  fit.window = window;
  // Transition amplitude below 1e-8 of the signal scale is treated as absent.
  fit.degenerate_width = std::abs(fit.A) <= 1e-8 * std::max(1.0, std::abs(fit.phi0)) ||
                         fit.w > 10.0 * static_cast<double>(window.length()) || fit.w < 1e-2;
  fit.bounds_ok = fit.phi0 - std::abs(fit.A) >= 0.0 && fit.phi0 + std::abs(fit.A) <= 1.0;
  if (!fit.converged) {
    fit.diagnostic = "no start converged within " + std::to_string(opt.max_iterations) +
                     " iterations; best partial SSE " + std::to_string(fit.sse);
  } else if (fit.degenerate_width) {
    fit.diagnostic = "no identifiable transition in window";
  }
  return fit;
}

}  // namespace monephase
