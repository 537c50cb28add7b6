#pragma once

// Independent reference implementations used only by the tests.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "monephase/compartment.hpp"

namespace oracle {

// Classical RK4 on dR/dt = -delta R + eta X, dX/dt = -gamma X from (A, B).
// Returns (R, X) at t = 0, dt, 2 dt, ... up to `steps`.
inline std::vector<std::pair<double, double>> rk4_compartment(const monephase::CompartmentParams& p,
                                                              double dt, int steps) {
  auto f = [&](double r, double x) {
    return std::pair{-p.delta * r + p.eta * x, -p.gamma * x};
  };
  std::vector<std::pair<double, double>> out{{p.A, p.B}};
  double r = p.A;
  double x = p.B;
  for (int i = 0; i < steps; ++i) {
    auto [k1r, k1x] = f(r, x);
    auto [k2r, k2x] = f(r + 0.5 * dt * k1r, x + 0.5 * dt * k1x);
    auto [k3r, k3x] = f(r + 0.5 * dt * k2r, x + 0.5 * dt * k2x);
    auto [k4r, k4x] = f(r + dt * k3r, x + dt * k3x);
    r += dt / 6.0 * (k1r + 2 * k2r + 2 * k3r + k4r);
    x += dt / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
    out.emplace_back(r, x);
  }
  return out;
}

inline Eigen::VectorXd ols_normal_equations(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
  Eigen::MatrixXd xtx = X.transpose() * X;
  return xtx.inverse() * (X.transpose() * y);
}

// S = sum_{j=-L..L} w_j Gamma_j with Gamma_j = sum_t e_t e_{t-j} x_t x_{t-j}',
// built term by term, then (X'X)^{-1} S (X'X)^{-1}.
inline Eigen::MatrixXd naive_hac(const Eigen::MatrixXd& X, const Eigen::VectorXd& e, int L) {
  const long n = X.rows();
  const long k = X.cols();
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, k);
  for (long j = -L; j <= L; ++j) {
    const double w = 1.0 - static_cast<double>(std::abs(j)) / (L + 1);
    for (long t = 0; t < n; ++t) {
      const long s = t - j;
      if (s < 0 || s >= n) continue;
      for (long a = 0; a < k; ++a) {
        for (long b = 0; b < k; ++b) S(a, b) += w * e(t) * e(s) * X(t, a) * X(s, b);
      }
    }
  }
  Eigen::MatrixXd bread = (X.transpose() * X).inverse();
  return bread * S * bread;
}

inline Eigen::MatrixXd white_sandwich(const Eigen::MatrixXd& X, const Eigen::VectorXd& e) {
  Eigen::MatrixXd meat = X.transpose() * e.array().square().matrix().asDiagonal() * X;
  Eigen::MatrixXd bread = (X.transpose() * X).inverse();
  return bread * meat * bread;
}

// RSS of a line fitted by the normal equations to y[from..to].
inline double line_rss(const std::vector<double>& y, int from, int to) {
  const int n = to - from + 1;
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    X(i, 0) = 1.0;
    X(i, 1) = from + i;
    v(i) = y[from + i];
  }
  Eigen::VectorXd b = X.colPivHouseholderQr().solve(v);
  return (v - X * b).squaredNorm();
}

struct Rescan {
  int tau = -1;  // index of the last element of the first segment
  double rss = std::numeric_limits<double>::infinity();
};

// Full re-scan with strict improvement, so the earliest minimizer wins.
inline Rescan breakpoint_rescan(const std::vector<double>& y, int min_seg) {
  Rescan best;
  const int n = static_cast<int>(y.size());
  for (int tau = min_seg - 1; tau <= n - min_seg - 1; ++tau) {
    const double rss = line_rss(y, 0, tau) + line_rss(y, tau + 1, n - 1);
    if (rss < best.rss) best = {tau, rss};
  }
  return best;
}

// Roots of a m + b m^3 - h by sign changes on a dense grid plus bisection.
inline std::vector<double> grid_roots(double a, double b, double h, double lo, double hi, int cells) {
  auto f = [&](double m) { return a * m + b * m * m * m - h; };
  std::vector<double> roots;
  const double step = (hi - lo) / cells;
  for (int i = 0; i < cells; ++i) {
    double l = lo + i * step;
    double r = l + step;
    double fl = f(l);
    double fr = f(r);
    if (fl == 0.0) {
      roots.push_back(l);
      continue;
    }
    if (fl * fr > 0.0) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (l + r);
      if (f(mid) * fl <= 0.0) {
        r = mid;
      } else {
        l = mid;
        fl = f(l);
      }
    }
    roots.push_back(0.5 * (l + r));
  }
  return roots;
}

}  // namespace oracle
