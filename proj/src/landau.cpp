#include "monephase/landau.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "monephase/error.hpp"
#include "monephase/random.hpp"

namespace monephase {

void LandauParams::validate() const {
  if (!(b > 0.0)) throw DomainError("Landau quartic coefficient b must be positive");
  if (!(tau > 0.0)) throw DomainError("Landau relaxation time tau must be positive");
  if (!std::isfinite(a) || !std::isfinite(h_field)) throw DomainError("Landau coefficients must be finite");
}

double free_energy(double m, const LandauParams& p) {
  const double m2 = m * m;
  return 0.5 * p.a * m2 + 0.25 * p.b * m2 * m2 - p.h_field * m;
}

double free_energy_slope(double m, const LandauParams& p) {
  return p.a * m + p.b * m * m * m - p.h_field;
}

namespace {

double newton_polish(double m, const LandauParams& p) {
  const double d = p.a + 3.0 * p.b * m * m;
  if (d == 0.0) return m;
  return m - free_energy_slope(m, p) / d;
}

}  // namespace

StationarySet stationary_points(const LandauParams& prm) {
  prm.validate();
  // Depressed cubic m^3 + P m + Q = 0.
  const double P = prm.a / prm.b;
  const double Q = -prm.h_field / prm.b;
  const double disc = 0.25 * Q * Q + P * P * P / 27.0;

  std::vector<std::pair<double, int>> roots;  // value, multiplicity
  if (P == 0.0 && Q == 0.0) {
    roots.emplace_back(0.0, 3);
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    const double A = -std::copysign(std::cbrt(0.5 * std::abs(Q) + s), Q);
    roots.emplace_back(A == 0.0 ? 0.0 : A - P / (3.0 * A), 1);
  } else if (disc == 0.0) {
    roots.emplace_back(3.0 * Q / P, 1);
    roots.emplace_back(-1.5 * Q / P, 2);
  } else {
    const double r = 2.0 * std::sqrt(-P / 3.0);
    const double arg = std::clamp(1.5 * Q / P * std::sqrt(-3.0 / P), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.emplace_back(r * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0), 1);
    }
  }
  for (auto& [m, mult] : roots) {
    if (mult == 1) m = newton_polish(m, prm);
  }
  std::sort(roots.begin(), roots.end());

  // Near-coincident simple roots collapse into a double root.
  const double scale = 1.0 + std::sqrt(std::abs(P));
  std::vector<std::pair<double, int>> merged;
  for (const auto& r : roots) {
    if (!merged.empty() && std::abs(r.first - merged.back().first) <= 1e-9 * scale) {
      merged.back().first = 0.5 * (merged.back().first + r.first);
      merged.back().second += r.second;
    } else {
      merged.push_back(r);
    }
  }

  StationarySet out;
  for (const auto& [m, mult] : merged) {
    StationaryPoint pt;
    pt.m = m;
    pt.multiplicity = mult;
    pt.F = free_energy(m, prm);
    const double curvature = prm.a + 3.0 * prm.b * m * m;
    if (mult == 2) pt.kind = StationaryKind::Inflection;
    else if (mult == 3 || curvature > 0.0) pt.kind = StationaryKind::Minimum;
    else if (curvature < 0.0) pt.kind = StationaryKind::Maximum;
    else pt.kind = StationaryKind::Inflection;
    out.points.push_back(pt);
  }

  int best = -1;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const auto& pt = out.points[i];
    if (pt.kind != StationaryKind::Minimum) continue;
    if (best < 0) {
      best = static_cast<int>(i);
      continue;
    }
    const auto& cur = out.points[static_cast<std::size_t>(best)];
    const double tol = 1e-12 * (1.0 + std::abs(cur.F));
    if (std::abs(pt.F - cur.F) <= tol) {
      out.degenerate = true;
      if (pt.m > cur.m) best = static_cast<int>(i);
    } else if (pt.F < cur.F) {
      best = static_cast<int>(i);
      out.degenerate = false;
    }
  }
  if (best < 0) {
    // Only possible when every root is an inflection; take the lowest F.
    best = 0;
    for (std::size_t i = 1; i < out.points.size(); ++i) {
      if (out.points[i].F < out.points[static_cast<std::size_t>(best)].F) best = static_cast<int>(i);
    }
  }
  out.global_minimum = static_cast<std::size_t>(best);
  return out;
}

std::vector<double> lk_trajectory(double m0, const LandauParams& p, double noise_sd, double dt,
                                  int steps, std::uint64_t seed) {
  p.validate();
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  if (steps < 1) throw DomainError("need at least one step");
  if (noise_sd < 0.0) throw DomainError("noise_sd must be non-negative");
  double m_max = std::abs(m0);
  for (const auto& pt : stationary_points(p).points) m_max = std::max(m_max, std::abs(pt.m));
  const double limit = p.tau / (std::abs(p.a) + 3.0 * p.b * m_max * m_max + 1.0);
  if (!(dt < limit)) {
    throw DomainError("step size dt=" + std::to_string(dt) + " violates the stability limit " +
                      std::to_string(limit));
  }

  Rng rng(seed);
  const double noise_scale = noise_sd * std::sqrt(dt) / p.tau;
  std::vector<double> m(static_cast<std::size_t>(steps) + 1);
  m[0] = m0;
  for (int k = 0; k < steps; ++k) {
    const double cur = m[static_cast<std::size_t>(k)];
    double next = cur - dt / p.tau * free_energy_slope(cur, p);
    if (noise_sd > 0.0) next += noise_scale * rng.normal();
    m[static_cast<std::size_t>(k) + 1] = next;
  }
  return m;
}

double susceptibility(double phi, double phi_c, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("susceptibility epsilon must be positive");
  return epsilon / (std::abs(phi - phi_c) + epsilon);
}

}  // namespace monephase
