#pragma once

#include <cstdint>
#include <vector>

namespace monephase {

// F(m) = a m^2 / 2 + b m^4 / 4 - h m with m = phi - phi_c, relaxed by
// tau dm/dt = -dF/dm + noise.
struct LandauParams {
  double a = 0.0;
  double b = 1.0;
  double h_field = 0.0;
  double tau = 1.0;
  double phi_c = 0.0;

  void validate() const;
};

double free_energy(double m, const LandauParams& p);
double free_energy_slope(double m, const LandauParams& p);  // a m + b m^3 - h

enum class StationaryKind { Minimum, Maximum, Inflection };

struct StationaryPoint {
  double m = 0.0;
  StationaryKind kind = StationaryKind::Minimum;
  int multiplicity = 1;
  double F = 0.0;
};

struct StationarySet {
  std::vector<StationaryPoint> points;  // ascending in m
  std::size_t global_minimum = 0;       // index into points
  bool degenerate = false;              // two minima with equal F; the positive one is reported

  const StationaryPoint& global() const { return points[global_minimum]; }
};

// Real roots of a m + b m^3 = h (trigonometric or Cardano form, one Newton
// polish each), classified by F'' = a + 3 b m^2.
StationarySet stationary_points(const LandauParams& p);

// Euler-Maruyama on tau dm = (-a m - b m^3 + h) dt + noise_sd dW. Returns
// steps + 1 values starting with m0. Requires
// dt < tau / (|a| + 3 b m_max^2 + 1) with m_max the largest of |m0| and the
// stationary root magnitudes.
std::vector<double> lk_trajectory(double m0, const LandauParams& p, double noise_sd, double dt,
                                  int steps, std::uint64_t seed);

// Peak-normalized susceptibility eps / (|phi - phi_c| + eps); equals 1 at phi_c.
double susceptibility(double phi, double phi_c, double epsilon);

}  // namespace monephase
