#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "monephase/error.hpp"

namespace monephase {

// Impulse split A (reservoir R) / B (circulation X), reservoir relaxation
// delta, circulation decay gamma and reabsorption eta from X into R, all per
// month:  dR/dt = -delta R + eta X,  dX/dt = -gamma X.
template <typename Scalar>
struct BasicCompartmentParams {
  Scalar A{0};
  Scalar B{0};
  Scalar delta{0};
  Scalar gamma{0};
  Scalar eta{0};

  void validate() const {
    if (!(A >= Scalar(0) && B >= Scalar(0))) throw DomainError("impulse shares A, B must be >= 0");
    if (!(delta >= Scalar(0) && gamma >= Scalar(0) && eta >= Scalar(0))) {
      throw DomainError("rates delta, gamma, eta must be >= 0");
    }
    if (!(A + B > Scalar(0))) throw DomainError("A + B must be positive");
  }
};

using CompartmentParams = BasicCompartmentParams<double>;

struct CouplingParams {
  double s_pi = 1.0;
  double phi_c = 0.5;
};

// Relative gap below which delta and gamma are treated as equal and the
// analytic limit of R(h) is used.
inline constexpr double kRateMergeTolerance = 1e-9;

template <typename Scalar>
Scalar x_response(Scalar h, const BasicCompartmentParams<Scalar>& p) {
  using std::exp;
  if (h < Scalar(0)) throw DomainError("horizon must be non-negative");
  return p.B * exp(-p.gamma * h);
}

// R(h) = A e^{-delta h} + eta B (e^{-gamma h} - e^{-delta h}) / (delta - gamma).
// The difference quotient is evaluated through expm1 to keep precision when
// delta and gamma are close.
template <typename Scalar>
Scalar r_response(Scalar h, const BasicCompartmentParams<Scalar>& p) {
  using std::abs;
  using std::exp;
  using std::expm1;
  if (h < Scalar(0)) throw DomainError("horizon must be non-negative");
  const Scalar d = p.delta - p.gamma;
  const Scalar scale = std::max({p.delta, p.gamma, Scalar(1)});
  const Scalar direct = p.A * exp(-p.delta * h);
  if (abs(d) < Scalar(kRateMergeTolerance) * scale) {
    return direct + p.eta * p.B * h * exp(-p.delta * h);
  }
  return direct + p.eta * p.B * exp(-p.gamma * h) * (-expm1(-d * h)) / d;
}

// Linearized order-parameter response kappa [(1 - phi_bar) R(h) - phi_bar X(h)].
template <typename Scalar>
Scalar phi_irf(Scalar h, const BasicCompartmentParams<Scalar>& p, Scalar phi_bar, Scalar kappa) {
  if (!(phi_bar > Scalar(0) && phi_bar < Scalar(1))) throw DomainError("phi_bar must lie in (0, 1)");
  if (kappa < Scalar(0)) throw DomainError("kappa must be non-negative");
  return kappa * ((Scalar(1) - phi_bar) * r_response(h, p) - phi_bar * x_response(h, p));
}

// Effective CPI coupling 1 - phi_bar / phi_c; positive below the critical point.
inline double chi(double phi_bar, double phi_c) {
  if (!(phi_c > 0.0)) throw DomainError("phi_c must be positive");
  return 1.0 - phi_bar / phi_c;
}

inline double cpi_irf(double h, const CompartmentParams& p, const CouplingParams& c,
                      double phi_bar) {
  return c.s_pi * chi(phi_bar, c.phi_c) * x_response(h, p);
}

struct LogisticControl {
  double lambda = 1.0;
  double theta_c = 0.0;
};

struct CompartmentRates {
  double delta = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
};

// Reservoir absorption share a(theta) = 1 / (1 + exp(-lambda (theta - theta_c))).
double absorption_share(double theta, const LogisticControl& ctrl);

// Steady state under a constant inflow I split a(theta) into R and 1 - a(theta)
// into X: X* = (1 - a) I / gamma, R* = (a I + eta X*) / delta, phi* = R* / (R* + X*).
double steady_state_phi(double theta, const LogisticControl& ctrl, const CompartmentRates& rates,
                        double injection);

}  // namespace monephase
