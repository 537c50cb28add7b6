#include "monephase/compartment.hpp"

namespace monephase {

double absorption_share(double theta, const LogisticControl& ctrl) {
  const double z = ctrl.lambda * (theta - ctrl.theta_c);
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double steady_state_phi(double theta, const LogisticControl& ctrl, const CompartmentRates& rates,
                        double injection) {
  if (!(injection > 0.0)) throw DomainError("injection must be positive");
  if (!(rates.delta > 0.0) || !(rates.gamma > 0.0)) {
    throw DomainError("no steady state: delta and gamma must be positive");
  }
  if (rates.eta < 0.0) throw DomainError("eta must be non-negative");
  const double a = absorption_share(theta, ctrl);
  const double x = (1.0 - a) * injection / rates.gamma;
  const double r = (a * injection + rates.eta * x) / rates.delta;
  return r / (r + x);
}

}  // namespace monephase
