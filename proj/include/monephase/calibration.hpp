#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "monephase/compartment.hpp"
#include "monephase/local_projection.hpp"
#include "monephase/phase.hpp"

namespace monephase {

struct PhaseFit {
  std::string phase;
  CompartmentParams params;
  double kappa = 0.0;
  double phi_bar = 0.0;
};

// Full model point before normalization: per-phase (A, B, delta, gamma, eta,
// kappa) and shared (s_pi, phi_c).
struct ModelPoint {
  PhaseFit cash;
  PhaseFit reserve;
  CouplingParams coupling;
};

struct CalibrationTargets {
  IRFTable phi_cash;
  IRFTable pi_cash;
  IRFTable phi_reserve;
  IRFTable pi_reserve;
  PhaseMeans phi_bar;
};

struct TargetResidual {
  std::string phase;
  std::string target;  // "phi" or "pi"
  int h = 0;
  double empirical = 0.0;
  double se = 0.0;
  double model = 0.0;
  double weighted = 0.0;  // (model - empirical) / se
};

struct CalibrationResult {
  PhaseFit cash;
  PhaseFit reserve;
  CouplingParams coupling;
  double objective = 0.0;
  std::vector<TargetResidual> residuals;
  bool converged = false;
  bool degenerate = false;  // fitted responses vanish identically
  int best_start = 0;
  std::string diagnostic;

  bool ordering_ok() const {
    return cash.phi_bar < coupling.phi_c && coupling.phi_c < reserve.phi_bar;
  }
};

struct CalibrationOptions {
  int starts = 50;
  std::uint64_t seed = 20260101;
  int max_evaluations = 6000;  // per Nelder-Mead start
  int polish_iterations = 200;
  double rate_max = 5.0;       // per month
  double phi_c_min = 0.01;
  double phi_c_max = 0.99;
  double eta = 0.0;            // reabsorption rate, held fixed
};

// Sum over phases, targets and horizons of ((model - beta_h) / se_h)^2.
// Throws when a target row has se = 0 or the tables disagree on horizons.
double calibration_objective(const CalibrationTargets& targets, const ModelPoint& point);
std::vector<TargetResidual> calibration_residuals(const CalibrationTargets& targets,
                                                  const ModelPoint& point);

// Fits the two-compartment responses of both phases with a shared coupling
// (s_pi, phi_c). Impulse shares satisfy A + B = 1 in each phase, which pins
// the (A, B, kappa, s_pi) scale, and the reabsorption rate eta is fixed at
// options.eta; per phase B, delta, gamma and kappa are fitted. Seeded
// multi-start projected Nelder-Mead followed by a projected
// Levenberg-Marquardt polish.
CalibrationResult calibrate(const CalibrationTargets& targets, const CalibrationOptions& options = {});

// two_compartment_parameters.csv, critical_point_summary.csv,
// fit_cash_phase.csv and fit_reserve_phase.csv.
void write_calibration(const std::filesystem::path& dir, const CalibrationResult& result);

}  // namespace monephase
