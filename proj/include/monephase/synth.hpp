#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monephase/calibration.hpp"
#include "monephase/month.hpp"
#include "monephase/phase.hpp"
#include "monephase/series.hpp"

namespace monephase {

struct TanhProfile {
  double phi0 = 0.4105;
  double A = 0.2835;
  double t0 = 519.0;  // months since the first generated month
  double w = 8.0;
};

struct SynthSpec {
  MonthIndex start{1970, 1};
  int months = 675;
  TanhProfile profile;
  double phi_noise_sd = 0.001;

  // YoY base growth g_t = c + sum_i a_i g_{t-i} + sd * e_t, e_t ~ N(0, 1).
  double ar_intercept = 0.6;
  std::vector<double> ar_coefficients{0.6, 0.2};
  double innovation_sd = 1.0;

  // Responses to a unit innovation e_t, indexed by horizon. When `model` is
  // set the four kernels are generated from it and these are ignored.
  std::vector<double> phi_kernel_cash;
  std::vector<double> phi_kernel_reserve;
  std::vector<double> pi_kernel_cash;
  std::vector<double> pi_kernel_reserve;
  std::optional<ModelPoint> model;
  int kernel_length = 72;

  double pi_level_cash = 3.0;
  double pi_level_reserve = 0.5;
  double pi_noise_sd = 0.1;
  double headline_noise_sd = 0.2;

  // Kernels switch on the phase of the noiseless profile at the shock date.
  PhaseThresholds thresholds;
  std::uint64_t seed = 1;

  // Two-compartment truth with phi_c = 0.231 and phase means 0.127 / 0.694.
  static ModelPoint reference_model();
  static SynthSpec japan_like();
  // Longer sample with the same mechanism, used by the mechanism checks.
  static SynthSpec mechanism_economy(std::uint64_t seed = 7);

  void validate() const;
};

struct SynthKernels {
  std::vector<double> phi_cash, phi_reserve, pi_cash, pi_reserve;
};

struct GroundTruth {
  SynthSpec spec;
  SynthKernels kernels;
  MonthlySeries phi_profile;   // noiseless tanh profile
  MonthlySeries innovations;   // e_t
  MonthlySeries growth;        // g_t as generated
  PhaseMeans profile_phase_means;

  // key,value rows
  std::string to_csv() const;
};

struct SynthOutput {
  Panel monetary;  // MB, BN, CO, RB, MB_SA
  Panel cpi;       // CPI, CPI_core
  GroundTruth truth;
};

SynthKernels synth_kernels(const SynthSpec& spec);

SynthOutput generate(const SynthSpec& spec);

// monetary.csv, cpi.csv and ground_truth.csv in canonical formats.
void write_synth(const std::filesystem::path& dir, const SynthOutput& out);

}  // namespace monephase
