#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "monephase/month.hpp"
#include "monephase/phase.hpp"
#include "monephase/shocks.hpp"

namespace monephase {

struct BreakWindow {
  std::string cluster;
  MonthRange range;
  bool operator==(const BreakWindow&) const = default;
};

// Every default is the baseline specification, so a bare run reproduces it.
struct RunConfig {
  std::filesystem::path monetary_path = "data/monetary.csv";
  std::filesystem::path cpi_path = "data/cpi.csv";
  std::filesystem::path out_dir = "out";

  PhaseThresholds thresholds;
  MonthRange tanh_window{MonthIndex(2010, 1), MonthIndex(2018, 12)};
  std::vector<BreakWindow> break_windows = default_break_windows();
  int break_min_seg = 24;

  ShockDefinition shock = ShockDefinition::ar(12);
  int horizon = 24;
  int lags = 12;
  int hac_lag = 12;
  bool robustness = false;
  int medium_from = 6;  // horizon band used for sign summaries
  int medium_to = 12;

  std::uint64_t seed = 20260101;
  int calibration_starts = 50;
  double calibration_eta = 0.0;

  std::optional<double> landau_phi_c;  // otherwise read from calibration output
  double landau_b = 1.0;
  double landau_h = 0.0;
  double landau_tau = 1.0;
  double landau_alpha = 10.0;  // a = alpha (phi_c - phi) for the phase potentials
  double landau_epsilon = 0.02;
  double landau_noise_sd = 0.05;
  double logistic_lambda = 1.0;
  double logistic_theta_c = 0.0;
  double ss_delta = 0.05;
  double ss_gamma = 0.10;
  double ss_eta = 0.02;

  bool efficiency_significant_only = false;

  std::string synth_preset = "japan_like";  // or "mechanism"
  std::optional<std::uint64_t> synth_seed;
  std::optional<int> synth_months;

  static std::vector<BreakWindow> default_break_windows();

  // Applies one `key = value` setting; unknown keys and bad values throw.
  void set(const std::string& key, const std::string& value);
  static std::vector<std::string> keys();
  void validate() const;
};

// Reads `key = value` lines ('#' starts a comment). Relative data and output
// paths resolve against the directory of the config file. Overrides are
// `key=value` strings applied afterwards, relative to the working directory.
RunConfig load_config(const std::optional<std::filesystem::path>& path,
                      const std::vector<std::string>& overrides = {});

std::string format_break_windows(const std::vector<BreakWindow>& windows);
std::vector<BreakWindow> parse_break_windows(const std::string& text);

}  // namespace monephase
