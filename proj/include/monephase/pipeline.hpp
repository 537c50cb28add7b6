#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "monephase/config.hpp"
#include "monephase/local_projection.hpp"
#include "monephase/phase.hpp"
#include "monephase/series.hpp"

namespace monephase {

struct CommandResult {
  int exit_code = 0;  // 0 ok, 2 partial outputs from a fit that did not converge
  std::vector<std::filesystem::path> written;
  std::vector<std::string> warnings;
  std::vector<std::string> messages;
};

struct Inputs {
  Panel monetary;
  Panel cpi;
  std::vector<std::string> warnings;
};

Inputs load_inputs(const RunConfig& config);

// Analysis series on the common range of both input files.
struct DerivedSeries {
  MonthlySeries phi;
  MonthlySeries pi;
  MonthlySeries pi_core;
  MonthlySeries g_mb;       // YoY growth of MB_SA
  MonthlySeries log_mb_sa;
  Panel table;              // panel.csv contents
};

DerivedSeries derive(const Panel& monetary, const Panel& cpi);
const std::vector<std::string>& derived_columns();

struct IrfSettings {
  PhaseThresholds thresholds;
  ShockDefinition shock;
  LpOptions lp;

  static IrfSettings from(const RunConfig& config);
};

struct PhaseIrfs {
  IRFTable pi_cash;
  IRFTable pi_reserve;
  IRFTable phi_cash;
  IRFTable phi_reserve;
  PhaseMeans means;
  std::size_t months_cash = 0;
  std::size_t months_reserve = 0;
};

// Within-phase shocks from g_MB, then local projections of pi_core and phi
// on the months whose shock date lies in each phase.
PhaseIrfs estimate_phase_irfs(const DerivedSeries& d, const IrfSettings& settings);

// Same estimator on the intermediate band. Tables carry unstable_region: true.
std::vector<IRFTable> estimate_critical_region(const DerivedSeries& d, const IrfSettings& settings);

struct RobustnessVariant {
  std::string name;
  IrfSettings settings;
};

// One-at-a-time departures from `base`: threshold grid, H, L and shock.
std::vector<RobustnessVariant> robustness_variants(const IrfSettings& base);

// Mean beta over horizons from..to that the table covers.
double band_mean(const IRFTable& table, int from, int to);

CommandResult cmd_transform(const RunConfig& config);
CommandResult cmd_breakpoints(const RunConfig& config);
CommandResult cmd_fit_phase(const RunConfig& config);
CommandResult cmd_irf(const RunConfig& config);
CommandResult cmd_calibrate(const RunConfig& config);
CommandResult cmd_landau(const RunConfig& config);
CommandResult cmd_efficiency(const RunConfig& config);
CommandResult cmd_synth(const RunConfig& config);
CommandResult cmd_report(const RunConfig& config);

const std::vector<std::string>& command_names();
CommandResult run_command(const std::string& name, const RunConfig& config);

}  // namespace monephase
