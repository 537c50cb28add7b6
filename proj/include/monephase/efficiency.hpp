#pragma once

#include <string>

#include "monephase/local_projection.hpp"

namespace monephase {

struct EfficiencyReport {
  double eff_r = 0.0;  // max_h |beta_h| of the order-parameter response
  double eff_c = 0.0;  // max_h |beta_h| of the core-inflation response
  int argmax_r = 0;
  int argmax_c = 0;
  int horizon = 0;
  std::string phase;
  std::string shock;
  bool significant_only = false;
};

struct EfficiencyOptions {
  // Extension: skip horizons whose confidence band contains zero. Off by
  // default; the plain metric uses point estimates at every horizon.
  bool significant_only = false;
};

// Largest absolute response over h = 0..H; ties go to the smallest h.
EfficiencyReport efficiencies(const IRFTable& irf_phi, const IRFTable& irf_pi, int H,
                              const EfficiencyOptions& options = {});

}  // namespace monephase
