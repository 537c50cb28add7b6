#include "monephase/efficiency.hpp"

#include <cmath>

#include "monephase/error.hpp"

namespace monephase {

namespace {

std::pair<double, int> peak(const IRFTable& t, int H, bool significant_only) {
  if (!t.covers(H)) {
    throw Error("efficiency: IRF table (" + t.meta.phase + ", " + t.meta.response +
                ") does not cover horizons 0.." + std::to_string(H));
  }
  double best = 0.0;
  int arg = 0;
  for (int h = 0; h <= H; ++h) {
    const auto& r = t.rows[static_cast<std::size_t>(h)];
    if (significant_only && r.ci_low <= 0.0 && r.ci_high >= 0.0) continue;
    const double v = std::abs(r.beta);
    if (v > best) {
      best = v;
      arg = h;
    }
  }
  return {best, arg};
}

}  // namespace

EfficiencyReport efficiencies(const IRFTable& irf_phi, const IRFTable& irf_pi, int H,
                              const EfficiencyOptions& options) {
  if (H < 0) throw DomainError("efficiency: H must be non-negative");
  EfficiencyReport out;
  std::tie(out.eff_r, out.argmax_r) = peak(irf_phi, H, options.significant_only);
  std::tie(out.eff_c, out.argmax_c) = peak(irf_pi, H, options.significant_only);
  out.horizon = H;
  out.phase = irf_phi.meta.phase;
  out.shock = irf_phi.meta.shock;
  out.significant_only = options.significant_only;
  return out;
}

}  // namespace monephase
