#include "monephase/synth.hpp"

#include <cmath>
#include <sstream>

#include "monephase/error.hpp"
#include "monephase/ingest.hpp"
#include "monephase/random.hpp"
#include "monephase/textio.hpp"

namespace monephase {

ModelPoint SynthSpec::reference_model() {
  // Slow reservoir, fast circulation: phi responds positively at every
  // horizon in both phases.
  ModelPoint m;
  m.cash = {"cash", {0.2, 0.8, 0.02, 0.1, 0.0}, 0.05, 0.127};
  m.reserve = {"reserve", {0.7, 0.3, 0.02, 0.1, 0.0}, 0.03, 0.694};
  m.coupling = {0.5, 0.231};
  return m;
}

SynthSpec SynthSpec::japan_like() {
  SynthSpec s;
  s.model = reference_model();
  return s;
}

SynthSpec SynthSpec::mechanism_economy(std::uint64_t seed) {
  SynthSpec s;
  s.model = reference_model();
  s.months = 2400;
  s.profile.t0 = 1200.0;
  s.seed = seed;
  return s;
}

void SynthSpec::validate() const {
  if (months < 120) throw DomainError("synthetic spec needs at least 120 months");
  const double lo = profile.phi0 - std::abs(profile.A);
  const double hi = profile.phi0 + std::abs(profile.A);
  if (!(lo > 0.0 && hi < 1.0)) throw DomainError("tanh profile must stay inside (0, 1)");
  if (!(profile.w > 0.0)) throw DomainError("tanh width must be positive");
  if (!(innovation_sd > 0.0)) throw DomainError("innovation sd must be positive");
  if (phi_noise_sd < 0.0 || pi_noise_sd < 0.0 || headline_noise_sd < 0.0) {
    throw DomainError("noise standard deviations must be non-negative");
  }
  if (kernel_length < 1) throw DomainError("kernel length must be positive");
  for (const auto* k : {&phi_kernel_cash, &phi_kernel_reserve, &pi_kernel_cash, &pi_kernel_reserve}) {
    for (double v : *k) {
      if (!std::isfinite(v)) throw DomainError("planted kernels must be finite");
    }
  }
  if (model) {
    for (const auto* f : {&model->cash, &model->reserve}) f->params.validate();
  }
}

SynthKernels synth_kernels(const SynthSpec& spec) {
  if (!spec.model) {
    return {spec.phi_kernel_cash, spec.phi_kernel_reserve, spec.pi_kernel_cash, spec.pi_kernel_reserve};
  }
  const auto& m = *spec.model;
  SynthKernels k;
  for (int h = 0; h < spec.kernel_length; ++h) {
    const double hd = h;
    k.phi_cash.push_back(phi_irf(hd, m.cash.params, m.cash.phi_bar, m.cash.kappa));
    k.phi_reserve.push_back(phi_irf(hd, m.reserve.params, m.reserve.phi_bar, m.reserve.kappa));
    k.pi_cash.push_back(cpi_irf(hd, m.cash.params, m.coupling, m.cash.phi_bar));
    k.pi_reserve.push_back(cpi_irf(hd, m.reserve.params, m.coupling, m.reserve.phi_bar));
  }
  return k;
}

namespace {

double kernel_at(const std::vector<double>& k, std::size_t h) { return h < k.size() ? k[h] : 0.0; }

// Weight on the reserve kernel: 0 in the cash phase, 1 in the reserve phase,
// linear across the intermediate band.
double reserve_weight(double phi, const PhaseThresholds& th) {
  if (phi < th.cash_max) return 0.0;
  if (phi > th.reserve_min) return 1.0;
  return (phi - th.cash_max) / (th.reserve_min - th.cash_max);
}

}  // namespace

SynthOutput generate(const SynthSpec& spec) {
  spec.validate();
  const auto n = static_cast<std::size_t>(spec.months);
  const auto kernels = synth_kernels(spec);
  Rng rng(spec.seed);

  std::vector<double> profile(n);
  for (std::size_t t = 0; t < n; ++t) {
    profile[t] = spec.profile.phi0 +
                 spec.profile.A * std::tanh((static_cast<double>(t) - spec.profile.t0) / spec.profile.w);
  }

  // Base growth with burn-in from the unconditional mean.
  const std::size_t p = spec.ar_coefficients.size();
  double coef_sum = 0.0;
  for (double a : spec.ar_coefficients) coef_sum += a;
  const double g_mean = std::abs(1.0 - coef_sum) > 1e-9 ? spec.ar_intercept / (1.0 - coef_sum) : 0.0;
  const std::size_t burn = 240;
  std::vector<double> g_all(burn + n, g_mean);
  std::vector<double> e(n);
  for (std::size_t t = 0; t < burn + n; ++t) {
    const double shock = rng.normal();
    if (t >= burn) e[t - burn] = shock;
    double v = spec.ar_intercept + spec.innovation_sd * shock;
    for (std::size_t i = 1; i <= p; ++i) {
      v += spec.ar_coefficients[i - 1] * (t >= i ? g_all[t - i] : g_mean);
    }
    g_all[t] = v;
  }
  std::vector<double> g(g_all.begin() + static_cast<std::ptrdiff_t>(burn), g_all.end());

  std::vector<double> phi(n);
  std::vector<double> pi_core(n);
  std::vector<double> pi_head(n);
  std::vector<double> weights(n);
  for (std::size_t t = 0; t < n; ++t) weights[t] = reserve_weight(profile[t], spec.thresholds);
  const double lo = spec.profile.phi0 - std::abs(spec.profile.A);
  const double hi = spec.profile.phi0 + std::abs(spec.profile.A);
  const std::size_t K = std::max({kernels.phi_cash.size(), kernels.phi_reserve.size(),
                                  kernels.pi_cash.size(), kernels.pi_reserve.size()});
  for (std::size_t t = 0; t < n; ++t) {
    double dphi = 0.0;
    double dpi = 0.0;
    for (std::size_t k = 0; k < K && k <= t; ++k) {
      const std::size_t s = t - k;
      const double wr = weights[s];
      dphi += e[s] * ((1.0 - wr) * kernel_at(kernels.phi_cash, k) + wr * kernel_at(kernels.phi_reserve, k));
      dpi += e[s] * ((1.0 - wr) * kernel_at(kernels.pi_cash, k) + wr * kernel_at(kernels.pi_reserve, k));
    }
    phi[t] = profile[t] + dphi + spec.phi_noise_sd * rng.normal();
    const double level_w = hi > lo ? (profile[t] - lo) / (hi - lo) : 0.0;
    pi_core[t] = spec.pi_level_cash + (spec.pi_level_reserve - spec.pi_level_cash) * level_w + dpi +
                 spec.pi_noise_sd * rng.normal();
    pi_head[t] = pi_core[t] + spec.headline_noise_sd * rng.normal();
    if (!(phi[t] > 0.0 && phi[t] < 1.0)) {
      throw DomainError("synthetic order parameter left (0, 1) at month " + std::to_string(t) +
                        "; reduce kernel or noise scale");
    }
  }

  // Levels: x_t = x_{t-12} (1 + r_t / 100) so that yoy() recovers r_t.
  auto integrate = [&](const std::vector<double>& rate, double base) {
    std::vector<double> level(n);
    for (std::size_t t = 0; t < n; ++t) {
      if (t < 12) {
        level[t] = base * std::pow(1.0 + rate[0] / 100.0, static_cast<double>(t) / 12.0);
      } else {
        if (!(rate[t] > -100.0)) throw DomainError("synthetic growth rate below -100%");
        level[t] = level[t - 12] * (1.0 + rate[t] / 100.0);
      }
    }
    return level;
  };
  // Price indices start at 100 and are then rescaled to a 2020 average of
  // 100 when the sample covers 2020.
  auto rebase = [&](std::vector<double> level) {
    double sum = 0.0;
    int count = 0;
    for (std::size_t t = 0; t < n; ++t) {
      if ((spec.start + static_cast<std::int64_t>(t)).year() == 2020) {
        sum += level[t];
        ++count;
      }
    }
    if (count > 0) {
      const double scale = 100.0 * count / sum;
      for (double& v : level) v *= scale;
    }
    return level;
  };
  const auto mb_sa = integrate(g, 1.0e5);
  const auto cpi_core = rebase(integrate(pi_core, 100.0));
  const auto cpi = rebase(integrate(pi_head, 100.0));

  std::vector<double> rb(n), bn(n), co(n);
  for (std::size_t t = 0; t < n; ++t) {
    rb[t] = phi[t] * mb_sa[t];
    const double cash = mb_sa[t] - rb[t];
    bn[t] = 0.95 * cash;
    co[t] = cash - bn[t];
  }

  SynthOutput out{Panel{}, Panel{},
                  GroundTruth{spec, kernels, MonthlySeries(spec.start, profile),
                              MonthlySeries(spec.start, e), MonthlySeries(spec.start, g), {}}};
  out.monetary.add("MB", MonthlySeries(spec.start, mb_sa));
  out.monetary.add("BN", MonthlySeries(spec.start, bn));
  out.monetary.add("CO", MonthlySeries(spec.start, co));
  out.monetary.add("RB", MonthlySeries(spec.start, rb));
  out.monetary.add("MB_SA", MonthlySeries(spec.start, mb_sa));
  out.cpi.add("CPI", MonthlySeries(spec.start, cpi));
  out.cpi.add("CPI_core", MonthlySeries(spec.start, cpi_core));

  const auto true_partition = classify(out.truth.phi_profile, spec.thresholds);
  // A profile that never enters one phase leaves that mean missing.
  const bool both = true_partition.count(PhaseLabel::Cash) > 0 && true_partition.count(PhaseLabel::Reserve) > 0;
  out.truth.profile_phase_means = both ? phase_means(out.truth.phi_profile, true_partition)
                                       : PhaseMeans{kMissing, kMissing};
  return out;
}

std::string GroundTruth::to_csv() const {
  std::ostringstream o;
  o << "key,value\n";
  auto kv = [&](const std::string& k, const std::string& v) { o << k << ',' << v << '\n'; };
  kv("seed", std::to_string(spec.seed));
  kv("start", spec.start.str());
  kv("months", std::to_string(spec.months));
  kv("profile.phi0", format_real(spec.profile.phi0));
  kv("profile.A", format_real(spec.profile.A));
  kv("profile.t0_offset", format_real(spec.profile.t0));
  kv("profile.t0_calendar",
     format_fractional_month(static_cast<double>(spec.start.ordinal()) + spec.profile.t0));
  kv("profile.w", format_real(spec.profile.w));
  kv("phi_noise_sd", format_real(spec.phi_noise_sd));
  kv("ar.intercept", format_real(spec.ar_intercept));
  for (std::size_t i = 0; i < spec.ar_coefficients.size(); ++i) {
    kv("ar.a" + std::to_string(i + 1), format_real(spec.ar_coefficients[i]));
  }
  kv("ar.innovation_sd", format_real(spec.innovation_sd));
  kv("thresholds.cash_max", format_real(spec.thresholds.cash_max));
  kv("thresholds.reserve_min", format_real(spec.thresholds.reserve_min));
  kv("profile_phase_mean.cash", format_real(profile_phase_means.cash));
  kv("profile_phase_mean.reserve", format_real(profile_phase_means.reserve));
  if (spec.model) {
    const auto& m = *spec.model;
    for (const auto* f : {&m.cash, &m.reserve}) {
      const std::string p = "model." + f->phase + ".";
      kv(p + "A", format_real(f->params.A));
      kv(p + "B", format_real(f->params.B));
      kv(p + "delta", format_real(f->params.delta));
      kv(p + "gamma", format_real(f->params.gamma));
      kv(p + "eta", format_real(f->params.eta));
      kv(p + "kappa", format_real(f->kappa));
      kv(p + "phi_bar", format_real(f->phi_bar));
    }
    kv("model.s_pi", format_real(m.coupling.s_pi));
    kv("model.phi_c", format_real(m.coupling.phi_c));
  }
  auto kernel = [&](const std::string& name, const std::vector<double>& k) {
    for (std::size_t h = 0; h < k.size(); ++h) kv("kernel." + name + "." + std::to_string(h), format_real(k[h]));
  };
  kernel("phi.cash", kernels.phi_cash);
  kernel("phi.reserve", kernels.phi_reserve);
  kernel("pi_core.cash", kernels.pi_cash);
  kernel("pi_core.reserve", kernels.pi_reserve);
  return o.str();
}

void write_synth(const std::filesystem::path& dir, const SynthOutput& out) {
  write_panel_csv(dir / "monetary.csv", out.monetary, DataManifest::monetary_columns());
  write_panel_csv(dir / "cpi.csv", out.cpi, DataManifest::cpi_columns());
  write_text(dir / "ground_truth.csv", out.truth.to_csv());
}

}  // namespace monephase
