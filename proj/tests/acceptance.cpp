// Acceptance checks. Prints one PASS / FAIL / SKIP line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "monephase/breakpoint.hpp"
#include "monephase/calibration.hpp"
#include "monephase/compartment.hpp"
#include "monephase/config.hpp"
#include "monephase/landau.hpp"
#include "monephase/local_projection.hpp"
#include "monephase/phase.hpp"
#include "monephase/pipeline.hpp"
#include "monephase/random.hpp"
#include "monephase/regression.hpp"
#include "monephase/synth.hpp"
#include "oracles.hpp"

using namespace monephase;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Fail;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

const SamplePredicate kAll = [](MonthIndex) { return true; };

// 1. Closed-form compartment responses against RK4.
Outcome closed_form() {
  const auto t0 = Clock::now();
  Rng rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const bool merged = i < 50;
    CompartmentParams p{rng.uniform(0, 2), rng.uniform(0, 2), rng.uniform(0.001, 0.8), 0.0, rng.uniform(0, 0.8)};
    p.gamma = merged ? p.delta + rng.uniform(-1e-7, 1e-7) : rng.uniform(0.001, 0.8);
    const auto path = oracle::rk4_compartment(p, 0.01, 6000);
    for (int h = 0; h <= 60; ++h) {
      const auto [r, x] = path[static_cast<std::size_t>(h) * 100];
      worst = std::max({worst, std::abs(r_response(double(h), p) - r), std::abs(x_response(double(h), p) - x)});
    }
  }
  const double secs = seconds_since(t0);
  const bool ok = worst <= 1e-8 && secs < 5.0;
  return {ok ? Status::Pass : Status::Fail,
          fmt("1000 draws (50 with |delta-gamma| < 1e-6), max abs error %.3g, %.2f s", worst, secs)};
}

MonthlySeries tanh_series(MonthIndex start, int n, double phi0, double A, double t0, double w, double sd,
                          std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] = phi0 + A * std::tanh((t - t0) / w) + sd * rng.normal();
  return MonthlySeries(start, v);
}

// 2. Tanh transition recovery.
Outcome tanh_recovery() {
  const auto t0 = Clock::now();
  const MonthIndex start(2010, 1);
  const MonthRange window{start, start + 107};
  const double phi0 = 0.41, A = 0.28, tc = 47.3, w = 8.0;

  const auto exact = fit_tanh(tanh_series(start, 108, phi0, A, tc, w, 0.0, 1), window);
  const double err = std::max({std::abs(exact.phi0 - phi0), std::abs(exact.A - A),
                               std::abs(exact.t0 - (start.ordinal() + tc)), std::abs(exact.w - w)});
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto fit = fit_tanh(tanh_series(start, 108, phi0, A, tc, w, 0.01, seed), window);
    hits += fit.converged && std::abs(fit.t0 - (start.ordinal() + tc)) <= 2.0;
  }
  const double secs = seconds_since(t0);
  const bool ok = exact.converged && err <= 1e-6 && hits >= 95 && secs < 10.0;
  return {ok ? Status::Pass : Status::Fail,
          fmt("noiseless max error %.3g; t0 within 2 months in %d/100 noisy seeds; %.2f s", err, hits, secs)};
}

ShockSeries shock_of(MonthIndex start, std::vector<double> u) {
  return {MonthlySeries(start, std::move(u)), ShockDefinition::ar(12), "cash", true};
}

// Deterministic component obeying a linear recurrence of exactly `order`
// (sinusoids, plus the alternating mode when the order is odd) and no
// constant mode.
std::vector<double> recurrent_component(int order, int n, Rng& rng) {
  std::vector<double> v(static_cast<std::size_t>(n), 0.0);
  const int pairs = order / 2;
  for (int k = 0; k < pairs; ++k) {
    const double omega = 0.35 + 2.6 * (k + 0.5) / std::max(pairs, 1);
    const double phase = rng.uniform(0, 2 * std::numbers::pi);
    for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] += std::sin(omega * t + phase);
  }
  if (order % 2 == 1) {
    for (int t = 0; t < n; ++t) v[static_cast<std::size_t>(t)] += (t % 2 == 0 ? 0.7 : -0.7);
  }
  return v;
}

// 3. Local projection: exact recovery without noise, 2 se coverage with noise.
Outcome lp_correctness() {
  const auto t0 = Clock::now();
  const int H = 24, L = 12;
  const MonthIndex start(1950, 1);
  std::vector<double> kernel(37);
  for (std::size_t k = 0; k < kernel.size(); ++k) kernel[k] = 0.8 * std::pow(0.85, static_cast<double>(k));

  // One outcome per horizon: y_s = beta_h u_{s-h} + v_s, where v has
  // recurrence order L - h so y_{t+h} lies exactly in the regressor span.
  Rng rng(303);
  double exact_err = 0.0;
  const int T = 600;
  for (int h = 0; h <= H; ++h) {
    std::vector<double> u(T);
    for (auto& x : u) x = rng.normal();
    auto y = recurrent_component(std::max(L - h, 0), T, rng);
    for (int s = h; s < T; ++s) y[static_cast<std::size_t>(s)] += kernel[static_cast<std::size_t>(h)] * u[static_cast<std::size_t>(s - h)];
    for (int s = 0; s < h; ++s) y[static_cast<std::size_t>(s)] = kMissing;
    const auto irf = local_projection(MonthlySeries(start, y), shock_of(start, u), kAll, LpOptions{H, L, 12});
    exact_err = std::max(exact_err, std::abs(irf.at(h).beta - kernel[static_cast<std::size_t>(h)]));
  }

  // y_s = sum_k beta_k u_{s-k} + e_s.
  int inside = 0, total = 0;
  const int Tn = 4000;
  for (int rep = 0; rep < 200; ++rep) {
    Rng r(1000 + static_cast<std::uint64_t>(rep));
    std::vector<double> u(Tn), y(Tn);
    for (auto& x : u) x = r.normal();
    for (int s = 0; s < Tn; ++s) {
      double acc = r.normal();
      for (int k = 0; k < static_cast<int>(kernel.size()) && k <= s; ++k) {
        acc += kernel[static_cast<std::size_t>(k)] * u[static_cast<std::size_t>(s - k)];
      }
      y[static_cast<std::size_t>(s)] = acc;
    }
    const auto irf = local_projection(MonthlySeries(start, y), shock_of(start, u), kAll, LpOptions{H, L, 12});
    for (const auto& row : irf.rows) {
      inside += std::abs(row.beta - kernel[static_cast<std::size_t>(row.h)]) < 2.0 * row.se;
      ++total;
    }
  }
  const double coverage = static_cast<double>(inside) / total;
  const double secs = seconds_since(t0);
  const bool ok = exact_err <= 1e-8 && coverage >= 0.95;
  return {ok ? Status::Pass : Status::Fail,
          fmt("noiseless max error %.3g; noisy 2 se coverage %.4f over 200 x %d horizon estimates; %.2f s",
              exact_err, coverage, H + 1, secs)};
}

// 4. HAC against the naive double sum, and lag 0 against White.
Outcome hac_oracle() {
  Rng rng(404);
  double worst = 0.0, white = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 40 + static_cast<int>(rng.uniform(0, 160));
    const int k = 1 + static_cast<int>(rng.uniform(0, 5));
    const int lag = static_cast<int>(rng.uniform(0, 13));
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd e(n);
    for (int i = 0; i < n; ++i) {
      X(i, 0) = 1.0;
      for (int j = 1; j < k; ++j) X(i, j) = rng.normal();
      e(i) = rng.normal() * (1.0 + 0.5 * std::abs(X(i, k - 1)));
    }
    const auto V = hac_covariance(X, e, lag);
    const auto ref = oracle::naive_hac(X, e, lag);
    worst = std::max(worst, (V - ref).cwiseAbs().maxCoeff() / std::max(1.0, ref.cwiseAbs().maxCoeff()));
    const auto V0 = hac_covariance(X, e, 0);
    const auto W = oracle::white_sandwich(X, e);
    white = std::max(white, (V0 - W).cwiseAbs().maxCoeff() / W.cwiseAbs().maxCoeff());
  }
  const bool ok = worst <= 1e-10 && white <= 1e-14;
  return {ok ? Status::Pass : Status::Fail,
          fmt("100 instances, max deviation from naive sum %.3g; lag 0 vs White relative %.3g", worst, white)};
}

// 5. Breakpoint grid search against an exhaustive re-scan.
Outcome breakpoint_oracle() {
  const MonthIndex start(2000, 1);
  Rng rng(505);
  int agree = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 60 + static_cast<int>(rng.uniform(0, 120));
    const int brk = 24 + static_cast<int>(rng.uniform(0, n - 48));
    const double jump = rng.uniform(-2, 2), s1 = rng.uniform(-0.1, 0.1), s2 = rng.uniform(-0.1, 0.1);
    std::vector<double> y(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      y[static_cast<std::size_t>(t)] = (t <= brk ? s1 * t : jump + s2 * t) + 0.3 * rng.normal();
    }
    const auto b = breakpoint(MonthlySeries(start, y), {start, start + (n - 1)});
    const auto ref = oracle::breakpoint_rescan(y, 24);
    agree += b.tau == start + ref.tau && std::abs(b.rss - ref.rss) <= 1e-9 * std::max(1.0, ref.rss);
  }
  std::vector<double> planted(120);
  for (int t = 0; t < 120; ++t) planted[static_cast<std::size_t>(t)] = t < 60 ? 1.0 + 0.02 * t : 5.0 - 0.03 * t;
  const auto b = breakpoint(MonthlySeries(start, planted), {start, start + 119});
  const bool exact = b.tau == start + 59 && !b.tie && b.rss < 1e-18;
  const bool ok = agree == 100 && exact;
  return {ok ? Status::Pass : Status::Fail,
          fmt("%d/100 instances equal the re-scan; planted break at %s found at %s", agree,
              (start + 59).str().c_str(), b.tau.str().c_str())};
}

struct SignPattern {
  double phi_cash, phi_reserve, pi_cash, pi_reserve;

  bool expected() const { return phi_cash > 0 && phi_reserve > 0 && pi_cash > 0 && pi_reserve < 0; }
  std::string str() const {
    return fmt("phi %+.3g/%+.3g, pi %+.3g/%+.3g", phi_cash, phi_reserve, pi_cash, pi_reserve);
  }
};

SignPattern medium_signs(const PhaseIrfs& irfs, const RunConfig& cfg) {
  return {band_mean(irfs.phi_cash, cfg.medium_from, cfg.medium_to),
          band_mean(irfs.phi_reserve, cfg.medium_from, cfg.medium_to),
          band_mean(irfs.pi_cash, cfg.medium_from, cfg.medium_to),
          band_mean(irfs.pi_reserve, cfg.medium_from, cfg.medium_to)};
}

struct Economy {
  DerivedSeries derived;
  RunConfig config;
};

const Economy& mechanism_economy() {
  static const Economy economy = [] {
    const auto out = generate(SynthSpec::mechanism_economy());
    return Economy{derive(out.monetary, out.cpi), RunConfig{}};
  }();
  return economy;
}

// 6. Mechanism economy: IRF signs and the calibrated critical point.
Outcome mechanism_loop() {
  const auto t0 = Clock::now();
  const auto& eco = mechanism_economy();
  const auto irfs = estimate_phase_irfs(eco.derived, IrfSettings::from(eco.config));
  const auto signs = medium_signs(irfs, eco.config);

  CalibrationTargets targets{irfs.phi_cash, irfs.pi_cash, irfs.phi_reserve, irfs.pi_reserve, irfs.means};
  CalibrationOptions opt;
  opt.starts = eco.config.calibration_starts;
  opt.eta = eco.config.calibration_eta;
  opt.seed = eco.config.seed;
  const auto cal = calibrate(targets, opt);
  const double secs = seconds_since(t0);
  const double phi_c = cal.coupling.phi_c;
  const bool ok = signs.expected() && std::abs(phi_c - 0.231) <= 0.05 && cal.ordering_ok() && secs < 60.0;
  return {ok ? Status::Pass : Status::Fail,
          fmt("medium-horizon %s; phi_c %.4f (truth 0.231), ordering %.4f < %.4f < %.4f; %.2f s",
              signs.str().c_str(), phi_c, cal.cash.phi_bar, phi_c, cal.reserve.phi_bar, secs)};
}

// 7. Sign stability across robustness variants.
Outcome robustness_sweep() {
  const auto t0 = Clock::now();
  const auto& eco = mechanism_economy();
  const auto variants = robustness_variants(IrfSettings::from(eco.config));
  std::vector<std::string> broken;
  for (const auto& v : variants) {
    const auto signs = medium_signs(estimate_phase_irfs(eco.derived, v.settings), eco.config);
    if (!signs.expected()) broken.push_back(v.name + " (" + signs.str() + ")");
  }
  std::string detail = fmt("%zu variants, %zu with a changed sign pattern; %.2f s", variants.size(), broken.size(),
                           seconds_since(t0));
  for (const auto& b : broken) detail += "; " + b;
  return {broken.empty() ? Status::Pass : Status::Fail, detail};
}

// 8. Landau layer.
Outcome landau_layer() {
  double pitchfork = 0.0;
  for (int i = 1; i <= 200; ++i) {
    const double a = -0.025 * i;
    LandauParams p{a, 1.0, 0.0, 1.0, 0.0};
    const auto s = stationary_points(p);
    pitchfork = std::max(pitchfork, std::abs(std::abs(s.global().m) - std::sqrt(-a)));
  }
  for (double a : {0.0, 0.5, 2.0}) {
    LandauParams p{a, 1.0, 0.0, 1.0, 0.0};
    pitchfork = std::max(pitchfork, std::abs(stationary_points(p).global().m));
  }

  double lk = 0.0;
  int runs = 0;
  for (double a : {-1.0, -0.3, 0.4}) {
    for (double h : {0.0, 0.1, -0.25}) {
      for (double m0 : {-1.5, -0.2, 0.05, 0.9}) {
        LandauParams p{a, 1.0, h, 1.0, 0.0};
        const auto path = lk_trajectory(m0, p, 0.0, 0.01, 20000, 1);
        double nearest = INFINITY;
        for (const auto& sp : stationary_points(p).points) nearest = std::min(nearest, std::abs(path.back() - sp.m));
        lk = std::max(lk, nearest);
        ++runs;
      }
    }
  }

  const double phi_c = 0.231, eps = 0.02;
  bool peak = susceptibility(phi_c, phi_c, eps) == 1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double phi = i / 1000.0;
    if (phi != phi_c) peak = peak && susceptibility(phi, phi_c, eps) < 1.0;
  }
  const bool ok = pitchfork <= 1e-8 && lk <= 1e-4 && peak;
  return {ok ? Status::Pass : Status::Fail,
          fmt("pitchfork max error %.3g; %d noiseless LK runs end within %.3g of a root; susceptibility peak %s",
              pitchfork, runs, lk, peak ? "exactly 1 at phi_c" : "misplaced")};
}

// 9. Japanese data, when supplied.
Outcome japan_data() {
  const char* dir = std::getenv("MONEPHASE_JAPAN_DIR");
  if (dir == nullptr || *dir == '\0') return {Status::Skip, "MONEPHASE_JAPAN_DIR not set"};
  RunConfig cfg;
  cfg.monetary_path = std::filesystem::path(dir) / "monetary.csv";
  cfg.cpi_path = std::filesystem::path(dir) / "cpi.csv";
  if (!std::filesystem::exists(cfg.monetary_path) || !std::filesystem::exists(cfg.cpi_path)) {
    return {Status::Skip, std::string("monetary.csv or cpi.csv missing in ") + dir};
  }
  const auto in = load_inputs(cfg);
  const auto d = derive(in.monetary, in.cpi);

  const auto fit = fit_tanh(d.phi, cfg.tanh_window);
  // 2013 widened by twelve months on either side.
  const bool t0_ok = fit.converged && fit.t0 >= static_cast<double>(MonthIndex(2012, 1).ordinal()) &&
                     fit.t0 < static_cast<double>(MonthIndex(2015, 1).ordinal());

  std::vector<MonthIndex> taus;
  for (const auto& w : cfg.break_windows) {
    if (w.cluster != "2013" || !d.log_mb_sa.contains(w.range.first) || !d.log_mb_sa.contains(w.range.last)) continue;
    taus.push_back(breakpoint(d.log_mb_sa, w.range, cfg.break_min_seg).tau);
  }
  const auto in_2013 = std::count_if(taus.begin(), taus.end(), [](MonthIndex m) { return m.year() == 2013; });
  std::sort(taus.begin(), taus.end());
  const bool breaks_ok = !taus.empty() && taus[taus.size() / 2].year() == 2013 && 2 * in_2013 > static_cast<long>(taus.size());

  const auto means = phase_means(d.phi, classify(d.phi, cfg.thresholds));
  const bool means_ok = std::abs(means.cash - 0.127) <= 0.05 && std::abs(means.reserve - 0.694) <= 0.05;

  std::ostringstream detail;
  detail << "t0 " << format_fractional_month(fit.t0) << "; 2013-cluster breaks in 2013: " << in_2013 << '/'
         << taus.size() << "; phase means " << fmt("%.4f / %.4f", means.cash, means.reserve);
  return {t0_ok && breaks_ok && means_ok ? Status::Pass : Status::Fail, detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"closed-form responses vs RK4", closed_form},
      {"tanh transition recovery", tanh_recovery},
      {"local projection recovery", lp_correctness},
      {"HAC vs naive oracle", hac_oracle},
      {"breakpoint vs exhaustive re-scan", breakpoint_oracle},
      {"mechanism economy", mechanism_loop},
      {"robustness sign stability", robustness_sweep},
      {"Landau layer", landau_layer},
      {"Japanese data", japan_data},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    std::printf("%s %zu %s: %s\n", tag, i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
    failed += o.status == Status::Fail;
  }
  return failed == 0 ? 0 : 1;
}
