#include "monephase/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "monephase/breakpoint.hpp"
#include "monephase/calibration.hpp"
#include "monephase/compartment.hpp"
#include "monephase/efficiency.hpp"
#include "monephase/error.hpp"
#include "monephase/ingest.hpp"
#include "monephase/landau.hpp"
#include "monephase/synth.hpp"
#include "monephase/textio.hpp"

namespace monephase {

namespace {

constexpr const char* kIrfPiFile = "IRF_J6_core_inflation.csv";
constexpr const char* kIrfPhiFile = "IRF_J7_phi.csv";

using Record = std::map<std::string, std::string>;

// Header plus rows; '#' lines are skipped.
std::vector<Record> read_records(const std::filesystem::path& path) {
  std::vector<Record> out;
  std::vector<std::string> header;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_csv(line);
    if (header.empty()) {
      for (auto c : cells) header.emplace_back(c);
      continue;
    }
    if (cells.size() != header.size()) {
      throw ParseError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                       std::to_string(header.size()) + " fields");
    }
    Record r;
    for (std::size_t j = 0; j < header.size(); ++j) r[header[j]] = std::string(cells[j]);
    out.push_back(std::move(r));
  }
  return out;
}

const std::string& field(const Record& r, const std::string& key, const std::filesystem::path& path) {
  auto it = r.find(key);
  if (it == r.end()) throw ParseError(path.string() + ": missing column '" + key + "'");
  return it->second;
}

void emit(CommandResult& res, const std::filesystem::path& path, const std::string& text) {
  write_text(path, text);
  res.written.push_back(path);
}

std::string sign_of(double v) { return v > 0.0 ? "+" : (v < 0.0 ? "-" : "0"); }

std::string thresholds_str(const PhaseThresholds& t) {
  return format_real(t.cash_max) + "/" + format_real(t.reserve_min);
}

struct Era {
  const char* name;
  int first_year;
  int last_year;
};

constexpr Era kEras[] = {{"1971-1989", 1971, 1989},
                         {"1990-2012", 1990, 2012},
                         {"2013-2021", 2013, 2021},
                         {"2022-2026", 2022, 2026}};

std::vector<IRFTable> read_irf_pair(const RunConfig& cfg, const char* name) {
  const auto path = cfg.out_dir / name;
  if (!std::filesystem::exists(path)) {
    throw Error("missing " + path.string() + "; run the irf command first");
  }
  return read_irf_csv(path);
}

double table_phi_bar(const IRFTable& t) {
  auto it = t.meta.extra.find("phi_bar");
  if (it == t.meta.extra.end()) throw ParseError("IRF table for " + t.meta.phase + " has no phi_bar entry");
  return parse_real(it->second);
}

}  // namespace

Inputs load_inputs(const RunConfig& cfg) {
  Inputs in;
  in.monetary = load_monetary(cfg.monetary_path);
  in.cpi = load_cpi(cfg.cpi_path, &in.warnings);
  return in;
}

const std::vector<std::string>& derived_columns() {
  static const std::vector<std::string> cols{"phi",         "pi",       "pi_core",   "g_MB",
                                             "MB_SA_index", "RB_index", "CPI_index", "CPI_core_index"};
  return cols;
}

DerivedSeries derive(const Panel& monetary, const Panel& cpi) {
  const Panel m = merge({{"MB", monetary.get("MB")},
                         {"RB", monetary.get("RB")},
                         {"MB_SA", monetary.get("MB_SA")},
                         {"CPI", cpi.get("CPI")},
                         {"CPI_core", cpi.get("CPI_core")}});
  DerivedSeries d{order_parameter(m.get("RB"), m.get("MB")),
                  yoy(m.get("CPI")),
                  yoy(m.get("CPI_core")),
                  yoy(m.get("MB_SA")),
                  log_series(m.get("MB_SA")),
                  Panel{}};
  d.table.add("phi", d.phi);
  d.table.add("pi", d.pi);
  d.table.add("pi_core", d.pi_core);
  d.table.add("g_MB", d.g_mb);
  d.table.add("MB_SA_index", index_to_base(m.get("MB_SA")));
  d.table.add("RB_index", index_to_base(m.get("RB")));
  d.table.add("CPI_index", index_to_base(m.get("CPI")));
  d.table.add("CPI_core_index", index_to_base(m.get("CPI_core")));
  return d;
}

IrfSettings IrfSettings::from(const RunConfig& cfg) {
  return {cfg.thresholds, cfg.shock, LpOptions{cfg.horizon, cfg.lags, cfg.hac_lag}};
}

PhaseIrfs estimate_phase_irfs(const DerivedSeries& d, const IrfSettings& s) {
  const auto partition = classify(d.phi, s.thresholds);
  PhaseIrfs out;
  out.months_cash = partition.count(PhaseLabel::Cash);
  out.months_reserve = partition.count(PhaseLabel::Reserve);
  out.means = phase_means(d.phi, partition);

  auto run = [&](PhaseLabel label, double phi_bar, IRFTable& pi_out, IRFTable& phi_out) {
    const std::string name = to_string(label);
    if (partition.count(label) == 0) throw DomainError("empty " + name + " phase under thresholds " + thresholds_str(s.thresholds));
    const auto shock = build_shock(d.g_mb, s.shock, partition.segments(label), name);
    SamplePredicate in_phase = [&partition, label](MonthIndex t) { return partition.label_at(t) == label; };
    pi_out = local_projection(d.pi_core, shock, in_phase, s.lp, "pi_core");
    phi_out = local_projection(d.phi, shock, in_phase, s.lp, "phi");
    for (auto* t : {&pi_out, &phi_out}) {
      t->meta.extra["phi_bar"] = format_real(phi_bar);
      t->meta.extra["thresholds"] = thresholds_str(s.thresholds);
    }
  };
  run(PhaseLabel::Cash, out.means.cash, out.pi_cash, out.phi_cash);
  run(PhaseLabel::Reserve, out.means.reserve, out.pi_reserve, out.phi_reserve);
  return out;
}

std::vector<IRFTable> estimate_critical_region(const DerivedSeries& d, const IrfSettings& s) {
  const auto partition = classify(d.phi, s.thresholds);
  if (partition.count(PhaseLabel::Intermediate) == 0) throw DomainError("empty intermediate region");
  // Intermediate spells are short, so the shock comes from the whole sample.
  const auto shock = build_shock(d.g_mb, s.shock, {MonthRange{d.g_mb.start(), d.g_mb.last()}}, "intermediate");
  SamplePredicate in_band = [&partition](MonthIndex t) {
    return partition.label_at(t) == PhaseLabel::Intermediate;
  };
  std::vector<IRFTable> out{local_projection(d.pi_core, shock, in_band, s.lp, "pi_core"),
                            local_projection(d.phi, shock, in_band, s.lp, "phi")};
  for (auto& t : out) {
    t.meta.extra["unstable_region"] = "true";
    t.meta.extra["thresholds"] = thresholds_str(s.thresholds);
  }
  return out;
}

std::vector<RobustnessVariant> robustness_variants(const IrfSettings& base) {
  std::vector<RobustnessVariant> out;
  out.push_back({"baseline", base});
  for (const auto& t : PhaseThresholds::robustness_grid()) {
    if (t == base.thresholds) continue;
    auto s = base;
    s.thresholds = t;
    out.push_back({"thresholds=" + thresholds_str(t), s});
  }
  for (int H : {12, 24, 36}) {
    if (H == base.lp.horizon) continue;
    auto s = base;
    s.lp.horizon = H;
    out.push_back({"H=" + std::to_string(H), s});
  }
  for (int L : {6, 12, 18}) {
    if (L == base.lp.lags) continue;
    auto s = base;
    s.lp.lags = L;
    out.push_back({"L=" + std::to_string(L), s});
  }
  for (const auto& def : {ShockDefinition::ar(6), ShockDefinition::ar(12), ShockDefinition::ar(18),
                          ShockDefinition::detrended(12)}) {
    if (def == base.shock) continue;
    auto s = base;
    s.shock = def;
    out.push_back({"shock=" + def.str(), s});
  }
  return out;
}

double band_mean(const IRFTable& table, int from, int to) {
  double sum = 0.0;
  int n = 0;
  for (const auto& r : table.rows) {
    if (r.h >= from && r.h <= to) {
      sum += r.beta;
      ++n;
    }
  }
  if (n == 0) throw Error("IRF table does not cover horizons " + std::to_string(from) + ".." + std::to_string(to));
  return sum / n;
}

CommandResult cmd_transform(const RunConfig& cfg) {
  CommandResult res;
  auto in = load_inputs(cfg);
  res.warnings = in.warnings;
  const auto d = derive(in.monetary, in.cpi);
  emit(res, cfg.out_dir / "panel.csv", panel_to_csv(d.table, derived_columns()));

  const auto partition = classify(d.phi, cfg.thresholds);
  std::ostringstream o;
  o << "date,era,phi,pi_core,phase\n";
  for (std::size_t i = 0; i < d.phi.size(); ++i) {
    const auto m = d.phi.month_at(i);
    if (!d.phi.has(i) || !d.pi_core.has(i)) continue;
    for (const auto& era : kEras) {
      if (m.year() >= era.first_year && m.year() <= era.last_year) {
        o << m.str() << ',' << era.name << ',' << format_real(d.phi[i]) << ',' << format_real(d.pi_core[i])
          << ',' << to_string(partition.label_at(m)) << '\n';
      }
    }
  }
  emit(res, cfg.out_dir / "phase_diagram.csv", o.str());
  res.messages.push_back("panel " + d.phi.start().str() + ".." + d.phi.last().str() + ", " +
                         std::to_string(d.phi.size()) + " months");
  return res;
}

CommandResult cmd_breakpoints(const RunConfig& cfg) {
  CommandResult res;
  auto in = load_inputs(cfg);
  res.warnings = in.warnings;
  const auto d = derive(in.monetary, in.cpi);
  const std::vector<std::pair<std::string, const MonthlySeries*>> targets{
      {"log_MB_SA", &d.log_mb_sa}, {"phi", &d.phi}, {"pi_core", &d.pi_core}};

  std::ostringstream o;
  o << "series,cluster,window_start,window_end,tau,rss,tie,status\n";
  for (const auto& [name, y] : targets) {
    for (const auto& w : cfg.break_windows) {
      o << name << ',' << w.cluster << ',' << w.range.first.str() << ',' << w.range.last.str() << ',';
      if (!y->contains(w.range.first) || !y->contains(w.range.last)) {
        res.warnings.push_back(name + " window " + w.range.first.str() + ".." + w.range.last.str() +
                               " lies outside the data");
        o << ",,,outside_data\n";
        continue;
      }
      try {
        const auto b = breakpoint(*y, w.range, cfg.break_min_seg);
        o << b.tau.str() << ',' << format_real(b.rss) << ',' << (b.tie ? "true" : "false") << ",ok\n";
      } catch (const DomainError& e) {
        res.warnings.push_back(name + " window " + w.range.first.str() + ".." + w.range.last.str() + ": " +
                               e.what());
        o << ",,,invalid_window\n";
      }
    }
  }
  emit(res, cfg.out_dir / "breakpoints.csv", o.str());
  return res;
}

CommandResult cmd_fit_phase(const RunConfig& cfg) {
  CommandResult res;
  auto in = load_inputs(cfg);
  res.warnings = in.warnings;
  const auto d = derive(in.monetary, in.cpi);
  const auto fit = fit_tanh(d.phi, cfg.tanh_window);

  std::ostringstream o;
  o << "phi0,A,t0_calendar,w_months,sse,converged\n"
    << format_real(fit.phi0) << ',' << format_real(fit.A) << ',' << format_fractional_month(fit.t0) << ','
    << format_real(fit.w) << ',' << format_real(fit.sse) << ',' << (fit.converged ? "true" : "false") << '\n';
  emit(res, cfg.out_dir / "tanh_fit.csv", o.str());

  std::ostringstream c;
  c << "date,phi,fitted\n";
  for (auto m = cfg.tanh_window.first; m <= cfg.tanh_window.last; m = m.next()) {
    c << m.str() << ',' << format_real(d.phi.value_or_missing(m)) << ','
      << format_real(fit.evaluate(static_cast<double>(m.ordinal()))) << '\n';
  }
  emit(res, cfg.out_dir / "tanh_curve.csv", c.str());

  const auto partition = classify(d.phi, cfg.thresholds);
  std::ostringstream p;
  p << "date,phi,phase\n";
  for (std::size_t i = 0; i < d.phi.size(); ++i) {
    p << d.phi.month_at(i).str() << ',' << format_real(d.phi[i]) << ','
      << to_string(partition.labels()[i]) << '\n';
  }
  emit(res, cfg.out_dir / "phase_partition.csv", p.str());

  res.messages.push_back("t0 = " + format_fractional_month(fit.t0) + ", w = " + format_real(fit.w) + " months");
  if (fit.degenerate_width) res.warnings.push_back("tanh fit: no identifiable transition in the window");
  if (!fit.bounds_ok) res.warnings.push_back("tanh fit: phi0 +/- A leaves [0, 1]");
  if (!fit.converged) {
    res.warnings.push_back("tanh fit did not converge: " + fit.diagnostic);
    res.exit_code = 2;
  }
  return res;
}

CommandResult cmd_irf(const RunConfig& cfg) {
  CommandResult res;
  auto in = load_inputs(cfg);
  res.warnings = in.warnings;
  const auto d = derive(in.monetary, in.cpi);
  const auto base = IrfSettings::from(cfg);
  const auto irfs = estimate_phase_irfs(d, base);

  write_irf_csv(cfg.out_dir / kIrfPiFile, {irfs.pi_cash, irfs.pi_reserve});
  res.written.push_back(cfg.out_dir / kIrfPiFile);
  write_irf_csv(cfg.out_dir / kIrfPhiFile, {irfs.phi_cash, irfs.phi_reserve});
  res.written.push_back(cfg.out_dir / kIrfPhiFile);

  std::ostringstream pm;
  pm << "phase,phi_bar,months\n"
     << "cash," << format_real(irfs.means.cash) << ',' << irfs.months_cash << '\n'
     << "reserve," << format_real(irfs.means.reserve) << ',' << irfs.months_reserve << '\n';
  emit(res, cfg.out_dir / "phase_means.csv", pm.str());

  try {
    const auto crit = estimate_critical_region(d, base);
    write_irf_csv(cfg.out_dir / "IRF_critical_region.csv", crit);
    res.written.push_back(cfg.out_dir / "IRF_critical_region.csv");
  } catch (const Error& e) {
    res.warnings.push_back(std::string("critical-region diagnostic not estimable: ") + e.what());
  }

  auto summary = [&](const std::string& phase, const char* resp, const IRFTable& t) {
    res.messages.push_back(phase + " " + resp + " medium-horizon mean beta " +
                           format_real(band_mean(t, cfg.medium_from, cfg.medium_to)));
  };
  summary("cash", "pi_core", irfs.pi_cash);
  summary("reserve", "pi_core", irfs.pi_reserve);
  summary("cash", "phi", irfs.phi_cash);
  summary("reserve", "phi", irfs.phi_reserve);

  if (cfg.robustness) {
    std::vector<IRFTable> all;
    std::ostringstream signs;
    signs << "variant,phase,response,band_mean,sign\n";
    for (const auto& v : robustness_variants(base)) {
      const auto r = estimate_phase_irfs(d, v.settings);
      for (const auto* t : {&r.pi_cash, &r.pi_reserve, &r.phi_cash, &r.phi_reserve}) {
        auto copy = *t;
        copy.meta.extra["variant"] = v.name;
        all.push_back(copy);
        const double m = band_mean(*t, cfg.medium_from, cfg.medium_to);
        signs << v.name << ',' << t->meta.phase << ',' << t->meta.response << ',' << format_real(m) << ','
              << sign_of(m) << '\n';
      }
    }
    write_irf_csv(cfg.out_dir / "robustness_irf.csv", all);
    res.written.push_back(cfg.out_dir / "robustness_irf.csv");
    emit(res, cfg.out_dir / "robustness_signs.csv", signs.str());
  }
  return res;
}

CommandResult cmd_calibrate(const RunConfig& cfg) {
  CommandResult res;
  const auto pi = read_irf_pair(cfg, kIrfPiFile);
  const auto phi = read_irf_pair(cfg, kIrfPhiFile);
  CalibrationTargets targets{find_phase(phi, "cash"), find_phase(pi, "cash"), find_phase(phi, "reserve"),
                             find_phase(pi, "reserve"), {}};
  targets.phi_bar.cash = table_phi_bar(targets.phi_cash);
  targets.phi_bar.reserve = table_phi_bar(targets.phi_reserve);

  CalibrationOptions opt;
  opt.starts = cfg.calibration_starts;
  opt.seed = cfg.seed;
  opt.eta = cfg.calibration_eta;
  const auto r = calibrate(targets, opt);
  write_calibration(cfg.out_dir, r);
  for (const char* f : {"two_compartment_parameters.csv", "critical_point_summary.csv", "fit_cash_phase.csv",
                        "fit_reserve_phase.csv"}) {
    res.written.push_back(cfg.out_dir / f);
  }
  res.messages.push_back("phi_c = " + format_real(r.coupling.phi_c));
  res.messages.push_back("ordering phi_bar_cash < phi_c < phi_bar_reserve: " +
                         std::string(r.ordering_ok() ? "true" : "false") + " (" + format_real(r.cash.phi_bar) +
                         " < " + format_real(r.coupling.phi_c) + " < " + format_real(r.reserve.phi_bar) + ")");
  if (r.degenerate) res.warnings.push_back("calibration: fitted responses vanish identically");
  if (!r.converged) {
    res.warnings.push_back("calibration did not converge: " + r.diagnostic);
    res.exit_code = 2;
  }
  return res;
}

CommandResult cmd_landau(const RunConfig& cfg) {
  CommandResult res;
  double phi_c = 0.0;
  std::optional<PhaseMeans> means;
  const auto summary_path = cfg.out_dir / "critical_point_summary.csv";
  if (std::filesystem::exists(summary_path)) {
    const auto rows = read_records(summary_path);
    if (rows.empty()) throw ParseError(summary_path.string() + ": no data row");
    phi_c = parse_real(field(rows[0], "phi_c", summary_path));
    means = PhaseMeans{parse_real(field(rows[0], "phi_bar_cash", summary_path)),
                       parse_real(field(rows[0], "phi_bar_reserve", summary_path))};
  }
  if (cfg.landau_phi_c) phi_c = *cfg.landau_phi_c;
  if (!(phi_c > 0.0 && phi_c < 1.0)) {
    throw Error("no critical point: run calibrate or set landau.phi_c");
  }
  if (!means) means = PhaseMeans{std::max(phi_c - 0.1, 0.0), std::min(phi_c + 0.1, 1.0)};

  LandauParams base;
  base.b = cfg.landau_b;
  base.h_field = cfg.landau_h;
  base.tau = cfg.landau_tau;
  base.phi_c = phi_c;

  std::ostringstream pot;
  pot << "side,phi,a,m,F\n";
  for (auto [side, phi] : {std::pair<const char*, double>{"cash", means->cash}, {"reserve", means->reserve}}) {
    auto p = base;
    p.a = cfg.landau_alpha * (phi_c - phi);
    for (int i = -150; i <= 150; ++i) {
      const double m = i / 100.0;
      pot << side << ',' << format_real(phi) << ',' << format_real(p.a) << ',' << format_real(m) << ','
          << format_real(free_energy(m, p)) << '\n';
    }
  }
  emit(res, cfg.out_dir / "landau_potentials.csv", pot.str());

  std::ostringstream sweep;
  sweep << "theta_or_a,m_star,F_min,degenerate_flag\n";
  for (int i = 0; i <= 40; ++i) {
    auto p = base;
    p.a = (20 - i) / 20.0;
    const auto s = stationary_points(p);
    sweep << format_real(p.a) << ',' << format_real(s.global().m) << ',' << format_real(s.global().F) << ','
          << (s.degenerate ? 1 : 0) << '\n';
  }
  emit(res, cfg.out_dir / "landau_a_sweep.csv", sweep.str());

  // m_star is phi*(theta) - phi_c; the potential has no value here.
  const LogisticControl ctrl{cfg.logistic_lambda, cfg.logistic_theta_c};
  const CompartmentRates rates{cfg.ss_delta, cfg.ss_gamma, cfg.ss_eta};
  std::ostringstream ss;
  ss << "theta_or_a,m_star,F_min,degenerate_flag\n";
  for (int i = 0; i <= 100; ++i) {
    const double theta = cfg.logistic_theta_c + (i - 50) / 10.0;
    ss << format_real(theta) << ',' << format_real(steady_state_phi(theta, ctrl, rates, 1.0) - phi_c) << ",,0\n";
  }
  emit(res, cfg.out_dir / "steady_state_sweep.csv", ss.str());

  std::vector<double> grid;
  for (int i = 0; i <= 1000; ++i) grid.push_back(i / 1000.0);
  grid.push_back(phi_c);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  std::ostringstream sus;
  std::ostringstream chi_out;
  sus << "phi,S\n";
  chi_out << "phi,chi\n";
  for (double phi : grid) {
    sus << format_real(phi) << ',' << format_real(susceptibility(phi, phi_c, cfg.landau_epsilon)) << '\n';
    chi_out << format_real(phi) << ',' << format_real(chi(phi, phi_c)) << '\n';
  }
  emit(res, cfg.out_dir / "susceptibility.csv", sus.str());
  emit(res, cfg.out_dir / "chi_curve.csv", chi_out.str());

  // Relaxation from just above phi_c on the reserve side.
  auto p = base;
  p.a = cfg.landau_alpha * (phi_c - means->reserve);
  const double dt = 0.01;
  const int steps = 2000;
  const auto det = lk_trajectory(0.01, p, 0.0, dt, steps, cfg.seed);
  const auto noisy = lk_trajectory(0.01, p, cfg.landau_noise_sd, dt, steps, cfg.seed);
  std::ostringstream lk;
  lk << "step,t,m_deterministic,m_noisy\n";
  for (int k = 0; k <= steps; ++k) {
    lk << k << ',' << format_real(k * dt) << ',' << format_real(det[k]) << ',' << format_real(noisy[k]) << '\n';
  }
  emit(res, cfg.out_dir / "lk_trajectory.csv", lk.str());
  res.messages.push_back("phi_c = " + format_real(phi_c));
  return res;
}

CommandResult cmd_efficiency(const RunConfig& cfg) {
  CommandResult res;
  const auto pi = read_irf_pair(cfg, kIrfPiFile);
  const auto phi = read_irf_pair(cfg, kIrfPhiFile);
  EfficiencyOptions opt{cfg.efficiency_significant_only};
  std::ostringstream o;
  o << "phase,eff_r,argmax_r,eff_c,argmax_c,H\n";
  for (const char* phase : {"cash", "reserve"}) {
    const auto& tphi = find_phase(phi, phase);
    const auto& tpi = find_phase(pi, phase);
    const int H = std::min({cfg.horizon, tphi.meta.horizon, tpi.meta.horizon});
    const auto e = efficiencies(tphi, tpi, H, opt);
    o << phase << ',' << format_real(e.eff_r) << ',' << e.argmax_r << ',' << format_real(e.eff_c) << ','
      << e.argmax_c << ',' << e.horizon << '\n';
  }
  emit(res, cfg.out_dir / "efficiency.csv", o.str());
  return res;
}

CommandResult cmd_synth(const RunConfig& cfg) {
  CommandResult res;
  auto spec = cfg.synth_preset == "mechanism" ? SynthSpec::mechanism_economy() : SynthSpec::japan_like();
  if (cfg.synth_seed) spec.seed = *cfg.synth_seed;
  if (cfg.synth_months) spec.months = *cfg.synth_months;
  const auto out = generate(spec);
  write_synth(cfg.out_dir, out);
  for (const char* f : {"monetary.csv", "cpi.csv", "ground_truth.csv"}) res.written.push_back(cfg.out_dir / f);
  res.messages.push_back("synthetic " + cfg.synth_preset + " economy, seed " + std::to_string(spec.seed) + ", " +
                         std::to_string(spec.months) + " months");
  return res;
}

CommandResult cmd_report(const RunConfig& cfg) {
  CommandResult res;
  std::vector<std::string> missing;
  std::ostringstream o;
  auto source = [&](const char* name) -> std::optional<std::vector<Record>> {
    const auto path = cfg.out_dir / name;
    if (!std::filesystem::exists(path)) {
      missing.emplace_back(name);
      return std::nullopt;
    }
    return read_records(path);
  };

  if (auto rows = source("tanh_fit.csv"); rows && !rows->empty()) {
    const auto& r = rows->front();
    o << "tanh.t0=" << r.at("t0_calendar") << '\n'
      << "tanh.w_months=" << r.at("w_months") << '\n'
      << "tanh.converged=" << r.at("converged") << '\n';
  }

  if (auto rows = source("breakpoints.csv")) {
    std::map<std::pair<std::string, std::string>, std::vector<MonthIndex>> taus;
    for (const auto& r : *rows) {
      auto& v = taus[{r.at("series"), r.at("cluster")}];
      if (r.at("status") == "ok") v.push_back(MonthIndex::parse(r.at("tau")));
    }
    for (auto& [key, v] : taus) {
      const std::string prefix = "breakpoints." + key.first + "." + key.second;
      o << prefix << ".windows=" << v.size() << '\n';
      if (v.empty()) {
        o << prefix << ".median_tau=\n";
        continue;
      }
      std::sort(v.begin(), v.end());
      o << prefix << ".median_tau=" << v[(v.size() - 1) / 2].str() << '\n';
    }
  }

  if (auto rows = source("efficiency.csv")) {
    for (const auto& r : *rows) {
      const std::string prefix = "efficiency." + r.at("phase");
      for (const char* k : {"eff_r", "argmax_r", "eff_c", "argmax_c", "H"}) {
        o << prefix << '.' << k << '=' << r.at(k) << '\n';
      }
    }
  }

  if (auto rows = source("critical_point_summary.csv"); rows && !rows->empty()) {
    const auto& r = rows->front();
    for (const char* k : {"phi_c", "s_pi", "phi_bar_cash", "phi_bar_reserve", "objective"}) {
      o << "calibration." << k << '=' << r.at(k) << '\n';
    }
    const double c = parse_real(r.at("phi_bar_cash"));
    const double pc = parse_real(r.at("phi_c"));
    const double rv = parse_real(r.at("phi_bar_reserve"));
    o << "calibration.ordering_ok=" << ((c < pc && pc < rv) ? "true" : "false") << '\n';
  }

  std::string missing_list;
  for (const auto& m : missing) missing_list += (missing_list.empty() ? "" : ";") + m;
  o << "missing_files=" << missing_list << '\n';
  emit(res, cfg.out_dir / "report.txt", o.str());
  if (!missing.empty()) {
    res.warnings.push_back("report is incomplete; absent upstream files: " + missing_list);
    res.exit_code = 1;
  }
  return res;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"transform", "breakpoints", "fit-phase", "irf",   "calibrate",
                                              "landau",    "efficiency",  "synth",     "report"};
  return names;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
  if (name == "transform") return cmd_transform(cfg);
  if (name == "breakpoints") return cmd_breakpoints(cfg);
  if (name == "fit-phase") return cmd_fit_phase(cfg);
  if (name == "irf") return cmd_irf(cfg);
  if (name == "calibrate") return cmd_calibrate(cfg);
  if (name == "landau") return cmd_landau(cfg);
  if (name == "efficiency") return cmd_efficiency(cfg);
  if (name == "synth") return cmd_synth(cfg);
  if (name == "report") return cmd_report(cfg);
  throw Error("unknown command '" + name + "'");
}

}  // namespace monephase
