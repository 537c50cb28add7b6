#include "monephase/config.hpp"

#include <charconv>
#include <functional>
#include <map>

#include "monephase/error.hpp"
#include "monephase/series.hpp"
#include "monephase/textio.hpp"

namespace monephase {

namespace {

double to_double(const std::string& key, const std::string& v) {
  double x = parse_real(v);
  if (is_missing(x)) throw ParseError("config key '" + key + "' needs a number");
  return x;
}

long long to_integer(const std::string& key, const std::string& v) {
  long long x = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ParseError("config key '" + key + "' needs an integer, got '" + v + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  return static_cast<int>(to_integer(key, v));
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ParseError("config key '" + key + "' needs true or false, got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    t["data.monetary"] = [](RunConfig& c, auto&, auto& v) { c.monetary_path = v; };
    t["data.cpi"] = [](RunConfig& c, auto&, auto& v) { c.cpi_path = v; };
    t["out"] = [](RunConfig& c, auto&, auto& v) { c.out_dir = v; };
    t["phase.cash_max"] = [](RunConfig& c, auto& k, auto& v) {
      c.thresholds = PhaseThresholds(to_double(k, v), c.thresholds.reserve_min);
    };
    t["phase.reserve_min"] = [](RunConfig& c, auto& k, auto& v) {
      c.thresholds = PhaseThresholds(c.thresholds.cash_max, to_double(k, v));
    };
    t["tanh.start"] = [](RunConfig& c, auto&, auto& v) { c.tanh_window.first = MonthIndex::parse(v); };
    t["tanh.end"] = [](RunConfig& c, auto&, auto& v) { c.tanh_window.last = MonthIndex::parse(v); };
    t["breakpoints.min_seg"] = [](RunConfig& c, auto& k, auto& v) { c.break_min_seg = to_int(k, v); };
    t["breakpoints.windows"] = [](RunConfig& c, auto&, auto& v) { c.break_windows = parse_break_windows(v); };
    t["shock"] = [](RunConfig& c, auto&, auto& v) { c.shock = ShockDefinition::parse(v); };
    t["irf.horizon"] = [](RunConfig& c, auto& k, auto& v) { c.horizon = to_int(k, v); };
    t["irf.lags"] = [](RunConfig& c, auto& k, auto& v) { c.lags = to_int(k, v); };
    t["irf.hac_lag"] = [](RunConfig& c, auto& k, auto& v) { c.hac_lag = to_int(k, v); };
    t["irf.robustness"] = [](RunConfig& c, auto& k, auto& v) { c.robustness = to_bool(k, v); };
    t["irf.medium_from"] = [](RunConfig& c, auto& k, auto& v) { c.medium_from = to_int(k, v); };
    t["irf.medium_to"] = [](RunConfig& c, auto& k, auto& v) { c.medium_to = to_int(k, v); };
    t["seed"] = [](RunConfig& c, auto& k, auto& v) {
      c.seed = static_cast<std::uint64_t>(to_integer(k, v));
    };
    t["calibration.starts"] = [](RunConfig& c, auto& k, auto& v) { c.calibration_starts = to_int(k, v); };
    t["calibration.eta"] = [](RunConfig& c, auto& k, auto& v) { c.calibration_eta = to_double(k, v); };
    t["landau.phi_c"] = [](RunConfig& c, auto& k, auto& v) { c.landau_phi_c = to_double(k, v); };
    t["landau.b"] = [](RunConfig& c, auto& k, auto& v) { c.landau_b = to_double(k, v); };
    t["landau.h"] = [](RunConfig& c, auto& k, auto& v) { c.landau_h = to_double(k, v); };
    t["landau.tau"] = [](RunConfig& c, auto& k, auto& v) { c.landau_tau = to_double(k, v); };
    t["landau.alpha"] = [](RunConfig& c, auto& k, auto& v) { c.landau_alpha = to_double(k, v); };
    t["landau.epsilon"] = [](RunConfig& c, auto& k, auto& v) { c.landau_epsilon = to_double(k, v); };
    t["landau.noise_sd"] = [](RunConfig& c, auto& k, auto& v) { c.landau_noise_sd = to_double(k, v); };
    t["steady_state.lambda"] = [](RunConfig& c, auto& k, auto& v) { c.logistic_lambda = to_double(k, v); };
    t["steady_state.theta_c"] = [](RunConfig& c, auto& k, auto& v) { c.logistic_theta_c = to_double(k, v); };
    t["steady_state.delta"] = [](RunConfig& c, auto& k, auto& v) { c.ss_delta = to_double(k, v); };
    t["steady_state.gamma"] = [](RunConfig& c, auto& k, auto& v) { c.ss_gamma = to_double(k, v); };
    t["steady_state.eta"] = [](RunConfig& c, auto& k, auto& v) { c.ss_eta = to_double(k, v); };
    t["efficiency.significant_only"] = [](RunConfig& c, auto& k, auto& v) {
      c.efficiency_significant_only = to_bool(k, v);
    };
    t["synth.preset"] = [](RunConfig& c, auto& k, auto& v) {
      if (v != "japan_like" && v != "mechanism") {
        throw ParseError("config key '" + k + "' must be japan_like or mechanism");
      }
      c.synth_preset = v;
    };
    t["synth.seed"] = [](RunConfig& c, auto& k, auto& v) {
      c.synth_seed = static_cast<std::uint64_t>(to_integer(k, v));
    };
    t["synth.months"] = [](RunConfig& c, auto& k, auto& v) { c.synth_months = to_int(k, v); };
    return t;
  }();
  return table;
}

std::pair<std::string, std::string> split_setting(const std::string& text, char sep) {
  auto pos = text.find(sep);
  if (pos == std::string::npos) throw ParseError("expected key" + std::string(1, sep) + "value, got '" + text + "'");
  return {trim(std::string_view(text).substr(0, pos)), trim(std::string_view(text).substr(pos + 1))};
}

}  // namespace

std::vector<BreakWindow> RunConfig::default_break_windows() {
  auto w = [](const char* cluster, int y0, int m0, int y1, int m1) {
    return BreakWindow{cluster, {MonthIndex(y0, m0), MonthIndex(y1, m1)}};
  };
  return {
      w("1990", 1983, 1, 1997, 12), w("1990", 1984, 1, 1996, 12), w("1990", 1985, 1, 1995, 12),
      w("1990", 1986, 1, 1994, 12), w("1990", 1987, 1, 1993, 12),
      w("2013", 2008, 1, 2019, 12), w("2013", 2009, 1, 2018, 12), w("2013", 2010, 1, 2017, 12),
      w("2013", 2010, 7, 2016, 12), w("2013", 2011, 1, 2016, 6),
      w("2022", 2018, 1, 2025, 12), w("2022", 2018, 7, 2025, 6), w("2022", 2019, 1, 2025, 3),
      w("2022", 2019, 7, 2024, 12), w("2022", 2020, 1, 2024, 12),
  };
}

void RunConfig::set(const std::string& key, const std::string& value) {
  auto it = setters().find(key);
  if (it == setters().end()) throw ParseError("unknown config key '" + key + "'");
  it->second(*this, key, value);
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : setters()) out.push_back(k);
  return out;
}

void RunConfig::validate() const {
  if (tanh_window.last < tanh_window.first) throw DomainError("tanh window ends before it starts");
  if (break_min_seg < 2) throw DomainError("breakpoints.min_seg must be at least 2");
  if (horizon < 0) throw DomainError("irf.horizon must be non-negative");
  if (lags < 0) throw DomainError("irf.lags must be non-negative");
  if (hac_lag < 0) throw DomainError("irf.hac_lag must be non-negative");
  if (shock.order < 1) throw DomainError("shock order must be positive");
  if (medium_from < 0 || medium_to < medium_from) throw DomainError("invalid medium horizon band");
  if (calibration_starts < 1) throw DomainError("calibration.starts must be positive");
  if (!(calibration_eta >= 0.0)) throw DomainError("calibration.eta must be non-negative");
  if (!(landau_b > 0.0)) throw DomainError("landau.b must be positive");
  if (!(landau_tau > 0.0)) throw DomainError("landau.tau must be positive");
  if (!(landau_epsilon > 0.0)) throw DomainError("landau.epsilon must be positive");
  if (landau_noise_sd < 0.0) throw DomainError("landau.noise_sd must be non-negative");
  if (landau_phi_c && !(*landau_phi_c > 0.0 && *landau_phi_c < 1.0)) {
    throw DomainError("landau.phi_c must lie in (0, 1)");
  }
  if (synth_months && *synth_months < 120) throw DomainError("synth.months must be at least 120");
}

RunConfig load_config(const std::optional<std::filesystem::path>& path,
                      const std::vector<std::string>& overrides) {
  RunConfig cfg;
  if (path) {
    const auto base = path->parent_path();
    cfg.monetary_path = base / cfg.monetary_path;
    cfg.cpi_path = base / cfg.cpi_path;
    cfg.out_dir = base / cfg.out_dir;
    const auto lines = read_lines(*path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string line = lines[i];
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      try {
        auto [k, v] = split_setting(line, '=');
        cfg.set(k, v);
        if (k == "data.monetary") cfg.monetary_path = base / cfg.monetary_path;
        if (k == "data.cpi") cfg.cpi_path = base / cfg.cpi_path;
        if (k == "out") cfg.out_dir = base / cfg.out_dir;
      } catch (const Error& e) {
        throw ParseError(path->string() + ":" + std::to_string(i + 1) + ": " + e.what());
      }
    }
  }
  for (const auto& o : overrides) {
    auto [k, v] = split_setting(o, '=');
    cfg.set(k, v);
  }
  cfg.validate();
  return cfg;
}

std::string format_break_windows(const std::vector<BreakWindow>& windows) {
  std::string out;
  for (const auto& w : windows) {
    if (!out.empty()) out += ", ";
    out += w.cluster + ":" + w.range.first.str() + ".." + w.range.last.str();
  }
  return out;
}

// "cluster:YYYY-MM..YYYY-MM" entries separated by commas.
std::vector<BreakWindow> parse_break_windows(const std::string& text) {
  std::vector<BreakWindow> out;
  for (auto item : split_csv(text)) {
    const std::string s = trim(item);
    if (s.empty()) continue;
    auto colon = s.find(':');
    auto dots = s.find("..");
    if (colon == std::string::npos || dots == std::string::npos || dots < colon) {
      throw ParseError("bad breakpoint window '" + s + "', expected cluster:YYYY-MM..YYYY-MM");
    }
    BreakWindow w{s.substr(0, colon),
                  {MonthIndex::parse(s.substr(colon + 1, dots - colon - 1)), MonthIndex::parse(s.substr(dots + 2))}};
    if (w.range.last < w.range.first) throw ParseError("breakpoint window '" + s + "' ends before it starts");
    out.push_back(w);
  }
  if (out.empty()) throw ParseError("no breakpoint windows given");
  return out;
}

}  // namespace monephase
