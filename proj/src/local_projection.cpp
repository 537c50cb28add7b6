#include "monephase/local_projection.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "monephase/error.hpp"
#include "monephase/regression.hpp"
#include "monephase/textio.hpp"

namespace monephase {

const IrfRow& IRFTable::at(int h) const {
  for (const auto& r : rows) {
    if (r.h == h) return r;
  }
  throw Error("IRF table (" + meta.phase + ", " + meta.response + ") has no horizon " +
              std::to_string(h));
}

bool IRFTable::covers(int H) const {
  if (static_cast<int>(rows.size()) < H + 1) return false;
  for (int h = 0; h <= H; ++h) {
    if (rows[static_cast<std::size_t>(h)].h != h) return false;
  }
  return true;
}

IRFTable local_projection(const MonthlySeries& y, const ShockSeries& shock,
                          const SamplePredicate& sample, const LpOptions& options,
                          std::string response_name) {
  const int H = options.horizon;
  const int L = options.lags;
  if (H < 0 || L < 0) throw DomainError("local projection: H and L must be non-negative");
  const auto& u = shock.values;
  const int k = 2 + 2 * L;

  IRFTable table;
  table.meta = IrfMetadata{shock.phase_label, shock.definition.str(), std::move(response_name),
                           H, L, options.hac_lag, {}};

  for (int h = 0; h <= H; ++h) {
    std::vector<MonthIndex> dates;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const MonthIndex t = u.month_at(i);
      if (!u.has(i) || !sample(t)) continue;
      if (!y.at(t + h)) continue;
      bool ok = true;
      for (int j = 1; j <= L && ok; ++j) ok = y.at(t - j).has_value() && u.at(t - j).has_value();
      if (ok) dates.push_back(t);
    }
    const auto n = static_cast<Eigen::Index>(dates.size());
    if (n <= k) {
      throw LengthError("local projection: insufficient sample at horizon h=" + std::to_string(h) +
                        " (" + std::to_string(n) + " rows for " + std::to_string(k) +
                        " regressors)");
    }

    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd Y(n);
    std::vector<long> times(static_cast<std::size_t>(n));
    for (Eigen::Index r = 0; r < n; ++r) {
      const MonthIndex t = dates[static_cast<std::size_t>(r)];
      times[static_cast<std::size_t>(r)] = static_cast<long>(t - u.start());
      Y(r) = *y.at(t + h);
      X(r, 0) = 1.0;
      X(r, 1) = *u.at(t);
      for (int j = 1; j <= L; ++j) {
        X(r, 1 + j) = *y.at(t - j);
        X(r, 1 + L + j) = *u.at(t - j);
      }
    }
    if ((Y.array() - Y.mean()).abs().maxCoeff() == 0.0) {
      throw NumericalError("local projection: zero-variance outcome at horizon h=" +
                           std::to_string(h));
    }

    auto fit = ols(X, Y);
    const double var = hac_coefficient_variance(X, fit, options.hac_lag, 1, times);
    const double se = std::sqrt(std::max(0.0, var));
    table.rows.push_back(IrfRow::make(h, fit.coefficients(1), se, static_cast<long>(n)));
  }
  return table;
}

std::string irf_to_csv(const std::vector<IRFTable>& tables) {
  std::ostringstream out;
  bool first = true;
  for (const auto& t : tables) {
    if (!first) out << '\n';
    first = false;
    out << "# phase: " << t.meta.phase << '\n'
        << "# shock: " << t.meta.shock << '\n'
        << "# response: " << t.meta.response << '\n'
        << "# H: " << t.meta.horizon << '\n'
        << "# L: " << t.meta.lags << '\n'
        << "# hac_lag: " << t.meta.hac_lag << '\n';
    for (const auto& [key, value] : t.meta.extra) out << "# " << key << ": " << value << '\n';
    out << "h,beta,se,ci_low,ci_high,n\n";
    for (const auto& r : t.rows) {
      out << r.h << ',' << format_real(r.beta) << ',' << format_real(r.se) << ','
          << format_real(r.ci_low) << ',' << format_real(r.ci_high) << ',' << r.n << '\n';
    }
  }
  return out.str();
}

namespace {

int parse_int_field(const std::string& text, const std::string& what, std::size_t line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ParseError("IRF CSV line " + std::to_string(line) + ": invalid " + what + " '" + text +
                     "'");
  }
}

}  // namespace

std::vector<IRFTable> irf_from_csv(const std::string& text) {
  std::vector<IRFTable> tables;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  enum class State { Preamble, Rows } state = State::Preamble;
  IRFTable current;
  bool have_header = false;

  auto finish = [&] {
    if (!have_header) throw ParseError("IRF CSV: table without header line");
    tables.push_back(std::move(current));
    current = IRFTable{};
    have_header = false;
    state = State::Preamble;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (state == State::Rows) finish();
      continue;
    }
    if (line[0] == '#') {
      if (state == State::Rows) finish();
      auto colon = line.find(':');
      if (colon == std::string::npos) {
        throw ParseError("IRF CSV line " + std::to_string(lineno) + ": malformed metadata");
      }
      auto key = trim(std::string_view(line).substr(1, colon - 1));
      auto value = trim(std::string_view(line).substr(colon + 1));
      auto& m = current.meta;
      if (key == "phase") m.phase = value;
      else if (key == "shock") m.shock = value;
      else if (key == "response") m.response = value;
      else if (key == "H") m.horizon = parse_int_field(value, "H", lineno);
      else if (key == "L") m.lags = parse_int_field(value, "L", lineno);
      else if (key == "hac_lag") m.hac_lag = parse_int_field(value, "hac_lag", lineno);
      else m.extra[key] = value;
      continue;
    }
    if (line == "h,beta,se,ci_low,ci_high,n") {
      if (have_header) throw ParseError("IRF CSV line " + std::to_string(lineno) + ": repeated header");
      have_header = true;
      state = State::Rows;
      continue;
    }
    if (!have_header) {
      throw ParseError("IRF CSV line " + std::to_string(lineno) + ": data before header");
    }
    auto cells = split_csv(line);
    if (cells.size() != 6) {
      throw ParseError("IRF CSV line " + std::to_string(lineno) + ": expected 6 fields");
    }
    IrfRow r;
    try {
      r.h = parse_int_field(std::string(cells[0]), "h", lineno);
      r.beta = parse_real(cells[1]);
      r.se = parse_real(cells[2]);
      r.ci_low = parse_real(cells[3]);
      r.ci_high = parse_real(cells[4]);
    } catch (const ParseError& e) {
      throw ParseError("IRF CSV line " + std::to_string(lineno) + ": " + e.what());
    }
    r.n = parse_int_field(std::string(cells[5]), "n", lineno);
    current.rows.push_back(r);
  }
  if (state == State::Rows) finish();
  else if (have_header) finish();
  return tables;
}

void write_irf_csv(const std::filesystem::path& path, const std::vector<IRFTable>& tables) {
  write_text(path, irf_to_csv(tables));
}

std::vector<IRFTable> read_irf_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return irf_from_csv(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

const IRFTable& find_phase(const std::vector<IRFTable>& tables, const std::string& phase) {
  for (const auto& t : tables) {
    if (t.meta.phase == phase) return t;
  }
  throw Error("no IRF table for phase '" + phase + "'");
}

}  // namespace monephase
