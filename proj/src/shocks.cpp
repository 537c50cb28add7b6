#include "monephase/shocks.hpp"

#include <cmath>

#include "monephase/error.hpp"
#include "monephase/regression.hpp"

namespace monephase {

std::string ShockDefinition::str() const {
  return (kind == Kind::ArResidual ? "ar_resid(" : "detrended(") + std::to_string(order) + ")";
}

ShockDefinition ShockDefinition::parse(const std::string& text) {
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string::npos || close != text.size() - 1 || close <= open + 1) {
    throw ParseError("invalid shock definition '" + text + "'");
  }
  const auto name = text.substr(0, open);
  int order = 0;
  try {
    order = std::stoi(text.substr(open + 1, close - open - 1));
  } catch (const std::exception&) {
    throw ParseError("invalid shock order in '" + text + "'");
  }
  if (order < 0) throw ParseError("negative shock order in '" + text + "'");
  if (name == "ar_resid") return ar(order);
  if (name == "detrended") return detrended(order);
  throw ParseError("unknown shock definition '" + text + "'");
}

namespace {

ArFit residual_regression(const MonthlySeries& x, int lags, bool trend,
                          const std::vector<MonthRange>& segments, std::string phase_label,
                          ShockDefinition def) {
  if (lags < 0) throw DomainError("lag order must be non-negative");
  std::vector<std::size_t> rows;
  for (const auto& seg : segments) {
    for (MonthIndex t = seg.first + lags; t <= seg.last; t = t.next()) {
      if (!x.contains(t) || !x.contains(t - lags)) continue;
      bool ok = true;
      for (int i = 0; i <= lags && ok; ++i) ok = x.at(t - i).has_value();
      if (ok) rows.push_back(x.offset(t));
    }
  }
  const int k = 1 + (trend ? 1 : 0) + lags;
  if (static_cast<int>(rows.size()) <= k) {
    throw LengthError("too few usable rows for " + def.str() + ": " + std::to_string(rows.size()) +
                      " (need more than " + std::to_string(k) + ")");
  }

  const auto n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd X(n, k);
  Eigen::VectorXd y(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const std::size_t t = rows[static_cast<std::size_t>(r)];
    y(r) = x[t];
    int c = 0;
    X(r, c++) = 1.0;
    if (trend) X(r, c++) = static_cast<double>(t);
    for (int i = 1; i <= lags; ++i) X(r, c++) = x[t - static_cast<std::size_t>(i)];
  }
  auto fit = ols(X, y);

  std::vector<double> resid(x.size(), kMissing);
  for (Eigen::Index r = 0; r < n; ++r) resid[rows[static_cast<std::size_t>(r)]] = fit.residuals(r);

  return ArFit{fit.coefficients,
               ShockSeries{MonthlySeries(x.start(), std::move(resid)), def, std::move(phase_label),
                           false},
               rows.size()};
}

}  // namespace

ArFit ar_fit(const MonthlySeries& x, int p, const std::vector<MonthRange>& segments,
             std::string phase_label) {
  if (p < 1) throw DomainError("AR order must be at least 1");
  return residual_regression(x, p, false, segments, std::move(phase_label), ShockDefinition::ar(p));
}

ArFit detrended_fit(const MonthlySeries& x, int lags, const std::vector<MonthRange>& segments,
                    std::string phase_label) {
  return residual_regression(x, lags, true, segments, std::move(phase_label),
                             ShockDefinition::detrended(lags));
}

ShockSeries detrended_shock(const MonthlySeries& x, int lags,
                            const std::vector<MonthRange>& segments, std::string phase_label) {
  return detrended_fit(x, lags, segments, std::move(phase_label)).shock;
}

ShockSeries standardize(const ShockSeries& shock) {
  const auto& v = shock.values;
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (!v.has(t)) continue;
    n += 1.0;
    const double d = v[t] - mean;
    mean += d / n;
    m2 += d * (v[t] - mean);
  }
  if (n < 2.0) throw LengthError("standardize needs at least two defined shock values");
  const double sd = std::sqrt(m2 / (n - 1.0));
  if (!(sd > 0.0)) throw NumericalError("degenerate shock: zero sample variance");

  std::vector<double> out(v.size(), kMissing);
  for (std::size_t t = 0; t < v.size(); ++t) {
    if (v.has(t)) out[t] = v[t] / sd;
  }
  return ShockSeries{MonthlySeries(v.start(), std::move(out)), shock.definition, shock.phase_label,
                     true};
}

ShockSeries build_shock(const MonthlySeries& x, const ShockDefinition& def,
                        const std::vector<MonthRange>& segments, std::string phase_label) {
  if (def.kind == ShockDefinition::Kind::ArResidual) {
    return standardize(ar_fit(x, def.order, segments, std::move(phase_label)).shock);
  }
  return standardize(detrended_shock(x, def.order, segments, std::move(phase_label)));
}

}  // namespace monephase
