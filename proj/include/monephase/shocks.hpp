#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "monephase/month.hpp"
#include "monephase/series.hpp"

namespace monephase {

struct ShockDefinition {
  enum class Kind { ArResidual, Detrended };
  Kind kind = Kind::ArResidual;
  int order = 12;  // AR order, or number of own lags for the detrended variant

  static ShockDefinition ar(int p) { return {Kind::ArResidual, p}; }
  static ShockDefinition detrended(int lags) { return {Kind::Detrended, lags}; }

  std::string str() const;  // "ar_resid(12)" / "detrended(12)"
  static ShockDefinition parse(const std::string& text);
  bool operator==(const ShockDefinition&) const = default;
};

struct ShockSeries {
  MonthlySeries values;
  ShockDefinition definition;
  std::string phase_label;
  bool standardized = false;
};

struct ArFit {
  Eigen::VectorXd coefficients;  // intercept, then lags 1..p
  ShockSeries shock;
  std::size_t rows = 0;
};

// OLS of x_t on an intercept and x_{t-1..t-p}. A row is usable only when t and
// all of its lags fall in the same segment and are present; rows never reach
// across a segment gap. Residuals are returned unstandardized and are missing
// outside usable rows.
ArFit ar_fit(const MonthlySeries& x, int p, const std::vector<MonthRange>& segments,
             std::string phase_label = {});

// Residual of x_t on an intercept, a linear month trend and `lags` own lags,
// with the same segment rules as ar_fit.
ArFit detrended_fit(const MonthlySeries& x, int lags, const std::vector<MonthRange>& segments,
                    std::string phase_label = {});

ShockSeries detrended_shock(const MonthlySeries& x, int lags,
                            const std::vector<MonthRange>& segments,
                            std::string phase_label = {});

// Divides by the sample standard deviation (n-1 denominator) over present
// months; the mean is left as is.
ShockSeries standardize(const ShockSeries& shock);

// Builds the shock named by `def` and standardizes it.
ShockSeries build_shock(const MonthlySeries& x, const ShockDefinition& def,
                        const std::vector<MonthRange>& segments, std::string phase_label);

}  // namespace monephase
