#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "monephase/month.hpp"
#include "monephase/series.hpp"
#include "monephase/shocks.hpp"

namespace monephase {

// Two-sided normal quantile used for the reported 95% bands.
inline constexpr double kCiMultiplier = 1.96;

struct IrfRow {
  int h = 0;
  double beta = 0.0;
  double se = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  long n = 0;

  static IrfRow make(int h, double beta, double se, long n) {
    return {h, beta, se, beta - kCiMultiplier * se, beta + kCiMultiplier * se, n};
  }
  bool operator==(const IrfRow&) const = default;
};

struct IrfMetadata {
  std::string phase;
  std::string shock;
  std::string response;
  int horizon = 0;
  int lags = 0;
  int hac_lag = 12;
  // Additional `# key: value` lines, written after the fixed keys.
  std::map<std::string, std::string> extra;

  bool operator==(const IrfMetadata&) const = default;
};

struct IRFTable {
  IrfMetadata meta;
  std::vector<IrfRow> rows;  // h = 0..H in order

  const IrfRow& at(int h) const;
  bool covers(int H) const;
  bool operator==(const IRFTable&) const = default;
};

using SamplePredicate = std::function<bool(MonthIndex)>;

struct LpOptions {
  int horizon = 24;
  int lags = 12;
  int hac_lag = 12;
};

// For h = 0..H regresses y_{t+h} on [1, u_t, y_{t-1..t-L}, u_{t-1..t-L}] over
// shock dates t with sample(t) true and every regressor present. Lags come
// from the full series; the outcome may leave the sample. beta_h is the u_t
// coefficient with a Newey-West standard error computed on the month
// spacing of the selected rows.
IRFTable local_projection(const MonthlySeries& y, const ShockSeries& shock,
                          const SamplePredicate& sample, const LpOptions& options,
                          std::string response_name = "y");

// `# key: value` preamble, then `h,beta,se,ci_low,ci_high,n`. Several tables
// in one file are separated by a blank line.
std::string irf_to_csv(const std::vector<IRFTable>& tables);
std::vector<IRFTable> irf_from_csv(const std::string& text);
void write_irf_csv(const std::filesystem::path& path, const std::vector<IRFTable>& tables);
std::vector<IRFTable> read_irf_csv(const std::filesystem::path& path);

// Looks up the table for `phase` among several.
const IRFTable& find_phase(const std::vector<IRFTable>& tables, const std::string& phase);

}  // namespace monephase
