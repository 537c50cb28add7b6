#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "monephase/series.hpp"

namespace monephase {

// Canonical CSV inputs. Monetary quantities are in 100 million yen; CPI
// columns are index numbers with 2020 = 100.
struct DataManifest {
  std::filesystem::path monetary_path;
  std::filesystem::path cpi_path;

  static const std::vector<std::string>& monetary_columns();  // MB,BN,CO,RB,MB_SA
  static const std::vector<std::string>& cpi_columns();       // CPI,CPI_core
  static constexpr const char* monetary_unit = "100 million yen";
  static constexpr const char* cpi_unit = "index, 2020 = 100";
};

// Reads `date,<columns...>` with YYYY-MM dates in ascending, gap-free order.
// Empty cells are missing; negative values are rejected. Every failure names
// the file, line and column.
Panel load_csv_panel(const std::filesystem::path& path, const std::vector<std::string>& columns);

Panel load_monetary(const std::filesystem::path& path);

// Appends a warning when the 2020 average of CPI falls outside [95, 105].
Panel load_cpi(const std::filesystem::path& path, std::vector<std::string>* warnings = nullptr);

// Inverse of load_csv_panel, in the given column order.
std::string panel_to_csv(const Panel& panel, const std::vector<std::string>& columns);
void write_panel_csv(const std::filesystem::path& path, const Panel& panel,
                     const std::vector<std::string>& columns);

}  // namespace monephase
