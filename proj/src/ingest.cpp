#include "monephase/ingest.hpp"

#include <optional>

#include "monephase/error.hpp"
#include "monephase/textio.hpp"

namespace monephase {

namespace {

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line);
}

std::string expected_header(const std::vector<std::string>& columns) {
  std::string h = "date";
  for (const auto& c : columns) h += "," + c;
  return h;
}

}  // namespace

const std::vector<std::string>& DataManifest::monetary_columns() {
  static const std::vector<std::string> cols{"MB", "BN", "CO", "RB", "MB_SA"};
  return cols;
}

const std::vector<std::string>& DataManifest::cpi_columns() {
  static const std::vector<std::string> cols{"CPI", "CPI_core"};
  return cols;
}

Panel load_csv_panel(const std::filesystem::path& path, const std::vector<std::string>& columns) {
  const auto lines = read_lines(path);
  const auto header = expected_header(columns);
  if (lines.empty() || lines.front() != header) {
    throw ParseError(where(path, 1) + ": expected header '" + header + "'");
  }

  std::optional<MonthIndex> start;
  std::optional<MonthIndex> prev;
  std::vector<std::vector<double>> values(columns.size());

  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto& line = lines[i];
    if (line.empty()) {
      // Only trailing blank lines are tolerated.
      for (std::size_t j = i; j < lines.size(); ++j) {
        if (!lines[j].empty()) throw ParseError(where(path, lineno) + ": blank line inside data");
      }
      break;
    }
    const auto cells = split_csv(line);
    if (cells.size() != columns.size() + 1) {
      throw ParseError(where(path, lineno) + ": expected " + std::to_string(columns.size() + 1) +
                       " fields, found " + std::to_string(cells.size()));
    }
    MonthIndex month;
    try {
      month = MonthIndex::parse(cells[0]);
    } catch (const ParseError& e) {
      throw ParseError(where(path, lineno) + ", column date: " + e.what());
    }
    if (prev) {
      if (month == *prev) {
        throw ParseError(where(path, lineno) + ": duplicate month " + month.str());
      }
      if (month != prev->next()) {
        throw ParseError(where(path, lineno) + ": month " + month.str() + " does not follow " +
                         prev->str() + " (dates must be ascending without gaps)");
      }
    } else {
      start = month;
    }
    prev = month;

    for (std::size_t c = 0; c < columns.size(); ++c) {
      double v;
      try {
        v = parse_real(cells[c + 1]);
      } catch (const ParseError& e) {
        throw ParseError(where(path, lineno) + ", column " + columns[c] + ": " + e.what());
      }
      if (!is_missing(v) && v < 0.0) {
        throw ParseError(where(path, lineno) + ", column " + columns[c] + ": negative value " +
                         std::string(cells[c + 1]));
      }
      values[c].push_back(v);
    }
  }
  if (!start) throw ParseError(where(path, 2) + ": no data rows");

  Panel panel;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    panel.add(columns[c], MonthlySeries(*start, std::move(values[c])));
  }
  return panel;
}

Panel load_monetary(const std::filesystem::path& path) {
  return load_csv_panel(path, DataManifest::monetary_columns());
}

Panel load_cpi(const std::filesystem::path& path, std::vector<std::string>* warnings) {
  Panel panel = load_csv_panel(path, DataManifest::cpi_columns());
  if (warnings != nullptr) {
    for (const auto& name : DataManifest::cpi_columns()) {
      const auto& s = panel.get(name);
      double sum = 0.0;
      int n = 0;
      for (int m = 1; m <= 12; ++m) {
        if (auto v = s.at(MonthIndex(2020, m))) {
          sum += *v;
          ++n;
        }
      }
      if (n == 0) continue;
      const double avg = sum / n;
      if (avg < 95.0 || avg > 105.0) {
        warnings->push_back(path.string() + ": 2020 average of " + name + " is " + format_real(avg) +
                            ", expected close to 100 for a 2020-base index");
      }
    }
  }
  return panel;
}

std::string panel_to_csv(const Panel& panel, const std::vector<std::string>& columns) {
  std::string out = expected_header(columns) + "\n";
  std::vector<const MonthlySeries*> cols;
  for (const auto& c : columns) cols.push_back(&panel.get(c));
  for (std::size_t t = 0; t < panel.length(); ++t) {
    out += cols.front()->month_at(t).str();
    for (const auto* s : cols) {
      out += ',';
      out += format_real((*s)[t]);
    }
    out += '\n';
  }
  return out;
}

void write_panel_csv(const std::filesystem::path& path, const Panel& panel,
                     const std::vector<std::string>& columns) {
  write_text(path, panel_to_csv(panel, columns));
}

}  // namespace monephase
