#include <doctest.h>

#include <filesystem>
#include <string>

#include "monephase/error.hpp"
#include "monephase/ingest.hpp"
#include "monephase/random.hpp"
#include "monephase/textio.hpp"

using namespace monephase;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "monephase_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  auto p = scratch(name);
  write_text(p, text);
  return p;
}

std::string error_of(const fs::path& p, bool cpi = false) {
  try {
    if (cpi) {
      load_cpi(p);
    } else {
      load_monetary(p);
    }
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("format and parse reals") {
  CHECK(format_real(0.1) == "0.1");
  CHECK(format_real(-0.0) == "0");
  CHECK(format_real(kMissing).empty());
  CHECK(parse_real("1e-3") == 0.001);
  CHECK(is_missing(parse_real("")));
  CHECK_THROWS_AS(parse_real("1,000"), ParseError);
  CHECK_THROWS_AS(parse_real("abc"), ParseError);
  CHECK_THROWS_AS(parse_real("1.5x"), ParseError);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.normal() * std::pow(10.0, rng.uniform(-12, 12));
    CHECK(parse_real(format_real(v)) == v);
  }
}

TEST_CASE("load a two-row monetary file") {
  auto p = write_file("two.csv", "date,MB,BN,CO,RB,MB_SA\n1970-01,10,5,1,4,10\r\n1970-02,11,5,1,,11\n");
  auto panel = load_monetary(p);
  CHECK(panel.length() == 2);
  CHECK(panel.start() == MonthIndex(1970, 1));
  CHECK(panel.get("MB")[1] == 11.0);
  CHECK(is_missing(panel.get("RB")[1]));
  CHECK(panel.names().size() == 5);
}

TEST_CASE("ingest diagnostics name file, line and column") {
  auto gap = write_file("gap.csv", "date,MB,BN,CO,RB,MB_SA\n1970-01,1,1,1,1,1\n1970-03,1,1,1,1,1\n");
  auto msg = error_of(gap);
  CHECK(msg.find("gap.csv:3") != std::string::npos);

  auto dup = write_file("dup.csv", "date,MB,BN,CO,RB,MB_SA\n1970-01,1,1,1,1,1\n1970-01,1,1,1,1,1\n");
  CHECK(error_of(dup).find("dup.csv:3") != std::string::npos);

  auto back = write_file("back.csv", "date,MB,BN,CO,RB,MB_SA\n1970-02,1,1,1,1,1\n1970-01,1,1,1,1,1\n");
  CHECK_FALSE(error_of(back).empty());

  auto bad = write_file("bad.csv", "date,MB,BN,CO,RB,MB_SA\n1970-01,1,x,1,1,1\n");
  msg = error_of(bad);
  CHECK(msg.find("bad.csv:2") != std::string::npos);
  CHECK(msg.find("BN") != std::string::npos);

  auto header = write_file("header.csv", "date,MB,BN,CO,MB_SA,RB\n1970-01,1,1,1,1,1\n");
  CHECK(error_of(header).find("header.csv:1") != std::string::npos);

  auto fields = write_file("fields.csv", "date,MB,BN,CO,RB,MB_SA\n1970-01,1,1,1,1\n");
  CHECK(error_of(fields).find("fields.csv:2") != std::string::npos);

  auto neg = write_file("neg.csv", "date,CPI,CPI_core\n1970-01,-1,1\n");
  msg = error_of(neg, true);
  CHECK(msg.find("neg.csv:2") != std::string::npos);
  CHECK(msg.find("CPI") != std::string::npos);

  CHECK_THROWS_AS(load_monetary(scratch("does_not_exist.csv")), Error);
}

TEST_CASE("minimal CPI file supports yoy and the 2020 check") {
  std::string text = "date,CPI,CPI_core\n";
  for (int m = 1; m <= 12; ++m) text += "2020-" + std::string(m < 10 ? "0" : "") + std::to_string(m) + ",120,100\n";
  text += "2021-01,121.2,101\n";
  auto p = write_file("cpi13.csv", text);
  std::vector<std::string> warnings;
  auto panel = load_cpi(p, &warnings);
  CHECK(panel.length() == 13);
  CHECK(yoy(panel.get("CPI"))[12] == doctest::Approx(1.0));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("CPI") != std::string::npos);
}

TEST_CASE("panel round trip is bit exact") {
  Rng rng(11);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform(0, 200));
    Panel panel;
    for (const auto& col : DataManifest::monetary_columns()) {
      std::vector<double> v(n);
      for (auto& x : v) x = rng.uniform() < 0.05 ? kMissing : std::exp(rng.normal(8.0, 3.0));
      panel.add(col, MonthlySeries(MonthIndex(1960 + rep, 1 + rep % 12), v));
    }
    auto p = scratch("roundtrip.csv");
    write_panel_csv(p, panel, DataManifest::monetary_columns());
    CHECK(load_monetary(p) == panel);
  }
}
