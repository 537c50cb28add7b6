#include <doctest.h>

#include <cmath>

#include "monephase/error.hpp"
#include "monephase/local_projection.hpp"
#include "monephase/random.hpp"

using namespace monephase;

namespace {

const MonthIndex kStart(1990, 1);

std::vector<double> normals(Rng& rng, int n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

ShockSeries as_shock(std::vector<double> v, std::string label = "cash") {
  return {MonthlySeries(kStart, std::move(v)), ShockDefinition::ar(12), std::move(label), true};
}

const SamplePredicate kAll = [](MonthIndex) { return true; };

}  // namespace

TEST_CASE("planted kernel is recovered exactly without noise") {
  Rng rng(1);
  const int T = 400;
  auto u = normals(rng, T);
  std::vector<double> y(T, 0.0);
  for (int t = 2; t < T; ++t) y[t] = 0.7 * u[t - 2];
  auto irf = local_projection(MonthlySeries(kStart, y), as_shock(u), kAll, LpOptions{2, 2, 2}, "y");
  REQUIRE(irf.rows.size() == 3);
  CHECK(std::abs(irf.at(0).beta) < 1e-8);
  CHECK(std::abs(irf.at(1).beta) < 1e-8);
  CHECK(std::abs(irf.at(2).beta - 0.7) < 1e-8);
  CHECK(irf.meta.phase == "cash");
  CHECK(irf.meta.shock == "ar_resid(12)");
  CHECK(irf.meta.horizon == 2);
  CHECK(irf.meta.lags == 2);
}

TEST_CASE("white-noise outcome gives insignificant responses") {
  Rng rng(2);
  int inside = 0, total = 0;
  for (int rep = 0; rep < 60; ++rep) {
    auto u = normals(rng, 4000);
    auto y = normals(rng, 4000);
    auto irf = local_projection(MonthlySeries(kStart, y), as_shock(u), kAll, LpOptions{12, 12, 12});
    for (const auto& r : irf.rows) {
      inside += std::abs(r.beta) < 2 * r.se;
      ++total;
    }
  }
  CHECK(static_cast<double>(inside) / total >= 0.95);
}

TEST_CASE("zero outcome is rejected") {
  Rng rng(3);
  auto u = normals(rng, 200);
  CHECK_THROWS_AS(
      local_projection(MonthlySeries(kStart, std::vector<double>(200, 0.0)), as_shock(u), kAll, LpOptions{4, 2, 2}),
      NumericalError);
}

TEST_CASE("insufficient sample names the horizon") {
  Rng rng(4);
  auto u = normals(rng, 40);
  auto y = normals(rng, 40);
  try {
    local_projection(MonthlySeries(kStart, y), as_shock(u), kAll, LpOptions{12, 12, 12});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("h=") != std::string::npos);
  }
}

TEST_CASE("scaling the shock divides beta") {
  Rng rng(5);
  const int T = 300;
  auto u = normals(rng, T);
  std::vector<double> y(T), u3(T);
  for (int t = 0; t < T; ++t) {
    y[t] = rng.normal() + (t > 0 ? 0.5 * u[t - 1] : 0.0);
    u3[t] = 3.0 * u[t];
  }
  LpOptions opt{6, 3, 4};
  auto a = local_projection(MonthlySeries(kStart, y), as_shock(u), kAll, opt);
  auto b = local_projection(MonthlySeries(kStart, y), as_shock(u3), kAll, opt);
  for (int h = 0; h <= 6; ++h) {
    CHECK(std::abs(b.at(h).beta - a.at(h).beta / 3.0) < 1e-10);
    CHECK(a.at(h).n == b.at(h).n);
  }
}

TEST_CASE("sample predicate conditions on the shock date") {
  Rng rng(6);
  const int T = 400;
  auto u = normals(rng, T);
  std::vector<double> y(T, 0.0);
  for (int t = 1; t < T; ++t) y[t] = 0.01 * rng.normal() + (t - 1 < 200 ? 1.0 : -1.0) * u[t - 1];
  SamplePredicate early = [](MonthIndex m) { return m < kStart + 200; };
  SamplePredicate late = [](MonthIndex m) { return m >= kStart + 200; };
  auto a = local_projection(MonthlySeries(kStart, y), as_shock(u), early, LpOptions{3, 2, 2});
  auto b = local_projection(MonthlySeries(kStart, y), as_shock(u), late, LpOptions{3, 2, 2});
  CHECK(a.at(1).beta == doctest::Approx(1.0).epsilon(0.01));
  CHECK(b.at(1).beta == doctest::Approx(-1.0).epsilon(0.01));
  CHECK(a.at(1).n < 200);
}

TEST_CASE("IRF rows and CSV") {
  auto r = IrfRow::make(3, 0.5, 0.1, 100);
  CHECK(r.ci_low == 0.5 - 1.96 * 0.1);
  CHECK(r.ci_high == 0.5 + 1.96 * 0.1);

  Rng rng(7);
  auto u = normals(rng, 300);
  auto y = normals(rng, 300);
  auto t1 = local_projection(MonthlySeries(kStart, y), as_shock(u, "cash"), kAll, LpOptions{5, 2, 3}, "pi_core");
  auto t2 = local_projection(MonthlySeries(kStart, y), as_shock(u, "reserve"), kAll, LpOptions{5, 2, 3}, "pi_core");
  t2.meta.extra["phi_bar"] = "0.694";
  for (const auto& row : t1.rows) {
    CHECK(std::abs(row.ci_low - (row.beta - 1.96 * row.se)) <= 1e-12);
    CHECK(std::abs(row.ci_high - (row.beta + 1.96 * row.se)) <= 1e-12);
  }
  const auto text = irf_to_csv({t1, t2});
  CHECK(text.rfind("# phase: cash\n# shock: ar_resid(12)\n# response: pi_core\n# H: 5\n# L: 2\n", 0) == 0);
  CHECK(text.find("h,beta,se,ci_low,ci_high,n\n") != std::string::npos);
  auto back = irf_from_csv(text);
  REQUIRE(back.size() == 2);
  CHECK(back[0] == t1);
  CHECK(back[1] == t2);
  CHECK(find_phase(back, "reserve").meta.extra.at("phi_bar") == "0.694");
  CHECK_THROWS(find_phase(back, "intermediate"));
  CHECK(t1.covers(5));
  CHECK_FALSE(t1.covers(6));
  CHECK_THROWS(t1.at(6));
}
