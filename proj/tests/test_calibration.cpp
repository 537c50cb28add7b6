#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "monephase/calibration.hpp"
#include "monephase/error.hpp"
#include "monephase/synth.hpp"
#include "monephase/textio.hpp"

using namespace monephase;

namespace {

ModelPoint truth() { return SynthSpec::reference_model(); }

IRFTable table(const std::string& phase, const std::string& response, int H, double se,
               const std::function<double(double)>& f) {
  IRFTable t;
  t.meta = {phase, "ar_resid(12)", response, H, 12, 12, {}};
  for (int h = 0; h <= H; ++h) t.rows.push_back(IrfRow::make(h, f(h), se, 100));
  return t;
}

CalibrationTargets targets_from(const ModelPoint& m, int H = 24, double se = 1.0) {
  auto phi = [](const PhaseFit& f) {
    return [f](double h) { return phi_irf(h, f.params, f.phi_bar, f.kappa); };
  };
  auto pi = [&m](const PhaseFit& f) {
    return [f, c = m.coupling](double h) { return cpi_irf(h, f.params, c, f.phi_bar); };
  };
  return {table("cash", "phi", H, se, phi(m.cash)), table("cash", "pi_core", H, se, pi(m.cash)),
          table("reserve", "phi", H, se, phi(m.reserve)), table("reserve", "pi_core", H, se, pi(m.reserve)),
          PhaseMeans{m.cash.phi_bar, m.reserve.phi_bar}};
}

}  // namespace

TEST_CASE("objective is zero at the generating point") {
  const auto m = truth();
  const auto t = targets_from(m);
  CHECK(calibration_objective(t, m) < 1e-28);
  const auto res = calibration_residuals(t, m);
  CHECK(res.size() == 100);
  CHECK(res.front().phase == "cash");
  CHECK(res.front().target == "phi");
  CHECK(res.front().h == 0);
}

TEST_CASE("objective is invariant under the joint impulse rescaling") {
  const auto m = truth();
  auto t = targets_from(m, 24, 0.01);
  for (auto& tab : {&t.phi_cash, &t.pi_cash, &t.phi_reserve, &t.pi_reserve}) {
    for (auto& r : tab->rows) r = IrfRow::make(r.h, r.beta * 1.1 + 0.001, r.se, r.n);
  }
  const double base = calibration_objective(t, m);
  for (double c : {0.3, 2.0, 17.0}) {
    auto s = m;
    for (auto* f : {&s.cash, &s.reserve}) {
      f->params.A *= c;
      f->params.B *= c;
      f->kappa /= c;
    }
    s.coupling.s_pi /= c;
    CHECK(calibration_objective(t, s) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("planted parameters are recovered") {
  const auto m = truth();
  CalibrationOptions opt;
  const auto r = calibrate(targets_from(m), opt);
  CHECK(r.objective < 1e-6);
  CHECK(std::abs(r.coupling.phi_c - 0.231) < 0.02);
  CHECK(r.ordering_ok());
  CHECK(r.converged);
  for (const auto& [fit, planted] : {std::pair{&r.cash, &m.cash}, std::pair{&r.reserve, &m.reserve}}) {
    CHECK(fit->params.B == doctest::Approx(planted->params.B).epsilon(1e-3));
    CHECK(fit->params.delta == doctest::Approx(planted->params.delta).epsilon(1e-3));
    CHECK(fit->params.gamma == doctest::Approx(planted->params.gamma).epsilon(1e-3));
    CHECK(fit->kappa == doctest::Approx(planted->kappa).epsilon(1e-3));
  }
  CHECK_FALSE(r.degenerate);
  CHECK(r.cash.params.A + r.cash.params.B == doctest::Approx(1.0));
  CHECK(r.reserve.params.A + r.reserve.params.B == doctest::Approx(1.0));
  CHECK(r.cash.phi_bar == 0.127);
  CHECK(r.reserve.phi_bar == 0.694);

  const auto again = calibrate(targets_from(m), opt);
  CHECK(again.objective == r.objective);
  CHECK(again.coupling.phi_c == r.coupling.phi_c);

  const auto dir = std::filesystem::temp_directory_path() / "monephase_tests" / "calibration";
  write_calibration(dir, r);
  const auto params = read_lines(dir / "two_compartment_parameters.csv");
  REQUIRE(params.size() == 3);
  CHECK(params[0] == "phase,A,B,delta,gamma,eta,kappa");
  CHECK(params[1].rfind("cash,", 0) == 0);
  const auto summary = read_lines(dir / "critical_point_summary.csv");
  CHECK(summary[0] == "phi_c,s_pi,phi_bar_cash,phi_bar_reserve,objective");
  const auto fit = read_lines(dir / "fit_cash_phase.csv");
  CHECK(fit[0] == "h,target,empirical_beta,model_value,residual");
  CHECK(fit.size() == 1 + 2 * 25);
  CHECK(read_lines(dir / "fit_reserve_phase.csv").size() == 1 + 2 * 25);
}

TEST_CASE("zero targets are flagged degenerate") {
  auto t = targets_from(truth());
  for (auto& tab : {&t.phi_cash, &t.pi_cash, &t.phi_reserve, &t.pi_reserve}) {
    for (auto& r : tab->rows) r = IrfRow::make(r.h, 0.0, 1.0, r.n);
  }
  CalibrationOptions opt;
  opt.starts = 10;
  const auto r = calibrate(t, opt);
  CHECK(r.degenerate);
  CHECK(r.objective < 1e-6);
}

TEST_CASE("calibration input contract") {
  auto t = targets_from(truth());
  auto zero_se = t;
  zero_se.pi_cash.rows[3].se = 0.0;
  CHECK_THROWS_AS(calibration_objective(zero_se, truth()), Error);

  auto short_grid = t;
  short_grid.phi_reserve.rows.pop_back();
  CHECK_THROWS_AS(calibrate(short_grid), Error);

  auto swapped = t;
  swapped.phi_bar = {0.694, 0.127};
  CHECK_THROWS_AS(calibrate(swapped), Error);
}

TEST_CASE("a fixed reabsorption rate is honoured") {
  auto m = truth();
  m.cash.params.eta = 0.004;
  m.reserve.params.eta = 0.004;
  CalibrationOptions opt;
  opt.starts = 20;
  opt.eta = 0.004;
  const auto r = calibrate(targets_from(m), opt);
  CHECK(r.cash.params.eta == 0.004);
  CHECK(r.reserve.params.eta == 0.004);
  CHECK(r.cash.params.B == doctest::Approx(m.cash.params.B).epsilon(1e-3));
  CHECK(std::abs(r.coupling.phi_c - 0.231) < 0.02);

  opt.eta = -1.0;
  CHECK_THROWS_AS(calibrate(targets_from(m), opt), DomainError);
}
