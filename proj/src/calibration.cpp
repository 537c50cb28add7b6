#include "monephase/calibration.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "monephase/error.hpp"
#include "monephase/textio.hpp"

namespace monephase {

namespace {

void check_tables(const CalibrationTargets& t) {
  const std::array<const IRFTable*, 4> tables{&t.phi_cash, &t.pi_cash, &t.phi_reserve, &t.pi_reserve};
  const auto& ref = t.phi_cash.rows;
  if (ref.empty()) throw Error("calibration: empty IRF table");
  for (const auto* tab : tables) {
    if (tab->rows.size() != ref.size()) throw Error("calibration: IRF tables differ in horizon grid");
    for (std::size_t i = 0; i < ref.size(); ++i) {
      const auto& r = tab->rows[i];
      if (r.h != ref[i].h) throw Error("calibration: IRF tables differ in horizon grid");
      if (!(r.se > 0.0)) {
        throw Error("calibration: non-positive standard error at h=" + std::to_string(r.h) +
                    " (" + tab->meta.phase + ", " + tab->meta.response + ") cannot be used as a weight");
      }
      if (!std::isfinite(r.beta)) throw Error("calibration: non-finite beta in IRF table");
    }
  }
  for (double pb : {t.phi_bar.cash, t.phi_bar.reserve}) {
    if (!(pb > 0.0 && pb < 1.0)) throw DomainError("calibration: phase means must lie in (0, 1)");
  }
  if (!(t.phi_bar.cash < t.phi_bar.reserve)) {
    throw DomainError("calibration: cash-phase mean must be below reserve-phase mean");
  }
}

template <typename Fn>
void for_each_target(const CalibrationTargets& t, const ModelPoint& p, Fn&& fn) {
  struct Block {
    const PhaseFit* fit;
    const IRFTable* phi;
    const IRFTable* pi;
  };
  const std::array<Block, 2> blocks{Block{&p.cash, &t.phi_cash, &t.pi_cash},
                                    Block{&p.reserve, &t.phi_reserve, &t.pi_reserve}};
  for (const auto& b : blocks) {
    const auto& par = b.fit->params;
    for (const auto& row : b.phi->rows) {
      fn(*b.fit, "phi", row, phi_irf(static_cast<double>(row.h), par, b.fit->phi_bar, b.fit->kappa));
    }
    for (const auto& row : b.pi->rows) {
      fn(*b.fit, "pi", row, cpi_irf(static_cast<double>(row.h), par, p.coupling, b.fit->phi_bar));
    }
  }
}

constexpr int kDim = 10;
using Vec = Eigen::Matrix<double, kDim, 1>;

// Search space per phase: 0 B, 1 delta, 2 gamma, 3 kappa/m_phi; then
// 8 s_pi/m_pi and 9 phi_c. A = 1 - B and eta is held at a fixed value: with
// eta free the phi response only pins two of (B, eta, kappa) per phase, and
// the pi responses then cannot separate B from phi_c.
struct Space {
  Vec lo;
  Vec hi;
  double m_phi = 1.0;
  double m_pi = 1.0;
  double eta = 0.0;
  PhaseMeans phi_bar;

  Vec clamp(const Vec& v) const { return v.cwiseMax(lo).cwiseMin(hi); }

  ModelPoint point(const Vec& v) const {
    ModelPoint p;
    auto fill = [&](PhaseFit& f, int o, const char* name, double pb) {
      f.phase = name;
      f.params = {1.0 - v(o), v(o), v(o + 1), v(o + 2), eta};
      f.kappa = v(o + 3) * m_phi;
      f.phi_bar = pb;
    };
    fill(p.cash, 0, "cash", phi_bar.cash);
    fill(p.reserve, 4, "reserve", phi_bar.reserve);
    p.coupling = {v(8) * m_pi, v(9)};
    return p;
  }
};

struct Evaluator {
  const CalibrationTargets& targets;
  const Space& space;
  long evaluations = 0;

  Eigen::VectorXd residuals(const Vec& v) {
    ++evaluations;
    std::vector<double> r;
    for_each_target(targets, space.point(v), [&](const PhaseFit&, const char*, const IrfRow& row, double model) {
      r.push_back((model - row.beta) / row.se);
    });
    return Eigen::Map<Eigen::VectorXd>(r.data(), static_cast<Eigen::Index>(r.size()));
  }

  double objective(const Vec& v) { return residuals(v).squaredNorm(); }

  // Weighted sum of squares of the targets themselves, the objective of a
  // model with no response.
  double target_scale() const {
    double sum = 0.0;
    for (const auto* t : {&targets.phi_cash, &targets.pi_cash, &targets.phi_reserve, &targets.pi_reserve}) {
      for (const auto& row : t->rows) sum += (row.beta / row.se) * (row.beta / row.se);
    }
    return sum;
  }
};

// Deterministic uniform draw in [0, 1) independent of the standard library's
// distribution implementations.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct NmOutcome {
  Vec x;
  double f = 0.0;
  bool converged = false;
};

NmOutcome nelder_mead(Evaluator& ev, Vec x0, int max_evals) {
  const Space& s = ev.space;
  x0 = s.clamp(x0);
  const long budget_end = ev.evaluations + max_evals;
  NmOutcome best{x0, ev.objective(x0), false};

  for (int round = 0; round < 3 && ev.evaluations < budget_end; ++round) {
    std::array<Vec, kDim + 1> simplex;
    std::array<double, kDim + 1> f{};
    simplex[0] = best.x;
    f[0] = best.f;
    for (int i = 0; i < kDim; ++i) {
      Vec p = best.x;
      double step = 0.2 * std::abs(p(i)) + 0.02 * std::min(1.0, s.hi(i) - s.lo(i));
      if (p(i) + step > s.hi(i)) step = -step;
      p(i) += step;
      simplex[static_cast<std::size_t>(i + 1)] = s.clamp(p);
      f[static_cast<std::size_t>(i + 1)] = ev.objective(simplex[static_cast<std::size_t>(i + 1)]);
    }

    bool converged = false;
    while (ev.evaluations < budget_end) {
      std::array<int, kDim + 1> idx;
      std::iota(idx.begin(), idx.end(), 0);
      std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });
      std::array<Vec, kDim + 1> sx;
      std::array<double, kDim + 1> sf{};
      for (int i = 0; i <= kDim; ++i) {
        sx[static_cast<std::size_t>(i)] = simplex[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        sf[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
      }
      simplex = sx;
      f = sf;

      double diameter = 0.0;
      for (int i = 1; i <= kDim; ++i) {
        diameter = std::max(diameter, (simplex[static_cast<std::size_t>(i)] - simplex[0]).lpNorm<Eigen::Infinity>());
      }
      if (f[kDim] - f[0] <= 1e-13 * (std::abs(f[0]) + 1e-20) || diameter < 1e-11) {
        converged = true;
        break;
      }

      Vec centroid = Vec::Zero();
      for (int i = 0; i < kDim; ++i) centroid += simplex[static_cast<std::size_t>(i)];
      centroid /= kDim;
      const Vec& worst = simplex[kDim];

      Vec xr = s.clamp(centroid + (centroid - worst));
      double fr = ev.objective(xr);
      if (fr < f[0]) {
        Vec xe = s.clamp(centroid + 2.0 * (centroid - worst));
        double fe = ev.objective(xe);
        if (fe < fr) {
          simplex[kDim] = xe;
          f[kDim] = fe;
        } else {
          simplex[kDim] = xr;
          f[kDim] = fr;
        }
        continue;
      }
      if (fr < f[kDim - 1]) {
        simplex[kDim] = xr;
        f[kDim] = fr;
        continue;
      }
      const bool outside = fr < f[kDim];
      Vec xc = outside ? s.clamp(centroid + 0.5 * (xr - centroid))
                       : s.clamp(centroid + 0.5 * (worst - centroid));
      double fc = ev.objective(xc);
      if (fc < (outside ? fr : f[kDim])) {
        simplex[kDim] = xc;
        f[kDim] = fc;
        continue;
      }
      for (int i = 1; i <= kDim; ++i) {
        auto& p = simplex[static_cast<std::size_t>(i)];
        p = s.clamp(simplex[0] + 0.5 * (p - simplex[0]));
        f[static_cast<std::size_t>(i)] = ev.objective(p);
      }
    }
    const auto it = std::min_element(f.begin(), f.end());
    const auto bi = static_cast<std::size_t>(it - f.begin());
    const bool stalled = !(f[bi] < best.f * (1.0 - 1e-10));
    if (f[bi] <= best.f) {
      best.x = simplex[bi];
      best.f = f[bi];
    }
    best.converged = converged;
    if (stalled && converged) break;
  }
  return best;
}

struct PolishOutcome {
  Vec x;
  double f = 0.0;
  bool converged = false;
};

// Projected Levenberg-Marquardt steps on the weighted residuals with a
// central-difference Jacobian.
PolishOutcome polish(Evaluator& ev, Vec x, int max_iter) {
  const Space& s = ev.space;
  Eigen::VectorXd r = ev.residuals(x);
  double f = r.squaredNorm();
  double mu = 1e-3;
  bool converged = false;
  constexpr std::size_t kWindow = 10;
  std::vector<double> history{f};
  // Objective level below which progress is not worth chasing: one squared
  // standard error for real targets, a tiny fraction of the targets' own
  // size when the standard errors are nominal.
  const double floor = std::min(1.0, 1e-10 * ev.target_scale());
  for (int it = 0; it < max_iter; ++it) {
    Eigen::MatrixXd J(r.size(), kDim);
    for (int i = 0; i < kDim; ++i) {
      const double h = 1e-6 * (1.0 + std::abs(x(i)));
      Vec xp = x;
      Vec xm = x;
      xp(i) = std::min(x(i) + h, s.hi(i));
      xm(i) = std::max(x(i) - h, s.lo(i));
      J.col(i) = (ev.residuals(xp) - ev.residuals(xm)) / (xp(i) - xm(i));
    }
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;
    bool accepted = false;
    while (mu < 1e14) {
      Eigen::MatrixXd M = JtJ;
      M.diagonal() += mu * (JtJ.diagonal().array() + 1e-12).matrix();
      Vec step = M.ldlt().solve(-g);
      Vec trial = s.clamp(x + step);
      Eigen::VectorXd rt = ev.residuals(trial);
      const double ft = rt.squaredNorm();
      if (ft < f) {
        const double gain = f - ft;
        const double moved = (trial - x).lpNorm<Eigen::Infinity>();
        x = trial;
        r = rt;
        f = ft;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
        history.push_back(f);
        const std::size_t m = history.size();
        const bool stalled = m > kWindow && history[m - 1 - kWindow] - f <= 1e-6 * (floor + f);
        if (gain <= 1e-12 * (floor + f) || moved < 1e-10 || stalled) converged = true;
        break;
      }
      mu *= 4.0;
    }
    if (!accepted) {
      converged = true;  // no descent direction left at working precision
      break;
    }
    if (converged || f == 0.0) {
      converged = true;
      break;
    }
  }
  return {x, f, converged};
}

}  // namespace

std::vector<TargetResidual> calibration_residuals(const CalibrationTargets& targets,
                                                  const ModelPoint& point) {
  check_tables(targets);
  std::vector<TargetResidual> out;
  for_each_target(targets, point, [&](const PhaseFit& fit, const char* target, const IrfRow& row, double model) {
    out.push_back({fit.phase, target, row.h, row.beta, row.se, model, (model - row.beta) / row.se});
  });
  return out;
}

double calibration_objective(const CalibrationTargets& targets, const ModelPoint& point) {
  double sum = 0.0;
  for (const auto& r : calibration_residuals(targets, point)) sum += r.weighted * r.weighted;
  return sum;
}

CalibrationResult calibrate(const CalibrationTargets& targets, const CalibrationOptions& opt) {
  check_tables(targets);
  if (opt.starts < 1) throw DomainError("calibration needs at least one start");
  if (!(opt.phi_c_min > 0.0 && opt.phi_c_min < opt.phi_c_max && opt.phi_c_max < 1.0)) {
    throw DomainError("calibration: invalid phi_c bounds");
  }

  auto max_abs = [](const IRFTable& a, const IRFTable& b) {
    double m = 0.0;
    for (const auto* t : {&a, &b}) {
      for (const auto& r : t->rows) m = std::max(m, std::abs(r.beta));
    }
    return m;
  };

  Space space;
  space.phi_bar = targets.phi_bar;
  const double m_phi = max_abs(targets.phi_cash, targets.phi_reserve);
  const double m_pi = max_abs(targets.pi_cash, targets.pi_reserve);
  space.m_phi = m_phi > 0.0 ? m_phi : 1.0;
  space.m_pi = m_pi > 0.0 ? m_pi : 1.0;
  if (!(opt.eta >= 0.0) || !std::isfinite(opt.eta)) throw DomainError("calibration: eta must be non-negative");
  space.eta = opt.eta;
  const double R = opt.rate_max;
  constexpr double kMinRate = 1e-6;
  // kappa and s_pi are searched relative to the largest target magnitude.
  space.lo << 0, kMinRate, kMinRate, 0, 0, kMinRate, kMinRate, 0, -1e3, opt.phi_c_min;
  space.hi << 1, R, R, 1e3, 1, R, R, 1e3, 1e3, opt.phi_c_max;

  Evaluator ev{targets, space};
  std::mt19937_64 rng(opt.seed);
  auto log_uniform = [&](double a, double b) { return a * std::pow(b / a, uniform01(rng)); };

  std::vector<NmOutcome> outcomes;
  outcomes.reserve(static_cast<std::size_t>(opt.starts));
  for (int s = 0; s < opt.starts; ++s) {
    Vec x0;
    if (s == 0) {
      const double mid = 0.5 * (targets.phi_bar.cash + targets.phi_bar.reserve);
      const double pi_sign = targets.pi_cash.rows.front().beta >= 0.0 ? 1.0 : -1.0;
      x0 << 0.5, 0.05, 0.1, 2.0, 0.5, 0.05, 0.1, 2.0, 2.0 * pi_sign, std::clamp(mid, opt.phi_c_min, opt.phi_c_max);
    } else {
      for (int phase = 0; phase < 2; ++phase) {
        const int o = phase * 4;
        x0(o) = uniform01(rng);
        x0(o + 1) = log_uniform(0.005, std::min(1.0, R));
        x0(o + 2) = log_uniform(0.005, std::min(1.0, R));
        x0(o + 3) = log_uniform(0.1, 20.0);
      }
      x0(8) = (uniform01(rng) < 0.5 ? -1.0 : 1.0) * log_uniform(0.1, 20.0);
      x0(9) = opt.phi_c_min + (opt.phi_c_max - opt.phi_c_min) * uniform01(rng);
    }
    outcomes.push_back(nelder_mead(ev, x0, opt.max_evaluations));
  }

  // Polish every simplex result; the simplex alone often stops in a shallow
  // basin that the polish escapes. Ties go to the lowest start index.
  int best_start = -1;
  PolishOutcome best{};
  bool nm_converged = false;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    auto p = polish(ev, outcomes[i].x, opt.polish_iterations);
    if (best_start < 0 || p.f < best.f) {
      best = p;
      best_start = static_cast<int>(i);
      nm_converged = outcomes[i].converged;
    }
  }

  const ModelPoint point = space.point(best.x);
  CalibrationResult out;
  out.cash = point.cash;
  out.reserve = point.reserve;
  out.coupling = point.coupling;
  out.residuals = calibration_residuals(targets, point);
  out.objective = 0.0;
  double max_model = 0.0;
  double max_target = 0.0;
  for (const auto& r : out.residuals) {
    out.objective += r.weighted * r.weighted;
    max_model = std::max(max_model, std::abs(r.model));
    max_target = std::max(max_target, std::abs(r.empirical));
  }
  out.best_start = best_start;
  out.converged = best.converged;
  out.degenerate = max_model <= 1e-6 * std::max(1.0, max_target);
  std::ostringstream diag;
  if (!out.converged) diag << "polish did not converge within " << opt.polish_iterations << " iterations; ";
  if (!nm_converged) diag << "simplex search of the best start hit its evaluation budget; ";
  if (out.degenerate) diag << "fitted responses vanish (degenerate fit); ";
  diag << "function evaluations " << ev.evaluations;
  out.diagnostic = diag.str();
  return out;
}

void write_calibration(const std::filesystem::path& dir, const CalibrationResult& r) {
  std::ostringstream params;
  params << "phase,A,B,delta,gamma,eta,kappa\n";
  for (const auto* f : {&r.cash, &r.reserve}) {
    params << f->phase << ',' << format_real(f->params.A) << ',' << format_real(f->params.B) << ','
           << format_real(f->params.delta) << ',' << format_real(f->params.gamma) << ','
           << format_real(f->params.eta) << ',' << format_real(f->kappa) << '\n';
  }
  write_text(dir / "two_compartment_parameters.csv", params.str());

  std::ostringstream summary;
  summary << "phi_c,s_pi,phi_bar_cash,phi_bar_reserve,objective\n"
          << format_real(r.coupling.phi_c) << ',' << format_real(r.coupling.s_pi) << ','
          << format_real(r.cash.phi_bar) << ',' << format_real(r.reserve.phi_bar) << ','
          << format_real(r.objective) << '\n';
  write_text(dir / "critical_point_summary.csv", summary.str());

  for (const char* phase : {"cash", "reserve"}) {
    std::ostringstream fit;
    fit << "h,target,empirical_beta,model_value,residual\n";
    for (const auto& res : r.residuals) {
      if (res.phase != phase) continue;
      fit << res.h << ',' << res.target << ',' << format_real(res.empirical) << ','
          << format_real(res.model) << ',' << format_real(res.empirical - res.model) << '\n';
    }
    write_text(dir / (std::string("fit_") + phase + "_phase.csv"), fit.str());
  }
}

}  // namespace monephase
