// Acceptance gate for the corona workbench: twelve end-to-end criteria, one
// pass/fail line each, exit 0 only when every criterion holds. Tolerances
// are pinned here, next to the checks that use them.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corona/corona_ball.hpp"
#include "corona/parallel.hpp"
#include "corona/problem.hpp"
#include "corona/report.hpp"
#include "corona/sympoly.hpp"

using corona::Complex;
using corona::CSeries;
using corona::DiskCoronaProblem;
using corona::QSeries;
using corona::Quaternion;

namespace {

constexpr int kThreads = 4;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1: exact combinatorial identity suite -------------------------------

Outcome criterion_symbolic() {
  constexpr double kMaxSeconds = 300.0;
  double worst_time = 0.0;
  int identities = 0;
  for (int n = 1; n <= 3; ++n) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto checks = corona::sym::run_symbolic_checks(n);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);
    identities += static_cast<int>(checks.size());
    for (const auto& c : checks) {
      if (!c.pass) return {false, "identity '" + c.name + "' fails at n=" + std::to_string(n)};
    }
    if (dt > kMaxSeconds) return {false, "n=" + std::to_string(n) + " took " + fmt(dt) + "s"};
  }
  return {true, std::to_string(identities) + " identities, n=1..3, max " + fmt(worst_time) + "s"};
}

// ---- 2: coefficient star product vs conjugation-evaluation ---------------

Outcome criterion_star_duality() {
  constexpr double kTol = 1e-9;
  constexpr double kMaxSeconds = 30.0;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto random_series = [&](int deg) {
    std::vector<Quaternion> c;
    for (int m = 0; m <= deg; ++m) {
      const double a = u(rng), b = u(rng), cc = u(rng), d = u(rng);
      c.push_back(Quaternion(a, b, cc, d) * (1.0 / (deg + 1)));
    }
    return QSeries(std::move(c));
  };
  const auto pts = corona::sample_ball_points(50, 0.9, 77);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const QSeries f = random_series(1 + i % 8);
    const QSeries g = random_series(1 + (3 * i + 1) % 8);
    const QSeries fg = corona::star(f, g);
    for (const Quaternion& q : pts) {
      const Quaternion lhs = fg(q);
      const Quaternion rhs = corona::star_eval_pointwise(f, g, q);
      worst = std::max(worst, (lhs - rhs).norm());
    }
  }
  const double dt = seconds_since(t0);
  if (dt > kMaxSeconds) return {false, "took " + fmt(dt) + "s > 30s"};
  return {worst <= kTol, "100 pairs x 50 pts, max |coeff - pointwise| = " + fmt(worst) +
                             ", " + fmt(dt) + "s"};
}

// ---- 3: one-sided partners without the corona condition ------------------

Outcome criterion_counterexample() {
  constexpr double kIdentityTol = 1e-12;
  constexpr double kModulusCeil = 1e-3;
  const corona::BallCoronaProblem p = corona::counterexample_problem();
  const std::vector<QSeries> g = corona::counterexample_left_partners();
  QSeries sum = corona::star(g[0], p.f[0]) + corona::star(g[1], p.f[1]);
  const double id_resid = (sum - QSeries::constant(Quaternion::one())).l1_norm();
  const auto grid = corona::make_grid();
  const double min_mod = corona::min_corona_modulus(
      p, corona::slice_grid_points(grid, {Quaternion::e1()}));
  const bool pass = id_resid <= kIdentityTol && min_mod < kModulusCeil;
  return {pass, "left identity residual " + fmt(id_resid) + ", grid min sum|f|^2 = " +
                    fmt(min_mod)};
}

// ---- 4: one generator solved by the star inverse -------------------------

Outcome criterion_one_generator() {
  constexpr double kProductTol = 1e-10;
  constexpr double kNormSlack = 1.05;
  const QSeries f({Quaternion(-2.0), Quaternion::one()});  // q - 2
  const QSeries g = corona::star_inverse(f, 40);
  const double resid = (corona::star(f, g) - QSeries::constant(Quaternion::one())).l1_norm();

  const auto grid = corona::make_grid();
  const auto pts = corona::slice_grid_points(grid, {Quaternion::e1()});
  double min_sq = 1e300, sup_f = 0.0;
  for (const Quaternion& q : pts) {
    const double a = f(q).norm();
    min_sq = std::min(min_sq, a * a);
    sup_f = std::max(sup_f, a);
  }
  const double bound = (1.0 / min_sq) * sup_f * kNormSlack;
  const bool pass = resid <= kProductTol && g.l1_norm() <= bound;
  return {pass, "|f*g - 1| = " + fmt(resid) + ", |g| = " + fmt(g.l1_norm()) +
                    " vs bound " + fmt(bound)};
}

// ---- 5: single-pair closed form ------------------------------------------

Outcome criterion_closed_form() {
  constexpr double kTol = 1e-12;
  const auto grid = corona::make_grid();
  double worst = 0.0;

  const auto residual_of = [&](const CSeries& F, const CSeries& G,
                               const std::vector<Complex>& pts) {
    const corona::N1ClosedForm cf = corona::solve_n1_closed_form(F, G, grid);
    DiskCoronaProblem p;
    p.n = 1;
    p.F = {F};
    p.G = {G};
    const auto eval = [&](Complex z, std::vector<Complex>& X, std::vector<Complex>& Y) {
      X[0] = cf.H(z);
      Y[0] = cf.K(z);
    };
    const corona::ResidualPair r = corona::bezout_residuals(eval, p, pts);
    return std::max(r.r1, r.r2);
  };

  const auto pts = corona::random_disk_points(100, 0.9, 2026);
  worst = std::max(worst, residual_of(CSeries::constant(Complex(0.6)),
                                      CSeries::constant(Complex(0.48)), pts));
  worst = std::max(worst, residual_of(CSeries::constant(Complex(1.0)),
                                      CSeries::constant(Complex(0.0)), pts));

  // F = z, G = 1/2: W = z^2 + 1/4 vanishes at +-i/2; the quotients stay
  // exact solutions away from those points, so probe outside r = 0.05.
  std::vector<Complex> away;
  for (const Complex z : pts) {
    if (std::abs(z - Complex(0.0, 0.5)) < 0.05) continue;
    if (std::abs(z + Complex(0.0, 0.5)) < 0.05) continue;
    away.push_back(z);
  }
  if (away.size() < 50) return {false, "fixture sample set collapsed"};
  worst = std::max(worst, residual_of(CSeries::monomial(1),
                                      CSeries::constant(Complex(0.5)), away));
  return {worst <= kTol, "3 fixtures, max residual " + fmt(worst)};
}

// ---- 6, 7, 10: the seeded problem suite ----------------------------------

struct SuiteOutcomes {
  Outcome smooth, dbar, bounds;
};

SuiteOutcomes run_problem_suite() {
  constexpr double kSmoothTol = 1e-10;
  constexpr double kIdentityTol = 1e-9;
  constexpr double kCancelTol = 1e-8;
  constexpr double kTsumTol = 1e-10;

  const auto grid = corona::make_grid({24, 96, 0.995});
  double worst_smooth = 0.0, worst_id = 0.0, worst_cancel = 0.0, worst_tsum = 0.0;
  bool hk_ok = true, big_ok = true;
  double worst_hk_ratio = 0.0, worst_big_ratio = 0.0;

  for (int i = 0; i < 10; ++i) {
    const int n = 1 + i % 3;
    const double delta_t = 0.30 + 0.02 * (i % 5);
    const int degree = 2 + i % 3;
    const std::uint64_t seed = 101 + static_cast<std::uint64_t>(i);
    const DiskCoronaProblem p = corona::generate_disk_problem(n, delta_t, degree, seed);

    const auto s = std::make_shared<const corona::SmoothSolution>(p, grid);
    const auto pts = corona::random_disk_points(200, 0.9, seed + 1000);
    const corona::ResidualPair r =
        corona::bezout_residuals(corona::make_smooth_evaluator(s), p, pts, kThreads);
    worst_smooth = std::max({worst_smooth, r.r1, r.r2});

    const corona::DbarData data(*s);
    const auto pts50 = corona::random_disk_points(50, 0.9, seed + 2000);
    worst_id = std::max(worst_id, corona::verify_dbar_identities(*s, pts50, kThreads));
    const corona::DbarCancellation c =
        corona::verify_dbar_cancellation(*s, data, pts50, kThreads);
    worst_cancel = std::max({worst_cancel, c.dh, c.dk});
    worst_tsum = std::max(worst_tsum, c.tsum);

    const corona::DiskDiagnostics diag = corona::diagnose_smooth(*s, nullptr, kThreads);
    for (double v : diag.h_norms) {
      hk_ok = hk_ok && v <= diag.bound_hk;
      worst_hk_ratio = std::max(worst_hk_ratio, v / diag.bound_hk);
    }
    for (double v : diag.k_norms) {
      hk_ok = hk_ok && v <= diag.bound_hk;
      worst_hk_ratio = std::max(worst_hk_ratio, v / diag.bound_hk);
    }

    const auto corr = std::make_shared<const corona::CorrectionField>(data, grid, kThreads);
    const corona::HoloSolution hs(s, corr);
    double sup_big = 0.0;
    for (const Complex z : corona::random_disk_points(200, 0.9, seed + 3000)) {
      const auto v = hs.eval(z);
      for (int j = 0; j < n; ++j) {
        sup_big = std::max({sup_big, std::abs(v.H[static_cast<size_t>(j)]),
                            std::abs(v.K[static_cast<size_t>(j)])});
      }
    }
    big_ok = big_ok && sup_big <= diag.bound_HK;
    worst_big_ratio = std::max(worst_big_ratio, sup_big / diag.bound_HK);
  }

  SuiteOutcomes out;
  out.smooth = {worst_smooth <= kSmoothTol,
                "10 problems x 200 pts, max residual " + fmt(worst_smooth)};
  out.dbar = {worst_id <= kIdentityTol && worst_cancel <= kCancelTol && worst_tsum <= kTsumTol,
              "identities " + fmt(worst_id) + ", cancellation " + fmt(worst_cancel) +
                  ", T-sums " + fmt(worst_tsum)};

  const bool c_vals_ok = std::abs(corona::c_delta_n(1.0, 1) - 6.0) < 1e-9 &&
                         std::abs(corona::c_delta_n(0.5, 2) - 38052.0) < 1e-9;
  out.bounds = {hk_ok && big_ok && c_vals_ok,
                "max |h,k|/bound = " + fmt(worst_hk_ratio) + ", max |H,K|/bound = " +
                    fmt(worst_big_ratio) + (c_vals_ok ? "" : ", C(delta,n) values wrong")};
  return out;
}

// ---- 8: solid Cauchy transform convergence -------------------------------

double transform_node_error(const corona::DiskGridConfig& cfg, int angular_stride) {
  const auto grid = corona::make_grid(cfg);
  const corona::CauchyTransform t(corona::GridFn(grid, Complex(1.0)));
  std::vector<double> ring_worst(static_cast<size_t>(cfg.n_r), 0.0);
  corona::parallel_for(cfg.n_r, kThreads, [&](int i) {
    double w = 0.0;
    for (int k = 0; k < cfg.n_theta; k += angular_stride) {
      const Complex z = grid->node(grid->index_of(i, k));
      const double r = std::abs(z);
      if (r < 0.1 || r > 0.9) continue;
      w = std::max(w, std::abs(t(z) - std::conj(z)));
    }
    ring_worst[static_cast<size_t>(i)] = w;
  });
  double worst = 0.0;
  for (double w : ring_worst) worst = std::max(worst, w);
  return worst;
}

Outcome criterion_transform_convergence() {
  constexpr double kCoarseTol = 2e-2;
  constexpr double kFineTol = 5e-3;
  constexpr double kMinRatio = 2.0;
  const double coarse = transform_node_error({64, 256, 0.995}, 4);
  const double fine = transform_node_error({128, 512, 0.995}, 8);
  const double ratio = coarse / fine;
  const bool pass = coarse <= kCoarseTol && fine <= kFineTol && ratio >= kMinRatio;
  return {pass, "max |b - conj z|: 64x256 " + fmt(coarse) + ", 128x512 " + fmt(fine) +
                    ", ratio " + fmt(ratio)};
}

// ---- 9: assembled disk solution across grids -----------------------------

struct ChainResult {
  corona::ResidualPair residuals;
  double proxy = 0.0;
  double seconds = 0.0;
};

ChainResult run_chain(const DiskCoronaProblem& p, const corona::DiskGridConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = corona::make_grid(cfg);
  const auto s = std::make_shared<const corona::SmoothSolution>(p, grid);
  const corona::DbarData data(*s);
  const auto corr = std::make_shared<const corona::CorrectionField>(data, grid, kThreads);
  const auto hs = std::make_shared<const corona::HoloSolution>(s, corr);
  ChainResult r;
  r.residuals = corona::bezout_residuals(corona::make_holo_evaluator(hs), p,
                                         corona::random_disk_points(200, 0.9, 2026), kThreads);
  r.proxy = corona::holomorphy_proxy(*hs, corona::random_disk_points(20, 0.8, 2039),
                                     corona::kHolomorphyFdStep, kThreads);
  r.seconds = seconds_since(t0);
  return r;
}

Outcome criterion_disk_assembly() {
  constexpr double kResidualTol = 1e-8;
  constexpr double kProxyTol = 5e-2;
  constexpr double kMaxFineSeconds = 600.0;
  const DiskCoronaProblem p = corona::generate_disk_problem(2, 0.5, 4, 7);
  const ChainResult tiny = run_chain(p, {16, 64, 0.995});
  const ChainResult base = run_chain(p, {64, 256, 0.995});
  const ChainResult fine = run_chain(p, {128, 512, 0.995});

  const double worst_resid =
      std::max({tiny.residuals.r1, tiny.residuals.r2, base.residuals.r1, base.residuals.r2,
                fine.residuals.r1, fine.residuals.r2});
  const bool pass = worst_resid <= kResidualTol && base.proxy <= kProxyTol &&
                    fine.proxy * 2.0 <= base.proxy && fine.seconds <= kMaxFineSeconds;
  return {pass, "residuals (all grids) " + fmt(worst_resid) + ", proxy " + fmt(base.proxy) +
                    " -> " + fmt(fine.proxy) + ", fine " + fmt(fine.seconds) + "s"};
}

// ---- 11: ball problem end to end -----------------------------------------

Outcome criterion_ball() {
  constexpr double kStarTol = 1e-3;
  constexpr double kRoundTripTol = 1e-12;
  const corona::BallCoronaProblem p = corona::generate_ball_problem(2, 0.5, 4, 7);

  corona::DiskSolveOptions opt;
  opt.grid = {64, 256, 0.995};
  opt.threads = kThreads;
  const corona::BallSolution sol = corona::solve_ball(p, opt);
  const auto pts = corona::sample_ball_points(500, 0.6, 2026);
  const corona::BallBezoutCheck c = corona::verify_ball_bezout(p, sol.g, pts);

  const corona::Frame fr = corona::frame_for(Quaternion::e1());
  const DiskCoronaProblem split = corona::split_problem(p, fr);
  double round_trip = 0.0;
  for (int j = 0; j < p.n; ++j) {
    const QSeries back = corona::reassemble(split.F[static_cast<size_t>(j)],
                                            split.G[static_cast<size_t>(j)], fr);
    round_trip = std::max(round_trip, (back - p.f[static_cast<size_t>(j)]).l1_norm());
  }
  const bool pass = c.sup_pointwise <= kStarTol && round_trip <= kRoundTripTol;
  return {pass, "sup |sum f*g - 1| = " + fmt(c.sup_pointwise) + " over 500 pts, split round trip " +
                    fmt(round_trip)};
}

// ---- 12: byte-identical reports ------------------------------------------

Outcome criterion_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "corona_acceptance_cli";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const auto run = [&](const std::string& args) {
    const std::string cmd = std::string("\"") + CORONA_LAB_BIN + "\" " + args + " >> \"" +
                            (dir / "log.txt").string() + "\" 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  const std::string prob = (dir / "p.json").string();
  if (run("gen --kind disk --n 2 --delta 0.5 --degree 3 --seed 7 --out " + prob) != 0) {
    return {false, "gen failed"};
  }
  const std::string common = " --in " + prob +
                             " --nr 24 --ntheta 96 --fit-degree 24 --fit-samples 128"
                             " --points 50 --threads 2 --seed 2026 --out ";
  if (run("solve-disk" + common + (dir / "a").string()) != 0) return {false, "first run failed"};
  if (run("solve-disk" + common + (dir / "b").string()) != 0) return {false, "second run failed"};

  const auto canon = [&](const fs::path& f) {
    return corona::canonical_json_text(
        corona::without_timings(corona::Json::parse(corona::read_text_file(f.string()))));
  };
  const bool reports_equal = canon(dir / "a" / "report.json") == canon(dir / "b" / "report.json");
  const bool solutions_equal = corona::read_text_file((dir / "a" / "solution.json").string()) ==
                               corona::read_text_file((dir / "b" / "solution.json").string());
  return {reports_equal && solutions_equal,
          std::string("reports ") + (reports_equal ? "identical" : "DIFFER") + ", solutions " +
              (solutions_equal ? "identical" : "DIFFER")};
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {false, std::string("exception: ") + e.what()};
  }
}

}  // namespace

int main() {
  const char* names[12] = {
      "symbolic-identity-suite",   "star-product-duality",   "common-zero-counterexample",
      "one-generator-inverse",     "single-pair-closed-form", "smooth-solution-residuals",
      "dbar-identity-residuals",   "cauchy-transform-convergence", "disk-assembly-convergence",
      "norm-bound-accounting",     "ball-reassembly",        "report-determinism"};
  Outcome results[12];

  results[0] = guarded(criterion_symbolic);
  results[1] = guarded(criterion_star_duality);
  results[2] = guarded(criterion_counterexample);
  results[3] = guarded(criterion_one_generator);
  results[4] = guarded(criterion_closed_form);
  {
    SuiteOutcomes suite{{false, "suite failed"}, {false, "suite failed"}, {false, "suite failed"}};
    try {
      suite = run_problem_suite();
    } catch (const std::exception& e) {
      const std::string what = std::string("exception: ") + e.what();
      suite.smooth.detail = suite.dbar.detail = suite.bounds.detail = what;
    }
    results[5] = suite.smooth;
    results[6] = suite.dbar;
    results[9] = suite.bounds;
  }
  results[7] = guarded(criterion_transform_convergence);
  results[8] = guarded(criterion_disk_assembly);
  results[10] = guarded(criterion_ball);
  results[11] = guarded(criterion_determinism);

  int passed = 0;
  for (int i = 0; i < 12; ++i) {
    passed += results[i].pass ? 1 : 0;
    std::printf("[%2d/12] %s %s (%s)\n", i + 1, results[i].pass ? "PASS" : "FAIL", names[i],
                results[i].detail.c_str());
  }
  std::printf("acceptance: %d/12 criteria passed\n", passed);
  return passed == 12 ? 0 : 1;
}
