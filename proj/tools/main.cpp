// corona-lab: command-line workbench around the corona solver library.
//
// Subcommands:
//   solve-disk      full disk pipeline -> report + solution + residual CSVs
//   solve-ball      split / solve / reassemble -> report + solution
//   verify          residuals of a stored solution against a stored problem
//   gen             seeded well-conditioned problem generator
//   symbolic-check  exact-arithmetic verification of the identity schemes
//   dbar-test       solid Cauchy transform accuracy study (source = 1)
//
// Exit codes: 0 ok, 2 invalid input, 3 corona condition violated,
// 4 tolerance exceeded.

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "corona/corona_ball.hpp"
#include "corona/corona_disk.hpp"
#include "corona/errors.hpp"
#include "corona/problem.hpp"
#include "corona/report.hpp"
#include "corona/sympoly.hpp"
#include "corona/version.hpp"

namespace {

using corona::Complex;
using corona::Json;

// ---- serialization helpers ----------------------------------------------

Json series_json(const corona::CSeries& s) {
  Json a = Json::array();
  for (const Complex& c : s.coefficients()) a.push_back(Json::array({c.real(), c.imag()}));
  return a;
}

corona::CSeries series_from_json(const Json& a) {
  if (!a.is_array() || a.empty())
    throw corona::InvalidInput("solution series must be nonempty arrays of [re, im] pairs");
  std::vector<Complex> cs;
  cs.reserve(a.size());
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
      throw corona::InvalidInput("series coefficients must be [re, im] pairs");
    cs.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return corona::CSeries(std::move(cs));
}

Json qseries_json(const corona::QSeries& s) {
  Json a = Json::array();
  for (const corona::Quaternion& c : s.coefficients())
    a.push_back(Json::array({c.x0, c.x1, c.x2, c.x3}));
  return a;
}

corona::QSeries qseries_from_json(const Json& a) {
  if (!a.is_array() || a.empty())
    throw corona::InvalidInput("solution series must be nonempty arrays of [x0,x1,x2,x3]");
  std::vector<corona::Quaternion> cs;
  cs.reserve(a.size());
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 4)
      throw corona::InvalidInput("quaternion coefficients must be [x0,x1,x2,x3]");
    for (const auto& x : e)
      if (!x.is_number()) throw corona::InvalidInput("quaternion components must be numbers");
    cs.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>(), e[3].get<double>()});
  }
  return corona::QSeries(std::move(cs));
}

Json parse_json_text(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw corona::InvalidInput(std::string(what) + ": malformed JSON");
  return j;
}

Json residual_json(const corona::ResidualPair& r) {
  return Json{{"r1", r.r1}, {"r2", r.r2}};
}

Json diagnostics_json(const corona::DiskDiagnostics& d) {
  Json j;
  j["delta_hat_sq"] = d.delta_hat_sq;
  j["inf_Delta"] = d.inf_Delta;
  j["effective_delta_sq"] = d.effective_delta_sq;
  j["c_of_delta_n"] = d.c_of_delta_n;
  j["bound_hk"] = d.bound_hk;
  j["bound_HK"] = d.bound_HK;
  j["h_sup_norms"] = d.h_norms;
  j["k_sup_norms"] = d.k_norms;
  j["wolff"] = Json{{"b1", d.wolff_max.b1}, {"b2", d.wolff_max.b2}, {"b3", d.wolff_max.b3}};
  return j;
}

// ---- common flags ---------------------------------------------------------

struct SolveFlags {
  std::string in;
  std::string out = "out";
  int nr = 64;
  int ntheta = 256;
  double rmax = 0.995;
  double fit_radius = 0.8;
  int fit_degree = 64;
  int fit_samples = 512;
  int threads = 1;
  std::uint64_t seed = 2026;
  double tol = 0.0;
  int points = 200;
  bool subdivide = false;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--in", f.in, "input problem JSON")->required();
  cmd->add_option("--out", f.out, "output directory (created if missing)");
  cmd->add_option("--nr", f.nr, "radial quadrature cells");
  cmd->add_option("--ntheta", f.ntheta, "angular quadrature cells");
  cmd->add_option("--rmax", f.rmax, "outer radius of the quadrature grid");
  cmd->add_option("--fit-radius", f.fit_radius, "circle radius for the Taylor fit");
  cmd->add_option("--fit-degree", f.fit_degree, "degree of the fitted Taylor polynomials");
  cmd->add_option("--fit-samples", f.fit_samples, "sample count on the fit circle");
  cmd->add_option("--threads", f.threads, "worker threads (results are thread-count independent)");
  cmd->add_option("--seed", f.seed, "seed for residual sample points");
  cmd->add_option("--tol", f.tol, "exit 4 when the assembled residual exceeds this (0 = report only)");
  cmd->add_option("--points", f.points, "residual sample point count");
  cmd->add_flag("--subdivide", f.subdivide, "subdivide quadrature cells near the singularity");
}

corona::DiskSolveOptions solve_options(const SolveFlags& f) {
  corona::DiskSolveOptions o;
  o.grid = corona::DiskGridConfig{f.nr, f.ntheta, f.rmax};
  o.fit_radius = f.fit_radius;
  o.fit_degree = f.fit_degree;
  o.fit_samples = f.fit_samples;
  o.threads = f.threads;
  o.subdivide_near = f.subdivide;
  o.check_points = f.points;
  o.check_seed = f.seed;
  return o;
}

Json solve_config_json(const SolveFlags& f) {
  Json j;
  j["grid"] = Json{{"nr", f.nr}, {"ntheta", f.ntheta}, {"rmax", f.rmax}};
  j["fit"] = Json{{"radius", f.fit_radius}, {"degree", f.fit_degree}, {"samples", f.fit_samples}};
  j["points"] = f.points;
  j["seed"] = f.seed;
  j["threads"] = f.threads;
  j["subdivide"] = f.subdivide;
  return j;
}

void write_out_file(const std::string& dir, const std::string& name, const std::string& text) {
  std::filesystem::create_directories(dir);
  corona::write_text_file((std::filesystem::path(dir) / name).string(), text);
}

// ---- residual grids (CSV artifacts) --------------------------------------

corona::GridFn smooth_residual_grid(const corona::SmoothSolution& s) {
  const corona::DiskGridPtr& g = s.grid();
  corona::GridFn out(g);
  for (int idx = 0; idx < g->size(); ++idx) {
    const Complex z = g->node(idx);
    corona::WPointEval ev(z);
    Complex e1(0.0);
    for (int j = 1; j <= s.n(); ++j)
      e1 += s.F(j)(z) * ev(s.h(j)).v - s.G(j)(z) * ev(s.khat(j)).v;
    out[idx] = e1 - 1.0;
  }
  return out;
}

corona::GridFn holo_residual_grid(const corona::HoloSolution& hs, const corona::DiskCoronaProblem& p,
                                  const corona::DiskGridPtr& coarse) {
  corona::GridFn out(coarse);
  for (int idx = 0; idx < coarse->size(); ++idx) {
    const Complex z = coarse->node(idx);
    const auto v = hs.eval(z);
    const auto vc = hs.eval(std::conj(z));
    Complex e1(0.0);
    for (int j = 0; j < hs.n(); ++j) {
      const auto u = static_cast<std::size_t>(j);
      e1 += p.F[u](z) * v.H[u] - p.G[u](z) * std::conj(vc.K[u]);
    }
    out[idx] = e1 - 1.0;
  }
  return out;
}

std::string csv_text(const corona::GridFn& f) {
  std::ostringstream os;
  f.write_csv(os);
  return os.str();
}

// ---- subcommand runners ---------------------------------------------------

struct DiskRun {
  corona::DiskSolution sol;
  double dbar_identities = 0.0;
  corona::DbarCancellation cancellation;
  double holomorphy = 0.0;
  double fd_step = 0.0;
};

DiskRun run_disk_pipeline(const corona::DiskCoronaProblem& p, const SolveFlags& f) {
  const corona::DiskSolveOptions o = solve_options(f);
  DiskRun r;
  r.sol = corona::solve_disk(p, o);
  const auto id_pts = corona::random_disk_points(f.points, 0.9, f.seed + 11);
  r.dbar_identities = corona::verify_dbar_identities(*r.sol.smooth, id_pts, f.threads);
  const auto canc_pts = corona::random_disk_points(std::min(f.points, 50), 0.9, f.seed + 12);
  r.cancellation = corona::verify_dbar_cancellation(*r.sol.smooth, *r.sol.data, canc_pts, f.threads);
  r.fd_step = corona::kHolomorphyFdStep;
  const auto proxy_pts = corona::random_disk_points(20, 0.8, f.seed + 13);
  r.holomorphy = corona::holomorphy_proxy(*r.sol.holo, proxy_pts, r.fd_step, f.threads);
  return r;
}

Json disk_report_body(const DiskRun& r) {
  Json j;
  j["certificates"] = Json{{"delta_hat_sq", r.sol.diagnostics.delta_hat_sq},
                           {"inf_Delta", r.sol.diagnostics.inf_Delta},
                           {"effective_delta_sq", r.sol.diagnostics.effective_delta_sq}};
  Json res;
  res["smooth"] = residual_json(r.sol.smooth_residuals);
  res["holo"] = residual_json(r.sol.holo_residuals);
  res["fit"] = residual_json(r.sol.fit_residuals);
  res["dbar_identities_max"] = r.dbar_identities;
  res["dbar_cancellation"] = Json{{"dh", r.cancellation.dh},
                                  {"dk", r.cancellation.dk},
                                  {"tsum", r.cancellation.tsum}};
  res["holomorphy_proxy"] = r.holomorphy;
  res["holomorphy_fd_step"] = r.fd_step;
  j["residuals"] = res;
  j["diagnostics"] = diagnostics_json(r.sol.diagnostics);
  j["fit_sup"] = Json{{"H", r.sol.fit.max_abs_H}, {"K", r.sol.fit.max_abs_K}};
  return j;
}

void print_disk_summary(const char* tag, const DiskRun& r, const SolveFlags& f) {
  std::printf("[%s] n=%d grid=%dx%d rmax=%.3f fit(r=%.3f deg=%d)\n", tag, r.sol.smooth->n(), f.nr,
              f.ntheta, f.rmax, f.fit_radius, f.fit_degree);
  std::printf("[%s] inf D=%.6e  inf Delta=%.6e  effective delta^2=%.6e\n", tag,
              r.sol.diagnostics.delta_hat_sq, r.sol.diagnostics.inf_Delta,
              r.sol.diagnostics.effective_delta_sq);
  std::printf("[%s] residual smooth r1=%.3e r2=%.3e\n", tag, r.sol.smooth_residuals.r1,
              r.sol.smooth_residuals.r2);
  std::printf("[%s] residual holo   r1=%.3e r2=%.3e\n", tag, r.sol.holo_residuals.r1,
              r.sol.holo_residuals.r2);
  std::printf("[%s] residual fit    r1=%.3e r2=%.3e\n", tag, r.sol.fit_residuals.r1,
              r.sol.fit_residuals.r2);
  std::printf("[%s] dbar identities max=%.3e  cancellation dh=%.3e dk=%.3e tsum=%.3e\n", tag,
              r.dbar_identities, r.cancellation.dh, r.cancellation.dk, r.cancellation.tsum);
  std::printf("[%s] holomorphy proxy=%.3e (fd step %.3e)\n", tag, r.holomorphy, r.fd_step);
}

void check_tolerance(const SolveFlags& f, const corona::ResidualPair& assembled) {
  if (f.tol > 0.0 && (assembled.r1 > f.tol || assembled.r2 > f.tol)) {
    std::ostringstream os;
    os << "assembled residual (" << assembled.r1 << ", " << assembled.r2 << ") exceeds tolerance "
       << f.tol;
    throw corona::ToleranceFailure(os.str());
  }
}

int run_solve_disk(const SolveFlags& f) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string input = corona::read_text_file(f.in);
  if (corona::peek_problem_kind(input) != corona::ProblemKind::Disk)
    throw corona::InvalidInput("solve-disk expects a disk problem (kind: \"disk\")");
  const corona::DiskCoronaProblem p = corona::parse_disk_problem(input);
  const DiskRun r = run_disk_pipeline(p, f);

  Json rep = corona::report_envelope("solve-disk", solve_config_json(f), input);
  rep.update(disk_report_body(r));

  Json sol;
  sol["kind"] = "disk-solution";
  sol["n"] = p.n;
  sol["fit"] = Json{{"radius", f.fit_radius}, {"degree", f.fit_degree}, {"samples", f.fit_samples}};
  Json H = Json::array(), K = Json::array();
  for (const auto& s : r.sol.fit.H) H.push_back(series_json(s));
  for (const auto& s : r.sol.fit.K) K.push_back(series_json(s));
  sol["H"] = std::move(H);
  sol["K"] = std::move(K);

  const corona::GridFn rs = smooth_residual_grid(*r.sol.smooth);
  const corona::GridFn rh =
      holo_residual_grid(*r.sol.holo, p, corona::make_grid({16, 64, solve_options(f).grid.r_max}));

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep["timings"] = Json{{"total_ms", ms}};

  write_out_file(f.out, "report.json", corona::canonical_json_text(rep));
  write_out_file(f.out, "solution.json", corona::canonical_json_text(sol));
  write_out_file(f.out, "residual_smooth.csv", csv_text(rs));
  write_out_file(f.out, "residual_holo.csv", csv_text(rh));

  print_disk_summary("solve-disk", r, f);
  std::printf("[solve-disk] wrote %s/report.json, solution.json, residual_smooth.csv, residual_holo.csv\n",
              f.out.c_str());
  check_tolerance(f, r.sol.holo_residuals);
  return 0;
}

int run_solve_ball(const SolveFlags& f, int ball_points, double ball_radius) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string input = corona::read_text_file(f.in);
  if (corona::peek_problem_kind(input) != corona::ProblemKind::Ball)
    throw corona::InvalidInput("solve-ball expects a ball problem (kind: \"ball\")");
  const corona::BallCoronaProblem p = corona::parse_ball_problem(input);

  const corona::DiskSolveOptions o = solve_options(f);
  corona::BallSolution ball = corona::solve_ball(p, o);

  // Re-run the extra disk verifications on the split problem for the report.
  DiskRun r;
  r.sol = std::move(ball.disk_solution);
  const auto id_pts = corona::random_disk_points(f.points, 0.9, f.seed + 11);
  r.dbar_identities = corona::verify_dbar_identities(*r.sol.smooth, id_pts, f.threads);
  const auto canc_pts = corona::random_disk_points(std::min(f.points, 50), 0.9, f.seed + 12);
  r.cancellation = corona::verify_dbar_cancellation(*r.sol.smooth, *r.sol.data, canc_pts, f.threads);
  r.fd_step = corona::kHolomorphyFdStep;
  const auto proxy_pts = corona::random_disk_points(20, 0.8, f.seed + 13);
  r.holomorphy = corona::holomorphy_proxy(*r.sol.holo, proxy_pts, r.fd_step, f.threads);

  const auto qpts = corona::sample_ball_points(ball_points, ball_radius, f.seed + 21);
  const corona::BallBezoutCheck bc = corona::verify_ball_bezout(p, ball.g, qpts);

  Json config = solve_config_json(f);
  config["ball_points"] = ball_points;
  config["ball_radius"] = ball_radius;
  Json rep = corona::report_envelope("solve-ball", config, input);
  rep["disk"] = disk_report_body(r);
  rep["ball"] = Json{{"sup_pointwise", bc.sup_pointwise}, {"coeff_residual", bc.coeff_residual}};

  Json sol;
  sol["kind"] = "ball-solution";
  sol["n"] = p.n;
  Json g = Json::array();
  for (const auto& s : ball.g) g.push_back(qseries_json(s));
  sol["g"] = std::move(g);

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  rep["timings"] = Json{{"total_ms", ms}};

  write_out_file(f.out, "report.json", corona::canonical_json_text(rep));
  write_out_file(f.out, "solution.json", corona::canonical_json_text(sol));

  print_disk_summary("solve-ball", r, f);
  std::printf("[solve-ball] star residual sup=%.3e coeff=%.3e (%d points, |q|<=%.2f)\n",
              bc.sup_pointwise, bc.coeff_residual, ball_points, ball_radius);
  std::printf("[solve-ball] wrote %s/report.json, solution.json\n", f.out.c_str());
  if (f.tol > 0.0 && bc.sup_pointwise > f.tol) {
    std::ostringstream os;
    os << "star residual " << bc.sup_pointwise << " exceeds tolerance " << f.tol;
    throw corona::ToleranceFailure(os.str());
  }
  return 0;
}

struct VerifyFlags {
  std::string in, solution, out;
  std::string side = "right";
  int points = 200;
  double radius = 0.6;
  std::uint64_t seed = 2026;
  double tol = 0.0;
  int threads = 1;
};

int run_verify(const VerifyFlags& f) {
  const std::string ptext = corona::read_text_file(f.in);
  const std::string stext = corona::read_text_file(f.solution);
  const Json sj = parse_json_text(stext, "solution");
  if (!sj.is_object() || !sj.contains("kind") || !sj["kind"].is_string())
    throw corona::InvalidInput("solution JSON needs a string \"kind\"");
  const std::string kind = sj["kind"].get<std::string>();
  if (f.side != "left" && f.side != "right")
    throw corona::InvalidInput("--side must be left or right");

  Json rep_body;
  double worst = 0.0;
  if (kind == "disk-solution") {
    if (corona::peek_problem_kind(ptext) != corona::ProblemKind::Disk)
      throw corona::InvalidInput("disk solution given, but the problem is not a disk problem");
    const corona::DiskCoronaProblem p = corona::parse_disk_problem(ptext);
    if (!sj.contains("H") || !sj.contains("K") || !sj["H"].is_array() || !sj["K"].is_array() ||
        sj["H"].size() != static_cast<std::size_t>(p.n) ||
        sj["K"].size() != static_cast<std::size_t>(p.n))
      throw corona::InvalidInput("disk solution needs H and K arrays matching the problem size");
    std::vector<corona::CSeries> H, K;
    for (const auto& a : sj["H"]) H.push_back(series_from_json(a));
    for (const auto& a : sj["K"]) K.push_back(series_from_json(a));
    const auto pts = corona::random_disk_points(f.points, f.radius, f.seed);
    const corona::ResidualPair r = corona::bezout_residuals(
        corona::make_series_evaluator(std::move(H), std::move(K)), p, pts, f.threads);
    std::printf("[verify] disk n=%d points=%d radius=%.2f\n", p.n, f.points, f.radius);
    std::printf("[verify] residual r1=%.3e r2=%.3e\n", r.r1, r.r2);
    rep_body["residuals"] = residual_json(r);
    worst = std::max(r.r1, r.r2);
  } else if (kind == "ball-solution") {
    if (corona::peek_problem_kind(ptext) != corona::ProblemKind::Ball)
      throw corona::InvalidInput("ball solution given, but the problem is not a ball problem");
    const corona::BallCoronaProblem p = corona::parse_ball_problem(ptext);
    if (!sj.contains("g") || !sj["g"].is_array() ||
        sj["g"].size() != static_cast<std::size_t>(p.n))
      throw corona::InvalidInput("ball solution needs a g array matching the problem size");
    std::vector<corona::QSeries> g;
    for (const auto& a : sj["g"]) g.push_back(qseries_from_json(a));
    const auto pts = corona::sample_ball_points(f.points, f.radius, f.seed);
    const corona::BallBezoutCheck bc =
        corona::verify_ball_bezout(p, g, pts, /*left_product=*/f.side == "left");
    std::printf("[verify] ball n=%d points=%d radius=%.2f side=%s\n", p.n, f.points, f.radius,
                f.side.c_str());
    std::printf("[verify] star residual sup=%.3e coeff=%.3e\n", bc.sup_pointwise,
                bc.coeff_residual);
    rep_body["residuals"] =
        Json{{"sup_pointwise", bc.sup_pointwise}, {"coeff_residual", bc.coeff_residual}};
    worst = std::max(bc.sup_pointwise, bc.coeff_residual);
  } else {
    throw corona::InvalidInput("unknown solution kind: " + kind);
  }

  if (!f.out.empty()) {
    Json config;
    config["points"] = f.points;
    config["radius"] = f.radius;
    config["seed"] = f.seed;
    config["side"] = f.side;
    Json rep = corona::report_envelope("verify", config, ptext + stext);
    rep.update(rep_body);
    corona::write_text_file(f.out, corona::canonical_json_text(rep));
    std::printf("[verify] wrote %s\n", f.out.c_str());
  }
  if (f.tol > 0.0 && worst > f.tol) {
    std::ostringstream os;
    os << "residual " << worst << " exceeds tolerance " << f.tol;
    throw corona::ToleranceFailure(os.str());
  }
  return 0;
}

struct GenFlags {
  std::string kind = "disk";
  int n = 2;
  double delta = 0.5;
  int degree = 8;
  std::uint64_t seed = 1;
  std::string out;
};

int run_gen(const GenFlags& f) {
  std::string text;
  if (f.kind == "disk") {
    text = corona::to_json_text(corona::generate_disk_problem(f.n, f.delta, f.degree, f.seed));
  } else if (f.kind == "ball") {
    text = corona::to_json_text(corona::generate_ball_problem(f.n, f.delta, f.degree, f.seed));
  } else {
    throw corona::InvalidInput("--kind must be disk or ball");
  }
  if (f.out.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    corona::write_text_file(f.out, text);
    std::printf("[gen] wrote %s (kind=%s n=%d delta=%.3f degree=%d seed=%" PRIu64 ")\n",
                f.out.c_str(), f.kind.c_str(), f.n, f.delta, f.degree, f.seed);
  }
  return 0;
}

int run_symbolic_check(int n) {
  const std::vector<corona::sym::IdentityCheck> checks = corona::sym::run_symbolic_checks(n);
  bool all = true;
  for (const auto& c : checks) {
    std::printf("%-26s %s  products=%zu residual-terms=%zu\n", c.name.c_str(),
                c.pass ? "PASS" : "FAIL", c.raw_products, c.residual_terms);
    all = all && c.pass;
  }
  std::printf("[symbolic-check] n=%d: %zu/%zu identities hold\n", n,
              static_cast<std::size_t>(
                  std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.pass; })),
              checks.size());
  if (!all) throw corona::ToleranceFailure("symbolic identity check failed");
  return 0;
}

struct DbarFlags {
  int nr = 64;
  int ntheta = 256;
  double rmax = 0.995;
  int points = 200;
  double radius = 0.9;
  std::uint64_t seed = 2026;
  bool subdivide = false;
  std::string out;
};

int run_dbar_test(const DbarFlags& f) {
  const corona::DiskGridPtr grid = corona::make_grid({f.nr, f.ntheta, f.rmax});
  const corona::CauchyTransform ct(corona::GridFn(grid, Complex(1.0)), f.subdivide);
  const auto pts = corona::random_disk_points(f.points, f.radius, f.seed);
  double err = 0.0;
  for (const Complex& z : pts) err = std::max(err, std::abs(ct(z) - std::conj(z)));
  std::printf("[dbar-test] grid=%dx%d rmax=%.3f subdivide=%d points=%d radius=%.2f\n", f.nr,
              f.ntheta, f.rmax, f.subdivide ? 1 : 0, f.points, f.radius);
  std::printf("[dbar-test] max |T(1) - conj(z)| = %.6e\n", err);
  if (!f.out.empty()) {
    Json config;
    config["grid"] = Json{{"nr", f.nr}, {"ntheta", f.ntheta}, {"rmax", f.rmax}};
    config["points"] = f.points;
    config["radius"] = f.radius;
    config["seed"] = f.seed;
    config["subdivide"] = f.subdivide;
    Json rep = corona::report_envelope("dbar-test", config, "");
    rep["max_error"] = err;
    corona::write_text_file(f.out, corona::canonical_json_text(rep));
    std::printf("[dbar-test] wrote %s\n", f.out.c_str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corona-lab: constructive corona solver workbench"};
  app.set_version_flag("--version", corona::kVersion);
  app.require_subcommand(1);

  SolveFlags sd_flags;
  CLI::App* sd = app.add_subcommand("solve-disk", "solve a disk corona problem");
  add_solve_flags(sd, sd_flags);

  SolveFlags sb_flags;
  int ball_points = 500;
  double ball_radius = 0.6;
  CLI::App* sb = app.add_subcommand("solve-ball", "solve a ball corona problem on a slice");
  add_solve_flags(sb, sb_flags);
  sb->add_option("--ball-points", ball_points, "quaternion sample count for the star residual");
  sb->add_option("--ball-radius", ball_radius, "quaternion sample radius");

  VerifyFlags vf;
  CLI::App* vc = app.add_subcommand("verify", "check a stored solution against a stored problem");
  vc->add_option("--in", vf.in, "problem JSON")->required();
  vc->add_option("--solution", vf.solution, "solution JSON")->required();
  vc->add_option("--out", vf.out, "optional report JSON path");
  vc->add_option("--side", vf.side, "star product side for ball checks: right (f*g) or left (g*f)");
  vc->add_option("--points", vf.points, "sample point count");
  vc->add_option("--radius", vf.radius, "sample radius");
  vc->add_option("--seed", vf.seed, "sample seed");
  vc->add_option("--tol", vf.tol, "exit 4 when any residual exceeds this (0 = report only)");
  vc->add_option("--threads", vf.threads, "worker threads");

  GenFlags gf;
  CLI::App* gc = app.add_subcommand("gen", "generate a seeded well-conditioned problem");
  gc->add_option("--kind", gf.kind, "disk or ball");
  gc->add_option("--n", gf.n, "number of generators");
  gc->add_option("--delta", gf.delta, "target corona lower bound in (0, 0.999)");
  gc->add_option("--degree", gf.degree, "data polynomial degree");
  gc->add_option("--seed", gf.seed, "generator seed");
  gc->add_option("--out", gf.out, "output path (stdout when omitted)");

  int sym_n = 2;
  CLI::App* sc = app.add_subcommand("symbolic-check",
                                    "verify the identity schemes in exact integer arithmetic");
  sc->add_option("--n", sym_n, "number of generators (1..9; cost grows quickly)");

  DbarFlags df;
  CLI::App* dc = app.add_subcommand("dbar-test", "accuracy of the solid Cauchy transform on source 1");
  dc->add_option("--nr", df.nr, "radial quadrature cells");
  dc->add_option("--ntheta", df.ntheta, "angular quadrature cells");
  dc->add_option("--rmax", df.rmax, "outer grid radius");
  dc->add_option("--points", df.points, "probe point count");
  dc->add_option("--radius", df.radius, "probe radius");
  dc->add_option("--seed", df.seed, "probe seed");
  dc->add_flag("--subdivide", df.subdivide, "subdivide cells near the probe point");
  dc->add_option("--out", df.out, "optional report JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sd->parsed()) return run_solve_disk(sd_flags);
    if (sb->parsed()) return run_solve_ball(sb_flags, ball_points, ball_radius);
    if (vc->parsed()) return run_verify(vf);
    if (gc->parsed()) return run_gen(gf);
    if (sc->parsed()) return run_symbolic_check(sym_n);
    if (dc->parsed()) return run_dbar_test(df);
    return 2;
  } catch (const corona::InvalidInput& e) {
    std::fprintf(stderr, "error (invalid input): %s\n", e.what());
    return 2;
  } catch (const corona::CoronaViolation& e) {
    std::fprintf(stderr, "error (corona violation): %s\n", e.what());
    return 3;
  } catch (const corona::ToleranceFailure& e) {
    std::fprintf(stderr, "error (tolerance): %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
