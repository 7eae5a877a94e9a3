#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "corona/corona_disk.hpp"
#include "corona/grid.hpp"
#include "corona/problem.hpp"
#include "corona/wirtinger.hpp"

using corona::Complex;
using corona::CorrectionField;
using corona::CSeries;
using corona::DbarData;
using corona::DiskCoronaProblem;
using corona::HoloSolution;
using corona::SmoothSolution;

namespace {

corona::DiskGridPtr coarse_grid() { return corona::make_grid({24, 96, 0.995}); }

DiskCoronaProblem fixture2() { return corona::generate_disk_problem(2, 0.5, 4, 7); }

/// A problem whose smooth solution is already holomorphic: constant F, no G.
/// Then h = 1/F identically and every correction datum vanishes.
DiskCoronaProblem constant_problem() {
  DiskCoronaProblem p;
  p.n = 1;
  p.F = {CSeries::constant(Complex(0.6))};
  p.G = {CSeries::constant(Complex(0.0))};
  return p;
}

}  // namespace

TEST_CASE("Bezout residuals are invariant under arbitrary correction fields") {
  // The corrected solution solves the Bezout equations identically in the
  // field values; only holomorphy depends on solving the dbar equations.
  // Feed deliberately wrong fields and watch the residuals stay at roundoff.
  const DiskCoronaProblem p = fixture2();
  const auto s = std::make_shared<const SmoothSolution>(p, coarse_grid());
  const auto canon = CorrectionField::canonical_entries(2);
  REQUIRE(canon.size() == 4);
  std::vector<CorrectionField::PointFn> junk;
  for (size_t i = 0; i < canon.size(); ++i) {
    const double a = 0.3 + 0.2 * static_cast<double>(i);
    junk.push_back([a](Complex z) {
      return Complex(a, -0.1) + Complex(0.5, a) * z + Complex(-0.4, 0.7) * std::conj(z) * z;
    });
  }
  const auto corr = std::make_shared<const CorrectionField>(2, std::move(junk));
  const auto hs = std::make_shared<const HoloSolution>(s, corr);
  const auto pts = corona::random_disk_points(40, 0.9, 701);
  const corona::ResidualPair r = corona::bezout_residuals(corona::make_holo_evaluator(hs), p, pts);
  CHECK(r.r1 < 1e-8);
  CHECK(r.r2 < 1e-8);

  // Same invariance with three generators, where the fully alternating
  // eta and eta-tilde blocks first appear in the assembly.
  const DiskCoronaProblem p3 = corona::generate_disk_problem(3, 0.4, 3, 9);
  const auto s3 = std::make_shared<const SmoothSolution>(p3, coarse_grid());
  std::vector<CorrectionField::PointFn> junk3;
  for (size_t i = 0; i < CorrectionField::canonical_entries(3).size(); ++i) {
    const double a = 0.1 + 0.07 * static_cast<double>(i);
    junk3.push_back([a](Complex z) {
      return Complex(-a, 0.2) + Complex(a, -0.3) * std::conj(z) + Complex(0.2, a) * z * z;
    });
  }
  const auto corr3 = std::make_shared<const CorrectionField>(3, std::move(junk3));
  const auto hs3 = std::make_shared<const HoloSolution>(s3, corr3);
  const corona::ResidualPair r3 =
      corona::bezout_residuals(corona::make_holo_evaluator(hs3), p3, pts);
  CHECK(r3.r1 < 1e-8);
  CHECK(r3.r2 < 1e-8);
}

TEST_CASE("single-pair corrections are empty and leave the smooth solution unchanged") {
  const DiskCoronaProblem p = corona::generate_disk_problem(1, 0.5, 3, 4);
  const auto grid = coarse_grid();
  const auto s = std::make_shared<const SmoothSolution>(p, grid);
  CHECK(CorrectionField::canonical_entries(1).empty());
  const auto corr = std::make_shared<const CorrectionField>(1, std::vector<CorrectionField::PointFn>{});
  const HoloSolution hs(s, corr);
  for (const Complex z : corona::random_disk_points(15, 0.9, 702)) {
    corona::WPointEval ev(z);
    CHECK(std::abs(hs.H(1, z) - ev(s->h(1)).v) < 1e-15);
    CHECK(std::abs(hs.K(1, z) - ev(s->k(1)).v) < 1e-15);
  }
}

TEST_CASE("transform-backed corrections keep the Bezout residuals at roundoff") {
  const DiskCoronaProblem p = fixture2();
  const auto grid = coarse_grid();
  const auto s = std::make_shared<const SmoothSolution>(p, grid);
  const DbarData data(*s);
  const auto corr = std::make_shared<const CorrectionField>(data, grid);
  const auto hs = std::make_shared<const HoloSolution>(s, corr);
  const auto pts = corona::random_disk_points(40, 0.9, 703);
  const corona::ResidualPair r = corona::bezout_residuals(corona::make_holo_evaluator(hs), p, pts);
  CHECK(r.r1 < 1e-8);
  CHECK(r.r2 < 1e-8);
}

TEST_CASE("an exactly holomorphic solution fits to its Taylor coefficients") {
  const auto grid = coarse_grid();
  const auto s = std::make_shared<const SmoothSolution>(constant_problem(), grid);
  const auto corr = std::make_shared<const CorrectionField>(1, std::vector<CorrectionField::PointFn>{});
  const auto hs = std::make_shared<const HoloSolution>(s, corr);

  // H is the constant 1/0.6, K vanishes; the circle-moment fit must recover
  // exactly that polynomial.
  const HoloSolution::Fit fit = hs->fit(0.8, 8, 64);
  REQUIRE(fit.H.size() == 1);
  CHECK(std::abs(fit.H[0].coefficient(0) - Complex(1.0 / 0.6)) < 1e-13);
  double tail = 0.0;
  for (int m = 1; m <= fit.H[0].degree(); ++m) tail += std::abs(fit.H[0].coefficient(m));
  CHECK(tail < 1e-12);
  CHECK(fit.K[0].l1_norm() < 1e-12);
  CHECK(fit.max_abs_H == doctest::Approx(1.0 / 0.6).epsilon(1e-12));

  // And the finite-difference holomorphy proxy sees a constant: zero defect.
  const auto pts = corona::random_disk_points(20, 0.8, 704);
  CHECK(corona::holomorphy_proxy(*hs, pts, corona::kHolomorphyFdStep) < 1e-12);

  // The fitted series solve the system to the same accuracy.
  const auto eval = corona::make_series_evaluator(fit.H, fit.K);
  const corona::ResidualPair r = corona::bezout_residuals(eval, constant_problem(), pts);
  CHECK(r.r1 < 1e-12);
  CHECK(r.r2 < 1e-12);
}

TEST_CASE("smooth-stage diagnostics carry the measured certificates and bounds") {
  const DiskCoronaProblem p = fixture2();
  const SmoothSolution s(p, coarse_grid());
  const DbarData data(s);
  const corona::DiskDiagnostics d = corona::diagnose_smooth(s, &data);
  CHECK(d.delta_hat_sq >= 0.25);
  CHECK(d.inf_Delta > 0.0);
  CHECK(d.effective_delta_sq == doctest::Approx(0.25));
  CHECK(d.c_of_delta_n == doctest::Approx(corona::c_delta_n(0.5, 2)));
  CHECK(d.bound_hk == doctest::Approx(360.0));  // 10 * (1/0.25 + 2/0.0625)
  CHECK(d.bound_HK == doctest::Approx(100.0 * 38052.0));
  REQUIRE(d.h_norms.size() == 2);
  REQUIRE(d.k_norms.size() == 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(d.h_norms[static_cast<size_t>(j)] <= d.bound_hk);
    CHECK(d.k_norms[static_cast<size_t>(j)] <= d.bound_hk);
  }
  CHECK(d.wolff_max.b1 >= 0.0);
  CHECK(d.wolff_max.b3 > 0.0);

  // Without dbar data the certificate block is still filled.
  const corona::DiskDiagnostics d0 = corona::diagnose_smooth(s, nullptr);
  CHECK(d0.effective_delta_sq == doctest::Approx(0.25));
  CHECK(d0.wolff_max.b1 == 0.0);
}

TEST_CASE("expression-backed finiteness estimates vanish for constant sources") {
  const auto grid = coarse_grid();
  const corona::WolffEstimates w =
      corona::wolff_for_expr(corona::WExpr::constant(Complex(0.0, 2.0)), grid);
  CHECK(w.b1 > 0.0);
  CHECK(w.b2 < 1e-9);
  CHECK(w.b3 < 1e-9);
}
