#include <doctest.h>

#include <cmath>
#include <complex>

#include "corona/errors.hpp"
#include "corona/grid.hpp"
#include "corona/problem.hpp"
#include "corona/quaternion.hpp"

using corona::BallCoronaProblem;
using corona::Complex;
using corona::CSeries;
using corona::DiskCoronaProblem;
using corona::InvalidInput;
using corona::ProblemKind;
using corona::QSeries;
using corona::Quaternion;

TEST_CASE("disk problem JSON round trip preserves coefficients") {
  DiskCoronaProblem p;
  p.n = 2;
  p.F = {CSeries({Complex(0.5, -0.25), Complex(0.0, 0.125)}), CSeries::constant(Complex(0.375))};
  p.G = {CSeries::constant(Complex(0.0)), CSeries({Complex(0.0), Complex(0.25, 0.25)})};
  p.delta = 0.4;
  const std::string text = corona::to_json_text(p);
  CHECK(corona::peek_problem_kind(text) == ProblemKind::Disk);
  const DiskCoronaProblem q = corona::parse_disk_problem(text);
  CHECK(q.n == 2);
  CHECK(q.delta == doctest::Approx(0.4));
  for (int j = 0; j < 2; ++j) {
    CHECK(q.F[j].coefficients() == p.F[j].coefficients());
    CHECK(q.G[j].coefficients() == p.G[j].coefficients());
  }
}

TEST_CASE("ball problem JSON round trip preserves quaternion coefficients") {
  BallCoronaProblem p;
  p.n = 1;
  p.f = {QSeries({Quaternion(0.5, -0.125, 0.25, 0.0), Quaternion(0.0, 0.0625, 0.0, -0.25)})};
  const std::string text = corona::to_json_text(p);
  CHECK(corona::peek_problem_kind(text) == ProblemKind::Ball);
  const BallCoronaProblem q = corona::parse_ball_problem(text);
  CHECK(q.n == 1);
  CHECK(q.f[0].coefficients() == p.f[0].coefficients());
}

TEST_CASE("malformed problem text is rejected") {
  CHECK_THROWS_AS(corona::peek_problem_kind("{\"kind\":\"torus\"}"), InvalidInput);
  CHECK_THROWS_AS(corona::peek_problem_kind("not json"), InvalidInput);
  CHECK_THROWS_AS(corona::parse_disk_problem("{\"kind\":\"disk\",\"n\":1,\"F\":[],\"G\":[]}"),
                  InvalidInput);
}

TEST_CASE("validate rejects inconsistent shapes") {
  DiskCoronaProblem p;
  p.n = 2;
  p.F = {CSeries::constant(Complex(0.5))};  // one series short
  p.G = {CSeries::constant(Complex(0.0)), CSeries::constant(Complex(0.0))};
  CHECK_THROWS_AS(p.validate(), InvalidInput);

  BallCoronaProblem b;
  b.n = 0;
  CHECK_THROWS_AS(b.validate(), InvalidInput);
}

TEST_CASE("generated disk problems honor their guarantees") {
  for (const std::uint64_t seed : {7ULL, 8ULL, 9ULL}) {
    const DiskCoronaProblem p = corona::generate_disk_problem(2, 0.5, 4, seed);
    p.validate();
    CHECK(p.n == 2);
    CHECK(p.delta == doctest::Approx(0.5));

    // l1 norms certify the sup/inf bounds everywhere on the closed disk.
    double sup_bound = 0.0;
    for (int j = 0; j < p.n; ++j) {
      sup_bound += p.F[j].l1_norm() * p.F[j].l1_norm() + p.G[j].l1_norm() * p.G[j].l1_norm();
    }
    CHECK(sup_bound <= 1.0 + 1e-12);

    const Complex c0 = p.F[0].coefficient(0);
    double tail = p.F[0].l1_norm() - std::abs(c0);
    CHECK(std::abs(c0) - tail >= 0.5 - 1e-12);

    // Spot check the normalization and nondegeneracy on a grid.
    const auto grid = corona::make_grid({24, 96, 0.995});
    double sup_d = 0.0, inf_d = 1e300;
    for (const Complex z : grid->nodes()) {
      double d = 0.0;
      for (int j = 0; j < p.n; ++j) d += std::norm(p.F[j](z)) + std::norm(p.G[j](z));
      sup_d = std::max(sup_d, d);
      inf_d = std::min(inf_d, d);
    }
    CHECK(sup_d <= 1.0 + 1e-12);
    CHECK(inf_d >= 0.25 - 1e-12);
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const DiskCoronaProblem a = corona::generate_disk_problem(3, 0.35, 3, 123);
  const DiskCoronaProblem b = corona::generate_disk_problem(3, 0.35, 3, 123);
  const DiskCoronaProblem c = corona::generate_disk_problem(3, 0.35, 3, 124);
  CHECK(corona::to_json_text(a) == corona::to_json_text(b));
  CHECK(corona::to_json_text(a) != corona::to_json_text(c));
}

TEST_CASE("infeasible generator parameters are rejected") {
  CHECK_THROWS_AS(corona::generate_disk_problem(1, 0.0, 2, 1), InvalidInput);
  CHECK_THROWS_AS(corona::generate_disk_problem(1, 1.2, 2, 1), InvalidInput);
  CHECK_THROWS_AS(corona::generate_disk_problem(0, 0.5, 2, 1), InvalidInput);
  CHECK_THROWS_AS(corona::generate_disk_problem(1, 0.5, -1, 1), InvalidInput);
}

TEST_CASE("ball generator reassembles the disk data on the e1 slice") {
  const BallCoronaProblem b = corona::generate_ball_problem(2, 0.45, 3, 21);
  b.validate();
  CHECK(b.n == 2);
  CHECK(b.delta == doctest::Approx(0.45));
  const DiskCoronaProblem d = corona::generate_disk_problem(2, 0.45, 3, 21);
  // On the e1 slice each f_j evaluates to F_j(z) + G_j(z) e2.
  const Complex z(0.3, 0.4);
  const Quaternion q = corona::embed(z, Quaternion::e1());
  for (int j = 0; j < 2; ++j) {
    const Quaternion v = b.f[j](q);
    const Complex fz = d.F[j](z), gz = d.G[j](z);
    CHECK(std::abs(v.x0 - fz.real()) < 1e-13);
    CHECK(std::abs(v.x1 - fz.imag()) < 1e-13);
    CHECK(std::abs(v.x2 - gz.real()) < 1e-13);
    CHECK(std::abs(v.x3 - gz.imag()) < 1e-13);
  }
}
