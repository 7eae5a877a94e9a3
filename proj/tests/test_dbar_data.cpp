#include <doctest.h>

#include <array>
#include <cmath>
#include <memory>
#include <vector>

#include "corona/corona_disk.hpp"
#include "corona/grid.hpp"
#include "corona/problem.hpp"

using corona::Complex;
using corona::DbarData;
using corona::DiskCoronaProblem;
using corona::SmoothSolution;
using corona::WPointEval;

namespace {

corona::DiskGridPtr coarse_grid() { return corona::make_grid({16, 64, 0.995}); }

struct Columns {
  // Per index i (1-based): col_h[i] = (h_i, k_i, dbar h_i),
  // col_k[i] = (-khat_i, hhat_i, -dbar khat_i), evaluated at one point.
  std::vector<std::array<Complex, 3>> col_h, col_k;
};

Columns eval_columns(const SmoothSolution& s, Complex z) {
  WPointEval ev(z);
  Columns c;
  c.col_h.resize(static_cast<size_t>(s.n()) + 1);
  c.col_k.resize(static_cast<size_t>(s.n()) + 1);
  for (int i = 1; i <= s.n(); ++i) {
    const corona::WEval h = ev(s.h(i)), k = ev(s.k(i));
    const corona::WEval hh = ev(s.hhat(i)), kh = ev(s.khat(i));
    c.col_h[static_cast<size_t>(i)] = {h.v, k.v, h.dzbar};
    c.col_k[static_cast<size_t>(i)] = {-kh.v, hh.v, -kh.dzbar};
  }
  return c;
}

Complex det3(const std::array<Complex, 3>& c1, const std::array<Complex, 3>& c2,
             const std::array<Complex, 3>& c3) {
  return c1[0] * (c2[1] * c3[2] - c3[1] * c2[2]) - c2[0] * (c1[1] * c3[2] - c3[1] * c1[2]) +
         c3[0] * (c1[1] * c2[2] - c2[1] * c1[2]);
}

DiskCoronaProblem fixture3() { return corona::generate_disk_problem(3, 0.4, 3, 9); }

}  // namespace

TEST_CASE("dbar data equals the signed column determinants") {
  const auto grid = coarse_grid();
  const SmoothSolution s(fixture3(), grid);
  const DbarData data(s);
  REQUIRE(data.n() == 3);
  for (const Complex z : corona::random_disk_points(6, 0.85, 601)) {
    const Columns c = eval_columns(s, z);
    const auto scale = [&](Complex d) { return std::max(1.0, std::abs(d)); };
    for (int r = 1; r <= 3; ++r) {
      for (int ss = 1; ss <= 3; ++ss) {
        for (int j = 1; j <= 3; ++j) {
          const Complex b_ref = (ss == j) ? Complex(0.0)
                                          : det3(c.col_k[static_cast<size_t>(r)],
                                                 c.col_h[static_cast<size_t>(ss)],
                                                 c.col_h[static_cast<size_t>(j)]);
          const Complex g_ref = (r == ss) ? Complex(0.0)
                                          : -det3(c.col_k[static_cast<size_t>(r)],
                                                  c.col_k[static_cast<size_t>(ss)],
                                                  c.col_h[static_cast<size_t>(j)]);
          CHECK(std::abs(data.beta(r, ss, j).value(z) - b_ref) < 1e-9 * scale(b_ref));
          CHECK(std::abs(data.gamma(r, ss, j).value(z) - g_ref) < 1e-9 * scale(g_ref));
        }
      }
    }
    const Complex e_ref = -det3(c.col_h[1], c.col_h[2], c.col_h[3]);
    const Complex t_ref = -det3(c.col_k[1], c.col_k[2], c.col_k[3]);
    CHECK(std::abs(data.eta(1, 2, 3).value(z) - e_ref) < 1e-9 * std::max(1.0, std::abs(e_ref)));
    CHECK(std::abs(data.eta_tilde(1, 2, 3).value(z) - t_ref) <
          1e-9 * std::max(1.0, std::abs(t_ref)));
  }
}

TEST_CASE("signed access realizes the alternations exactly") {
  const SmoothSolution s(fixture3(), coarse_grid());
  const DbarData data(s);
  const Complex z(0.42, 0.17);
  WPointEval ev(z);
  // Odd swaps negate...
  CHECK(std::abs(ev(data.beta(2, 1, 3)).v + ev(data.beta(2, 3, 1)).v) == 0.0);
  CHECK(std::abs(ev(data.gamma(1, 3, 2)).v + ev(data.gamma(3, 1, 2)).v) == 0.0);
  CHECK(std::abs(ev(data.eta(2, 1, 3)).v + ev(data.eta(1, 2, 3)).v) == 0.0);
  CHECK(std::abs(ev(data.eta_tilde(1, 3, 2)).v + ev(data.eta_tilde(1, 2, 3)).v) == 0.0);
  // ...and even permutations agree.
  CHECK(std::abs(ev(data.eta(3, 1, 2)).v - ev(data.eta(1, 2, 3)).v) == 0.0);
  CHECK(std::abs(ev(data.eta_tilde(2, 3, 1)).v - ev(data.eta_tilde(1, 2, 3)).v) == 0.0);
  // Repeated indices collapse to the zero expression.
  CHECK(std::abs(ev(data.beta(1, 2, 2)).v) == 0.0);
  CHECK(std::abs(ev(data.gamma(2, 2, 1)).v) == 0.0);
  CHECK(std::abs(ev(data.eta(1, 1, 3)).v) == 0.0);
  CHECK(std::abs(ev(data.eta_tilde(3, 2, 3)).v) == 0.0);
}

TEST_CASE("canonical entry layout matches the correction-field layout") {
  const SmoothSolution s2(corona::generate_disk_problem(2, 0.5, 4, 7), coarse_grid());
  const DbarData d2(s2);
  CHECK(d2.entries().size() == 4);  // 2 beta + 2 gamma, no triples at n = 2

  const SmoothSolution s3(fixture3(), coarse_grid());
  const DbarData d3(s3);
  const auto canon = corona::CorrectionField::canonical_entries(3);
  REQUIRE(d3.entries().size() == canon.size());
  CHECK(canon.size() == 20);  // 9 beta + 9 gamma + 1 eta + 1 eta~
  const char fam_codes[4] = {'b', 'g', 'e', 't'};
  for (size_t i = 0; i < canon.size(); ++i) {
    const DbarData::Entry& e = d3.entries()[i];
    CHECK(e.family == fam_codes[canon[i][0]]);
    CHECK(e.r == canon[i][1]);
    CHECK(e.s == canon[i][2]);
    CHECK(e.j == canon[i][3]);
  }
}

TEST_CASE("the smooth solution satisfies the conditional dbar identities") {
  const DiskCoronaProblem p = corona::generate_disk_problem(2, 0.5, 4, 7);
  const SmoothSolution s(p, coarse_grid());
  const auto pts = corona::random_disk_points(40, 0.9, 602);
  CHECK(corona::verify_dbar_identities(s, pts) < 1e-9);
}

TEST_CASE("correction data assembles to exactly the dbar defect") {
  const DiskCoronaProblem p = corona::generate_disk_problem(2, 0.5, 4, 7);
  const SmoothSolution s(p, coarse_grid());
  const DbarData data(s);
  const auto pts = corona::random_disk_points(30, 0.9, 603);
  const corona::DbarCancellation c = corona::verify_dbar_cancellation(s, data, pts);
  CHECK(c.dh < 1e-8);
  CHECK(c.dk < 1e-8);
  CHECK(c.tsum < 1e-10);

  // Three-generator case: the eta and eta-tilde blocks are empty below
  // n = 3, so only this exercises the fully alternating families (and in
  // particular the minus sign on the reflected eta-tilde block).
  const SmoothSolution s3(fixture3(), coarse_grid());
  const DbarData data3(s3);
  const corona::DbarCancellation c3 = corona::verify_dbar_cancellation(s3, data3, pts);
  CHECK(c3.dh < 1e-8);
  CHECK(c3.dk < 1e-8);
  CHECK(c3.tsum < 1e-10);
}
