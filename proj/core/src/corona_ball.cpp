#include "corona/corona_ball.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "corona/errors.hpp"

namespace corona {

DiskCoronaProblem split_problem(const BallCoronaProblem& p, const Frame& fr) {
  p.validate();
  DiskCoronaProblem d;
  d.n = p.n;
  d.delta = p.delta;
  d.F.reserve(p.f.size());
  d.G.reserve(p.f.size());
  for (const auto& f : p.f) {
    SplitSeries s = split(f, fr);
    d.F.push_back(std::move(s.F));
    d.G.push_back(std::move(s.G));
  }
  return d;
}

BallSolution solve_ball(const BallCoronaProblem& p, const DiskSolveOptions& opt) {
  p.validate();
  BallSolution out;
  out.frame = frame_for(Quaternion::e1());
  out.disk = split_problem(p, out.frame);
  out.disk_solution = solve_disk(out.disk, opt);
  out.g.reserve(static_cast<std::size_t>(p.n));
  for (int j = 0; j < p.n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    out.g.push_back(reassemble(out.disk_solution.fit.H[u], out.disk_solution.fit.K[u], out.frame));
  }
  return out;
}

BallBezoutCheck verify_ball_bezout(const BallCoronaProblem& p, const std::vector<QSeries>& g,
                                   const std::vector<Quaternion>& pts, bool left_product) {
  p.validate();
  if (g.size() != static_cast<std::size_t>(p.n))
    throw InvalidInput("verify_ball_bezout: solution count does not match n");

  BallBezoutCheck out;

  QSeries total;
  for (int j = 0; j < p.n; ++j) {
    const auto u = static_cast<std::size_t>(j);
    total += left_product ? star(g[u], p.f[u]) : star(p.f[u], g[u]);
  }
  for (int m = 0; m <= total.degree(); ++m) {
    Quaternion c = total.coefficient(m);
    if (m == 0) c -= Quaternion::one();
    out.coeff_residual = std::max(out.coeff_residual, abs(c));
  }

  for (const Quaternion& q : pts) {
    Quaternion sum = Quaternion::zero();
    for (int j = 0; j < p.n; ++j) {
      const auto u = static_cast<std::size_t>(j);
      sum += left_product ? star_eval_pointwise(g[u], p.f[u], q)
                          : star_eval_pointwise(p.f[u], g[u], q);
    }
    out.sup_pointwise = std::max(out.sup_pointwise, abs(sum - Quaternion::one()));
  }
  return out;
}

QSeries solve_one_generator(const QSeries& f, int degree, DiskGridPtr grid,
                            double* product_residual) {
  QSeries g = star_inverse(f, degree, std::move(grid));
  if (product_residual != nullptr) {
    const QSeries prod = star(f, g);
    double res = 0.0;
    for (int m = 0; m <= prod.degree(); ++m) {
      Quaternion c = prod.coefficient(m);
      if (m == 0) c -= Quaternion::one();
      res += abs(c);
    }
    *product_residual = res;
  }
  return g;
}

std::vector<Quaternion> sample_ball_points(int count, double radius, std::uint64_t seed) {
  if (count < 0) throw InvalidInput("sample_ball_points: negative count");
  if (!(radius > 0.0)) throw InvalidInput("sample_ball_points: radius must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Quaternion> pts;
  pts.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(pts.size()) < count) {
    const Quaternion q{unit(rng), unit(rng), unit(rng), unit(rng)};
    if (q.norm_sq() <= 1.0) pts.push_back(q * radius);
  }
  return pts;
}

std::vector<Quaternion> slice_grid_points(const DiskGridPtr& grid,
                                          const std::vector<Quaternion>& units) {
  if (!grid) throw InvalidInput("slice_grid_points: null grid");
  std::vector<Quaternion> pts;
  pts.reserve(units.size() * static_cast<std::size_t>(grid->size()));
  for (const Quaternion& I : units) {
    if (std::abs(I.real()) > 1e-12 || std::abs(I.norm() - 1.0) > 1e-12)
      throw InvalidInput("slice_grid_points: slice units must be pure and unit-length");
    for (int idx = 0; idx < grid->size(); ++idx) pts.push_back(embed(grid->node(idx), I));
  }
  return pts;
}

double min_corona_modulus(const BallCoronaProblem& p, const std::vector<Quaternion>& pts) {
  p.validate();
  if (pts.empty()) throw InvalidInput("min_corona_modulus: no sample points");
  double inf = std::numeric_limits<double>::infinity();
  for (const Quaternion& q : pts) {
    double d = 0.0;
    for (const auto& f : p.f) d += f(q).norm_sq();
    inf = std::min(inf, d);
  }
  return inf;
}

BallCoronaProblem counterexample_problem() {
  BallCoronaProblem p;
  p.n = 2;
  p.delta = 0.0;
  p.f.push_back(QSeries({Quaternion::e1() * -0.5, Quaternion::one()}));
  p.f.push_back(QSeries({Quaternion::e3() * -0.5, Quaternion::e2()}));
  return p;
}

std::vector<QSeries> counterexample_left_partners() {
  return {QSeries::constant(Quaternion::e1()), QSeries::constant(Quaternion::e3())};
}

}  // namespace corona
