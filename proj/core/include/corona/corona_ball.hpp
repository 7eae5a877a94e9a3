#pragma once

#include <cstdint>
#include <vector>

#include "corona/corona_disk.hpp"
#include "corona/slice_regular.hpp"

/// Ball-side corona solver. A quaternionic corona problem with slice data
/// f_1..f_n is split on one slice into complex pairs (F_j, G_j), solved
/// there, and the disk solutions (H_j, K_j) are reassembled into
/// quaternionic series g_j with
///   sum_j f_j * g_j = 1   (star product, data on the left).
/// The splitting identity behind this:
///   split(f * g) = (F_f F_g - G_f Ghat_g,  F_f G_g + G_f Fhat_g),
/// so the two components of "sum = 1" are exactly the two coupled disk
/// Bezout equations solved by the disk pipeline.
namespace corona {

/// Component-wise slice decomposition of a ball problem in the frame fr.
DiskCoronaProblem split_problem(const BallCoronaProblem& p, const Frame& fr);

struct BallSolution {
  DiskCoronaProblem disk;       // the split problem that was solved
  DiskSolution disk_solution;   // full disk pipeline output
  std::vector<QSeries> g;       // reassembled quaternionic solutions
  Frame frame;                  // slice frame used for split/reassemble
};

/// Split on the e1 slice, run the disk pipeline, reassemble the fitted
/// Taylor solutions. Throws CoronaViolation when the data fail the corona
/// condition at grid resolution.
BallSolution solve_ball(const BallCoronaProblem& p, const DiskSolveOptions& opt = {});

struct BallBezoutCheck {
  double sup_pointwise = 0.0;   // sup over sample points of |sum_j product - 1|
  double coeff_residual = 0.0;  // max coefficient deviation of sum_j product from 1
};

/// Checks sum_j f_j * g_j = 1 both as truncated series (coefficient level)
/// and pointwise via conjugation-evaluation at the sample quaternions.
/// With left_product the roles flip: sum_j g_j * f_j (solutions on the
/// left), the combination closed by constant solutions.
BallBezoutCheck verify_ball_bezout(const BallCoronaProblem& p, const std::vector<QSeries>& g,
                                   const std::vector<Quaternion>& pts,
                                   bool left_product = false);

/// n = 1: the star inverse solves the one-generator problem outright.
/// Writes the l1 residual of f * g - 1 to *product_residual when given.
QSeries solve_one_generator(const QSeries& f, int degree, DiskGridPtr grid = nullptr,
                            double* product_residual = nullptr);

/// Deterministic samples, uniform in the closed ball |q| <= radius.
std::vector<Quaternion> sample_ball_points(int count, double radius, std::uint64_t seed);

/// Every grid node embedded into each of the given slices: q = x + y*I for
/// node z = x + iy. The units must be pure and unit-length.
std::vector<Quaternion> slice_grid_points(const DiskGridPtr& grid,
                                          const std::vector<Quaternion>& units);

/// min over the points of sum_j |f_j(q)|^2: the corona lower bound the
/// data actually achieve on the sample set.
double min_corona_modulus(const BallCoronaProblem& p, const std::vector<Quaternion>& pts);

/// Two generators with an exact common zero at q = e1/2 inside the ball:
///   f_1 = q - e1/2,   f_2 = q*e2 - e3/2  (= f_1 with every coefficient
/// right-multiplied by e2). Constant LEFT partners g_1 = e1, g_2 = e3
/// give g_1 * f_1 + g_2 * f_2 = 1 exactly, so the one-sided identity
/// carries no corona information: the corona condition itself fails.
BallCoronaProblem counterexample_problem();
std::vector<QSeries> counterexample_left_partners();

}  // namespace corona
