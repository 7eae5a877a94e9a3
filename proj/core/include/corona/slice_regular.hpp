#pragma once

#include "corona/grid.hpp"
#include "corona/quaternion.hpp"
#include "corona/series.hpp"

namespace corona {

/// Star (convolution) product of truncated quaternionic series:
///   (f * g)_n = sum_k f_k g_{n-k}
/// with each product taken in the order f-coefficient then g-coefficient.
/// This is the unique product that extends polynomial multiplication while
/// keeping powers of the variable on the left.
QSeries star(const QSeries& f, const QSeries& g);

/// Pointwise star evaluation without expanding coefficients:
///   (f*g)(q) = f(q) * g(f(q)^{-1} q f(q))   when f(q) != 0,
///   (f*g)(q) = 0                            when |f(q)| < zero_tol.
/// The inner conjugation keeps |argument| = |q|, so g is evaluated inside
/// the same ball.
Quaternion star_eval_pointwise(const QSeries& f, const QSeries& g, const Quaternion& q,
                               double zero_tol = 1e-14);

/// Regular conjugate: coefficient-wise quaternion conjugation.
QSeries regular_conjugate(const QSeries& f);

/// Symmetrization f * (regular conjugate of f). Its coefficients are real up
/// to roundoff; the real parts are returned as a CSeries and the largest
/// leftover vector-part magnitude is written to *max_vector_part when given.
CSeries symmetrization(const QSeries& f, double* max_vector_part = nullptr);

/// Star inverse truncated at `deg`: (symmetrization)^{-1} times the regular
/// conjugate. Before inverting, |symmetrization| is scanned on `grid`
/// (defaults to the standard 64x256 grid) and values below `zero_threshold`
/// raise CoronaViolation: the function has a zero (or a near-zero) inside
/// the ball and no bounded star inverse.
QSeries star_inverse(const QSeries& f, int deg, DiskGridPtr grid = nullptr,
                     double zero_threshold = 1e-6);

/// Slice decomposition on the slice of fr.I: writing each coefficient as
/// (a + b*I) + (c + d*I)*J gives complex series F (from a+bi) and G (from
/// c+di) with f(x+yI) = F(z) + G(z)*J under z = x+iy.
struct SplitSeries {
  CSeries F, G;
};

SplitSeries split(const QSeries& f, const Frame& fr);

/// Inverse of split: quaternion coefficients F_m + G_m * J in the frame.
QSeries reassemble(const CSeries& F, const CSeries& G, const Frame& fr);

/// Evaluates the slice function F + G*J at an arbitrary quaternion by the
/// two-point slice representation: with q = x + y*L, z = x + iy and
/// a = value at z on the fr.I slice, b = value at conj(z),
///   f(q) = (a + b)/2 + L * (I/2) * (b - a).
/// For series data this agrees with direct Horner evaluation of the
/// reassembled series.
Quaternion eval_by_representation(const CSeries& F, const CSeries& G, const Frame& fr,
                                  const Quaternion& q);

}  // namespace corona
