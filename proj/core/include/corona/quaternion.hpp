#pragma once

#include <cmath>
#include <complex>
#include <iosfwd>

namespace corona {

/// Quaternion q = x0 + x1*e1 + x2*e2 + x3*e3 over the Hamilton relations
///   e1*e1 = e2*e2 = e3*e3 = -1,
///   e1*e2 = -e2*e1 = e3,  e2*e3 = -e3*e2 = e1,  e3*e1 = -e1*e3 = e2.
/// Multiplication is associative and non-commutative; |p*q| = |p|*|q|.
struct Quaternion {
  double x0 = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double a0, double a1, double a2, double a3)
      : x0(a0), x1(a1), x2(a2), x3(a3) {}
  /// Real embedding r -> r + 0*e1 + 0*e2 + 0*e3.
  constexpr explicit Quaternion(double r) : x0(r) {}

  static constexpr Quaternion zero() { return {0, 0, 0, 0}; }
  static constexpr Quaternion one() { return {1, 0, 0, 0}; }
  static constexpr Quaternion e1() { return {0, 1, 0, 0}; }
  static constexpr Quaternion e2() { return {0, 0, 1, 0}; }
  static constexpr Quaternion e3() { return {0, 0, 0, 1}; }

  constexpr double real() const { return x0; }
  /// Vector (imaginary) part x1*e1 + x2*e2 + x3*e3.
  constexpr Quaternion imag() const { return {0, x1, x2, x3}; }

  constexpr double norm_sq() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
  double norm() const { return std::sqrt(norm_sq()); }

  /// Conjugate x0 - x1*e1 - x2*e2 - x3*e3; q * conj(q) = |q|^2.
  constexpr Quaternion conjugate() const { return {x0, -x1, -x2, -x3}; }

  constexpr Quaternion operator-() const { return {-x0, -x1, -x2, -x3}; }

  constexpr Quaternion& operator+=(const Quaternion& o) {
    x0 += o.x0; x1 += o.x1; x2 += o.x2; x3 += o.x3;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    x0 -= o.x0; x1 -= o.x1; x2 -= o.x2; x3 -= o.x3;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    x0 *= s; x1 *= s; x2 *= s; x3 *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.x0 * b.x0 - a.x1 * b.x1 - a.x2 * b.x2 - a.x3 * b.x3,
          a.x0 * b.x1 + a.x1 * b.x0 + a.x2 * b.x3 - a.x3 * b.x2,
          a.x0 * b.x2 - a.x1 * b.x3 + a.x2 * b.x0 + a.x3 * b.x1,
          a.x0 * b.x3 + a.x1 * b.x2 - a.x2 * b.x1 + a.x3 * b.x0};
}

/// Multiplicative inverse conj(q)/|q|^2. Undefined for q = 0 (returns inf/nan
/// components, as with real division by zero).
constexpr Quaternion inverse(const Quaternion& q) {
  const double n2 = q.norm_sq();
  return {q.x0 / n2, -q.x1 / n2, -q.x2 / n2, -q.x3 / n2};
}

constexpr Quaternion operator/(const Quaternion& a, const Quaternion& b) {
  return a * inverse(b);
}

inline double abs(const Quaternion& q) { return q.norm(); }

constexpr bool operator==(const Quaternion& a, const Quaternion& b) {
  return a.x0 == b.x0 && a.x1 == b.x1 && a.x2 == b.x2 && a.x3 == b.x3;
}
constexpr bool operator!=(const Quaternion& a, const Quaternion& b) { return !(a == b); }

/// Euclidean R^4 inner product (used for orthonormal frame construction).
constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.x0 * b.x0 + a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// A pure unit quaternion I (I*I = -1) together with pure units J, K such
/// that {1, I, J, K} is an orthonormal basis of R^4, J is orthogonal to I,
/// and K = I*J. Every quaternion splits as (a + b*I) + (c + d*I)*J with real
/// a,b,c,d, which is the coordinate system used to slice series data into
/// pairs of complex series.
struct Frame {
  Quaternion I, J, K;
};

/// Deterministic orthonormal frame for a given pure unit quaternion I.
/// I within 1e-12 of e1 maps to the standard frame (e1, e2, e3); otherwise J
/// is obtained by Gram-Schmidt from a fixed reference axis (e2, falling back
/// to e3 when I is nearly parallel to e2), and K = I*J.
Frame frame_for(const Quaternion& I);

/// Imaginary unit of q: Im q / |Im q|. For (numerically) real q the
/// convention is e1, so that real points live on every slice and the choice
/// is reproducible.
Quaternion imaginary_unit_of(const Quaternion& q, double real_tol = 1e-14);

/// Slice coordinates of q: the unique x + y*I with y = |Im q| >= 0 and
/// I = imaginary_unit_of(q). z is x + iy as a complex number.
struct SlicePoint {
  double x = 0.0;
  double y = 0.0;  // >= 0
  Quaternion I;    // pure unit (e1 for real q)
  std::complex<double> z() const { return {x, y}; }
};

SlicePoint slice_point_of(const Quaternion& q, double real_tol = 1e-14);

/// Embeds a complex slice coordinate back into the slice of I: x + y*I.
Quaternion embed(std::complex<double> z, const Quaternion& I);

}  // namespace corona
