#pragma once

#include <complex>
#include <vector>

#include "corona/quaternion.hpp"

namespace corona {

using Complex = std::complex<double>;

/// Hard cap on truncation degrees. Operations that would need a longer
/// representation throw InvalidInput rather than silently truncating.
inline constexpr int kSeriesDegreeCap = 512;

/// Truncated complex power series sum_{m=0..D} a_m z^m with coefficients in
/// ascending degree. The zero series is stored as the single coefficient 0.
class CSeries {
 public:
  CSeries() : coef_(1, Complex(0.0)) {}
  explicit CSeries(std::vector<Complex> coefficients);

  static CSeries constant(Complex c) { return CSeries(std::vector<Complex>{c}); }
  /// c * z^m.
  static CSeries monomial(int m, Complex c = Complex(1.0));

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<Complex>& coefficients() const { return coef_; }
  Complex coefficient(int m) const;

  /// Horner evaluation.
  Complex operator()(Complex z) const;

  CSeries derivative() const;

  /// Coefficient-wise complex conjugation; as a function this is
  /// z -> conj(f(conj z)), the reflected conjugate.
  CSeries hat() const;

  CSeries truncated(int deg) const;

  /// sum |a_m|: an upper bound for sup |f| on the closed unit disk.
  double l1_norm() const;

  /// Largest |Im a_m|: zero iff all coefficients are real.
  double max_imag_coefficient() const;

  /// Multiplicative power-series inverse 1/f truncated at `deg`.
  /// Requires f(0) != 0 (throws InvalidInput otherwise).
  CSeries inverse(int deg) const;

  CSeries& operator+=(const CSeries& o);
  CSeries& operator-=(const CSeries& o);
  CSeries& operator*=(Complex s);

  bool is_zero() const;

 private:
  std::vector<Complex> coef_;
};

CSeries operator+(CSeries a, const CSeries& b);
CSeries operator-(CSeries a, const CSeries& b);
CSeries operator*(CSeries a, Complex s);
CSeries operator*(Complex s, CSeries a);
/// Cauchy product, exact to degree deg(a)+deg(b); throws InvalidInput past
/// the degree cap.
CSeries operator*(const CSeries& a, const CSeries& b);

/// Truncated quaternionic power series sum_{m=0..D} q^m a_m. Powers of the
/// variable stand to the LEFT of the coefficients; this is the convention
/// under which the series defines a (left) slice regular function, and it
/// fixes the order of all coefficient products downstream.
class QSeries {
 public:
  QSeries() : coef_(1, Quaternion::zero()) {}
  explicit QSeries(std::vector<Quaternion> coefficients);

  static QSeries constant(const Quaternion& c) {
    return QSeries(std::vector<Quaternion>{c});
  }
  /// q^m * c.
  static QSeries monomial(int m, const Quaternion& c = Quaternion::one());

  int degree() const { return static_cast<int>(coef_.size()) - 1; }
  const std::vector<Quaternion>& coefficients() const { return coef_; }
  Quaternion coefficient(int m) const;

  /// Horner evaluation a_0 + q*(a_1 + q*(a_2 + ...)); keeps every power of q
  /// to the left of its coefficient.
  Quaternion operator()(const Quaternion& q) const;

  QSeries truncated(int deg) const;

  /// sum |a_m|: an upper bound for sup |f| on the closed unit ball.
  double l1_norm() const;

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);

  bool is_zero() const;

 private:
  std::vector<Quaternion> coef_;
};

QSeries operator+(QSeries a, const QSeries& b);
QSeries operator-(QSeries a, const QSeries& b);
/// Scalar (real) multiple; reals commute with quaternion coefficients.
QSeries operator*(QSeries a, double s);
QSeries operator*(double s, QSeries a);

}  // namespace corona
