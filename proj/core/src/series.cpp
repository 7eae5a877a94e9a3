#include "corona/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corona/errors.hpp"

namespace corona {

namespace {

void check_degree(int deg, const char* where) {
  if (deg < 0) {
    throw InvalidInput(std::string(where) + ": negative degree");
  }
  if (deg > kSeriesDegreeCap) {
    throw InvalidInput(std::string(where) + ": degree " + std::to_string(deg) +
                       " exceeds the hard cap " + std::to_string(kSeriesDegreeCap));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// CSeries

CSeries::CSeries(std::vector<Complex> coefficients) : coef_(std::move(coefficients)) {
  if (coef_.empty()) coef_.assign(1, Complex(0.0));
  check_degree(degree(), "CSeries");
}

CSeries CSeries::monomial(int m, Complex c) {
  check_degree(m, "CSeries::monomial");
  std::vector<Complex> v(static_cast<size_t>(m) + 1, Complex(0.0));
  v.back() = c;
  return CSeries(std::move(v));
}

Complex CSeries::coefficient(int m) const {
  if (m < 0 || m > degree()) return Complex(0.0);
  return coef_[static_cast<size_t>(m)];
}

Complex CSeries::operator()(Complex z) const {
  Complex acc = coef_.back();
  for (size_t m = coef_.size() - 1; m-- > 0;) {
    acc = acc * z + coef_[m];
  }
  return acc;
}

CSeries CSeries::derivative() const {
  if (coef_.size() == 1) return CSeries();
  std::vector<Complex> d(coef_.size() - 1);
  for (size_t m = 1; m < coef_.size(); ++m) {
    d[m - 1] = static_cast<double>(m) * coef_[m];
  }
  return CSeries(std::move(d));
}

CSeries CSeries::hat() const {
  std::vector<Complex> v(coef_.size());
  for (size_t m = 0; m < coef_.size(); ++m) v[m] = std::conj(coef_[m]);
  return CSeries(std::move(v));
}

CSeries CSeries::truncated(int deg) const {
  check_degree(deg, "CSeries::truncated");
  std::vector<Complex> v(coef_.begin(),
                         coef_.begin() + std::min<size_t>(coef_.size(), deg + 1));
  return CSeries(std::move(v));
}

double CSeries::l1_norm() const {
  double s = 0.0;
  for (const Complex& a : coef_) s += std::abs(a);
  return s;
}

double CSeries::max_imag_coefficient() const {
  double s = 0.0;
  for (const Complex& a : coef_) s = std::max(s, std::fabs(a.imag()));
  return s;
}

CSeries CSeries::inverse(int deg) const {
  check_degree(deg, "CSeries::inverse");
  const Complex a0 = coef_[0];
  if (std::abs(a0) == 0.0) {
    throw InvalidInput("CSeries::inverse: constant term is zero");
  }
  std::vector<Complex> b(static_cast<size_t>(deg) + 1, Complex(0.0));
  b[0] = 1.0 / a0;
  for (int n = 1; n <= deg; ++n) {
    Complex s(0.0);
    const int kmax = std::min(n, degree());
    for (int k = 1; k <= kmax; ++k) {
      s += coef_[static_cast<size_t>(k)] * b[static_cast<size_t>(n - k)];
    }
    b[static_cast<size_t>(n)] = -s / a0;
  }
  return CSeries(std::move(b));
}

CSeries& CSeries::operator+=(const CSeries& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Complex(0.0));
  for (size_t m = 0; m < o.coef_.size(); ++m) coef_[m] += o.coef_[m];
  return *this;
}

CSeries& CSeries::operator-=(const CSeries& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Complex(0.0));
  for (size_t m = 0; m < o.coef_.size(); ++m) coef_[m] -= o.coef_[m];
  return *this;
}

CSeries& CSeries::operator*=(Complex s) {
  for (Complex& a : coef_) a *= s;
  return *this;
}

bool CSeries::is_zero() const {
  return std::all_of(coef_.begin(), coef_.end(),
                     [](const Complex& a) { return a == Complex(0.0); });
}

CSeries operator+(CSeries a, const CSeries& b) { return a += b; }
CSeries operator-(CSeries a, const CSeries& b) { return a -= b; }
CSeries operator*(CSeries a, Complex s) { return a *= s; }
CSeries operator*(Complex s, CSeries a) { return a *= s; }

CSeries operator*(const CSeries& a, const CSeries& b) {
  const int deg = a.degree() + b.degree();
  check_degree(deg, "CSeries::operator*");
  std::vector<Complex> c(static_cast<size_t>(deg) + 1, Complex(0.0));
  for (int i = 0; i <= a.degree(); ++i) {
    const Complex ai = a.coefficients()[static_cast<size_t>(i)];
    if (ai == Complex(0.0)) continue;
    for (int j = 0; j <= b.degree(); ++j) {
      c[static_cast<size_t>(i + j)] += ai * b.coefficients()[static_cast<size_t>(j)];
    }
  }
  return CSeries(std::move(c));
}

// ---------------------------------------------------------------------------
// QSeries

QSeries::QSeries(std::vector<Quaternion> coefficients) : coef_(std::move(coefficients)) {
  if (coef_.empty()) coef_.assign(1, Quaternion::zero());
  check_degree(degree(), "QSeries");
}

QSeries QSeries::monomial(int m, const Quaternion& c) {
  check_degree(m, "QSeries::monomial");
  std::vector<Quaternion> v(static_cast<size_t>(m) + 1, Quaternion::zero());
  v.back() = c;
  return QSeries(std::move(v));
}

Quaternion QSeries::coefficient(int m) const {
  if (m < 0 || m > degree()) return Quaternion::zero();
  return coef_[static_cast<size_t>(m)];
}

Quaternion QSeries::operator()(const Quaternion& q) const {
  Quaternion acc = coef_.back();
  for (size_t m = coef_.size() - 1; m-- > 0;) {
    acc = q * acc + coef_[m];
  }
  return acc;
}

QSeries QSeries::truncated(int deg) const {
  check_degree(deg, "QSeries::truncated");
  std::vector<Quaternion> v(coef_.begin(),
                            coef_.begin() + std::min<size_t>(coef_.size(), deg + 1));
  return QSeries(std::move(v));
}

double QSeries::l1_norm() const {
  double s = 0.0;
  for (const Quaternion& a : coef_) s += a.norm();
  return s;
}

QSeries& QSeries::operator+=(const QSeries& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Quaternion::zero());
  for (size_t m = 0; m < o.coef_.size(); ++m) coef_[m] += o.coef_[m];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  if (o.coef_.size() > coef_.size()) coef_.resize(o.coef_.size(), Quaternion::zero());
  for (size_t m = 0; m < o.coef_.size(); ++m) coef_[m] -= o.coef_[m];
  return *this;
}

bool QSeries::is_zero() const {
  return std::all_of(coef_.begin(), coef_.end(),
                     [](const Quaternion& a) { return a == Quaternion::zero(); });
}

QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

QSeries operator*(QSeries a, double s) {
  std::vector<Quaternion> v = a.coefficients();
  for (Quaternion& c : v) c *= s;
  return QSeries(std::move(v));
}
QSeries operator*(double s, QSeries a) { return std::move(a) * s; }

}  // namespace corona
