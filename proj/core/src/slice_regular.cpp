#include "corona/slice_regular.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "corona/errors.hpp"

namespace corona {

QSeries star(const QSeries& f, const QSeries& g) {
  const int deg = f.degree() + g.degree();
  if (deg > kSeriesDegreeCap) {
    throw InvalidInput("star: product degree " + std::to_string(deg) +
                       " exceeds the hard cap " + std::to_string(kSeriesDegreeCap));
  }
  std::vector<Quaternion> c(static_cast<size_t>(deg) + 1, Quaternion::zero());
  for (int i = 0; i <= f.degree(); ++i) {
    const Quaternion fi = f.coefficients()[static_cast<size_t>(i)];
    if (fi == Quaternion::zero()) continue;
    for (int j = 0; j <= g.degree(); ++j) {
      c[static_cast<size_t>(i + j)] += fi * g.coefficients()[static_cast<size_t>(j)];
    }
  }
  return QSeries(std::move(c));
}

Quaternion star_eval_pointwise(const QSeries& f, const QSeries& g, const Quaternion& q,
                               double zero_tol) {
  const Quaternion fq = f(q);
  if (fq.norm() < zero_tol) return Quaternion::zero();
  const Quaternion moved = inverse(fq) * q * fq;
  return fq * g(moved);
}

QSeries regular_conjugate(const QSeries& f) {
  std::vector<Quaternion> c = f.coefficients();
  for (Quaternion& a : c) a = a.conjugate();
  return QSeries(std::move(c));
}

CSeries symmetrization(const QSeries& f, double* max_vector_part) {
  const QSeries fs = star(f, regular_conjugate(f));
  double worst = 0.0;
  std::vector<Complex> real_coefs(fs.coefficients().size());
  for (size_t m = 0; m < fs.coefficients().size(); ++m) {
    const Quaternion& a = fs.coefficients()[m];
    worst = std::max(worst, a.imag().norm());
    real_coefs[m] = Complex(a.real(), 0.0);
  }
  if (max_vector_part != nullptr) *max_vector_part = worst;
  return CSeries(std::move(real_coefs));
}

QSeries star_inverse(const QSeries& f, int deg, DiskGridPtr grid, double zero_threshold) {
  if (grid == nullptr) grid = make_grid();
  const QSeries fc = regular_conjugate(f);
  const CSeries fs = symmetrization(f);

  // The symmetrization has real coefficients, so its modulus at x+yI does
  // not depend on I: scanning one complex disk covers the whole ball.
  double min_abs = std::numeric_limits<double>::infinity();
  for (int idx = 0; idx < grid->size(); ++idx) {
    min_abs = std::min(min_abs, std::abs(fs(grid->node(idx))));
  }
  if (min_abs < zero_threshold) {
    throw CoronaViolation("star_inverse: symmetrization modulus drops to " +
                          std::to_string(min_abs) +
                          " on the scan grid; the star inverse is unbounded");
  }

  const CSeries fs_inv = fs.inverse(deg);
  // Multiply the real series into the quaternionic one; real scalars commute
  // with the quaternion coefficients, so plain convolution is exact.
  std::vector<Quaternion> c(static_cast<size_t>(deg) + 1, Quaternion::zero());
  for (int n = 0; n <= deg; ++n) {
    Quaternion acc = Quaternion::zero();
    for (int k = 0; k <= n; ++k) {
      const double s = fs_inv.coefficient(k).real();
      if (s == 0.0) continue;
      acc += s * fc.coefficient(n - k);
    }
    c[static_cast<size_t>(n)] = acc;
  }
  return QSeries(std::move(c));
}

namespace {

Complex project_pair(const Quaternion& a, const Quaternion& u, const Quaternion& v) {
  return Complex(dot(a, u), dot(a, v));
}

Quaternion from_slice(Complex c, const Quaternion& I) {
  return Quaternion(c.real()) + c.imag() * I;
}

}  // namespace

SplitSeries split(const QSeries& f, const Frame& fr) {
  const size_t n = f.coefficients().size();
  std::vector<Complex> F(n), G(n);
  for (size_t m = 0; m < n; ++m) {
    const Quaternion& a = f.coefficients()[m];
    // {1, I, J, K} is orthonormal in R^4, so the components of a in that
    // basis are plain inner products.
    F[m] = project_pair(a, Quaternion::one(), fr.I);
    G[m] = project_pair(a, fr.J, fr.K);
  }
  return {CSeries(std::move(F)), CSeries(std::move(G))};
}

QSeries reassemble(const CSeries& F, const CSeries& G, const Frame& fr) {
  const int deg = std::max(F.degree(), G.degree());
  std::vector<Quaternion> c(static_cast<size_t>(deg) + 1);
  for (int m = 0; m <= deg; ++m) {
    c[static_cast<size_t>(m)] =
        from_slice(F.coefficient(m), fr.I) + from_slice(G.coefficient(m), fr.I) * fr.J;
  }
  return QSeries(std::move(c));
}

Quaternion eval_by_representation(const CSeries& F, const CSeries& G, const Frame& fr,
                                  const Quaternion& q) {
  const SlicePoint p = slice_point_of(q);
  const Complex z = p.z();
  const auto slice_value = [&](Complex w) {
    return from_slice(F(w), fr.I) + from_slice(G(w), fr.I) * fr.J;
  };
  const Quaternion a = slice_value(z);
  const Quaternion b = slice_value(std::conj(z));
  return (a + b) * 0.5 + p.I * (fr.I * 0.5) * (b - a);
}

}  // namespace corona
