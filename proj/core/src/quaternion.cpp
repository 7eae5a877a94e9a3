#include "corona/quaternion.hpp"

#include <cmath>
#include <ostream>

#include "corona/errors.hpp"

namespace corona {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << "(" << q.x0 << ", " << q.x1 << ", " << q.x2 << ", " << q.x3 << ")";
}

Frame frame_for(const Quaternion& I) {
  const double unit_err = std::fabs(I.norm_sq() - 1.0);
  if (std::fabs(I.x0) > 1e-9 || unit_err > 1e-9) {
    throw InvalidInput("frame_for: axis must be a pure unit quaternion");
  }
  const Quaternion e1 = Quaternion::e1();
  if ((I - e1).norm() < 1e-12) {
    return {e1, Quaternion::e2(), Quaternion::e3()};
  }
  // Gram-Schmidt against a fixed reference axis. e2 is used unless I is
  // nearly parallel to it (deterministic tie-break to e3; both cannot be
  // near-parallel to a unit vector at once).
  Quaternion ref = Quaternion::e2();
  if (std::fabs(dot(I, ref)) > 0.9) ref = Quaternion::e3();
  Quaternion J = ref - dot(I, ref) * I;
  J = J / J.norm();
  const Quaternion K = I * J;
  return {I, J, K};
}

Quaternion imaginary_unit_of(const Quaternion& q, double real_tol) {
  const Quaternion v = q.imag();
  const double y = v.norm();
  if (y <= real_tol) return Quaternion::e1();
  return v / y;
}

SlicePoint slice_point_of(const Quaternion& q, double real_tol) {
  SlicePoint p;
  p.x = q.real();
  const Quaternion v = q.imag();
  p.y = v.norm();
  p.I = (p.y <= real_tol) ? Quaternion::e1() : v / p.y;
  if (p.y <= real_tol) p.y = 0.0;
  return p;
}

Quaternion embed(std::complex<double> z, const Quaternion& I) {
  return Quaternion(z.real()) + z.imag() * I;
}

}  // namespace corona
