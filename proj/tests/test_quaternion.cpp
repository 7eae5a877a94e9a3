#include <doctest.h>

#include <complex>
#include <random>

#include "corona/quaternion.hpp"

using Complex = std::complex<double>;
using corona::Frame;
using corona::Quaternion;

namespace {

Quaternion random_quaternion(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("unit multiplication table") {
  const auto e1 = Quaternion::e1(), e2 = Quaternion::e2(), e3 = Quaternion::e3();
  CHECK(e1 * e1 == -Quaternion::one());
  CHECK(e2 * e2 == -Quaternion::one());
  CHECK(e3 * e3 == -Quaternion::one());
  CHECK(e1 * e2 == e3);
  CHECK(e2 * e1 == -e3);
  CHECK(e2 * e3 == e1);
  CHECK(e3 * e2 == -e1);
  CHECK(e3 * e1 == e2);
  CHECK(e1 * e3 == -e2);
}

TEST_CASE("multiplication is associative and norm-multiplicative") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 50; ++t) {
    const Quaternion a = random_quaternion(rng), b = random_quaternion(rng),
                     c = random_quaternion(rng);
    const Quaternion lhs = (a * b) * c, rhs = a * (b * c);
    CHECK(abs(lhs - rhs) < 1e-13);
    CHECK(std::abs(abs(a * b) - abs(a) * abs(b)) < 1e-13);
  }
}

TEST_CASE("conjugate and inverse") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 50; ++t) {
    const Quaternion q = random_quaternion(rng) + Quaternion(2.0);  // away from 0
    CHECK(abs(q * q.conjugate() - Quaternion(q.norm_sq())) < 1e-12);
    CHECK(abs(q * inverse(q) - Quaternion::one()) < 1e-13);
    CHECK(abs(inverse(q) * q - Quaternion::one()) < 1e-13);
  }
}

TEST_CASE("frame_for produces orthonormal frames with K = I*J") {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 50; ++t) {
    Quaternion v = random_quaternion(rng).imag();
    if (abs(v) < 1e-3) continue;
    const Quaternion I = v / abs(v);
    const Frame fr = corona::frame_for(I);
    CHECK(abs(fr.I * fr.I + Quaternion::one()) < 1e-12);
    CHECK(abs(fr.J * fr.J + Quaternion::one()) < 1e-12);
    CHECK(std::abs(dot(fr.I, fr.J)) < 1e-12);
    CHECK(std::abs(dot(fr.I, Quaternion::one())) < 1e-12);
    CHECK(std::abs(dot(fr.J, Quaternion::one())) < 1e-12);
    CHECK(abs(fr.K - fr.I * fr.J) < 1e-12);
  }
  // e1 maps to the standard frame exactly.
  const Frame st = corona::frame_for(Quaternion::e1());
  CHECK(st.I == Quaternion::e1());
  CHECK(st.J == Quaternion::e2());
  CHECK(st.K == Quaternion::e3());
}

TEST_CASE("slice coordinates round-trip") {
  std::mt19937_64 rng(45);
  for (int t = 0; t < 50; ++t) {
    const Quaternion q = random_quaternion(rng);
    const corona::SlicePoint sp = corona::slice_point_of(q);
    CHECK(sp.y >= 0.0);
    CHECK(abs(sp.I * sp.I + Quaternion::one()) < 1e-12);
    const Quaternion back = corona::embed(sp.z(), sp.I);
    CHECK(abs(back - q) < 1e-12);
  }
  // Real points use the e1 convention.
  const corona::SlicePoint sp = corona::slice_point_of(Quaternion(0.7));
  CHECK(sp.I == Quaternion::e1());
  CHECK(sp.y == 0.0);
}
