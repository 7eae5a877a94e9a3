#include <doctest.h>

#include <cmath>
#include <sstream>

#include "corona/errors.hpp"
#include "corona/grid.hpp"

using corona::Complex;
using corona::DiskGrid;
using corona::GridFn;

TEST_CASE("node layout, areas, and conjugation closure") {
  auto grid = corona::make_grid({16, 64, 0.995});
  CHECK(grid->size() == 16 * 64);

  // Cell areas tile the disk of radius r_max.
  double total = 0.0;
  for (int i = 0; i < grid->size(); ++i) total += grid->area(i);
  CHECK(std::abs(total - M_PI * 0.995 * 0.995) < 1e-12);
  CHECK(std::abs(grid->total_area() - total) < 1e-12);

  for (int i = 0; i < grid->size(); ++i) {
    // conj_index is an exact involution onto the conjugate node.
    const int ci = grid->conj_index(i);
    CHECK(grid->conj_index(ci) == i);
    CHECK(std::abs(grid->node(ci) - std::conj(grid->node(i))) < 1e-15);
    // index round trip
    CHECK(grid->index_of(grid->radial_index(i), grid->angular_index(i)) == i);
    // the half diameter covers the farthest cell corner
    CHECK(grid->half_diameter(i) > 0.0);
  }
}

TEST_CASE("grid function hat is the exact node permutation") {
  auto grid = corona::make_grid({8, 32, 0.9});
  const GridFn f = GridFn::sample(grid, [](Complex z) { return z * z + Complex(0.0, 1.0); });
  const GridFn fh = f.hat();
  for (int i = 0; i < f.size(); ++i) {
    const Complex z = grid->node(i);
    CHECK(std::abs(fh[i] - std::conj(f[grid->conj_index(i)])) == 0.0);
    // Conjugate nodes agree with the true conjugate only to ~1 ulp (cos/sin
    // evaluated at different angle arguments), and squaring amplifies that.
    CHECK(std::abs(fh[i] - std::conj(std::conj(z) * std::conj(z) + Complex(0.0, 1.0))) < 1e-14);
  }
}

TEST_CASE("grid function arithmetic and norms") {
  auto grid = corona::make_grid({8, 32, 0.9});
  const GridFn a = GridFn::sample(grid, [](Complex z) { return z; });
  const GridFn b = GridFn::sample(grid, [](Complex) { return Complex(2.0); });
  const GridFn s = a + b;
  const GridFn p = a * b;
  for (int i = 0; i < s.size(); ++i) {
    CHECK(std::abs(s[i] - (grid->node(i) + 2.0)) < 1e-15);
    CHECK(std::abs(p[i] - 2.0 * grid->node(i)) < 1e-15);
  }
  CHECK(b.sup_norm() == 2.0);
  CHECK(b.min_abs() == 2.0);
  CHECK(a.sup_norm() < 0.9);
}

TEST_CASE("csv round trip preserves values to full precision") {
  auto grid = corona::make_grid({6, 24, 0.8});
  const GridFn f = GridFn::sample(grid, [](Complex z) {
    return std::exp(z) / (1.0 + 0.3 * z);
  });
  std::ostringstream os;
  f.write_csv(os);
  std::istringstream is(os.str());
  const GridFn g = GridFn::read_csv(grid, is);
  for (int i = 0; i < f.size(); ++i) CHECK(std::abs(f[i] - g[i]) == 0.0);

  // Mismatched grid is rejected.
  auto other = corona::make_grid({6, 24, 0.7});
  std::istringstream is2(os.str());
  CHECK_THROWS_AS(GridFn::read_csv(other, is2), corona::InvalidInput);
}
