#pragma once

#include <functional>
#include <vector>

#include "corona/grid.hpp"

namespace corona {

/// Solid Cauchy transform of a grid-sampled source:
///   b(z) = (1/pi) * sum_cells src(w) * area(w) / (z - w),
/// the midpoint quadrature of the area integral whose exact version solves
/// dbar(b) = src on the disk. The cell whose half-diagonal covers z is
/// skipped: over a centrally symmetric cell the Cauchy kernel averages to
/// (nearly) zero, so dropping it is a principal-value-like rule. The
/// optional subdivide_near flag replaces the drop by a 3x3 midpoint
/// subdivision of that cell, skipping only subcells still covering z.
class CauchyTransform {
 public:
  explicit CauchyTransform(GridFn src, bool subdivide_near = false);

  Complex operator()(Complex z) const;
  const GridFn& source() const { return src_; }

 private:
  Complex refined_cell(Complex z, int idx) const;

  GridFn src_;
  std::vector<Complex> moments_;  // src * area / pi, per cell
  bool subdivide_near_;
};

struct CarlesonProxyOptions {
  int max_levels = 12;       // dyadic arc generations 2pi/2^k, k = 0..max
  int min_cells_per_box = 4;  // stop when boxes get thinner than this many cells
};

/// Discrete Carleson-norm proxy of the measure weight*dA: the maximum over
/// dyadic boundary boxes Q (arc length |I| = 2pi/2^k, radial extent
/// [1-|I|, 1)) of mass(Q)/|I|, with mass summed over grid nodes in Q.
double carleson_box_proxy(const DiskGrid& grid, const std::vector<double>& weights,
                          const CarlesonProxyOptions& opt = {});

/// Finiteness certificates for a dbar source G, as grid measurements:
///   b1: Carleson proxy of |G|^2 log(1/|z|) dA,
///   b2: Carleson proxy of |dG/dz| log(1/|z|) dA,
///   b3: sup over nodes of (1-|z|^2)^2 |dG/dz|.
/// A bounded solution of dbar(b) = G with norm controlled by
/// sqrt(b1) + b2 + b3 exists when these are finite; the proxies quantify
/// them on the chosen grid. dG/dz is taken by central differences of the
/// supplied value function.
struct WolffEstimates {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

WolffEstimates wolff_data_estimates(const DiskGridPtr& grid,
                                    const std::function<Complex(Complex)>& src,
                                    double fd_step = 1e-5, int threads = 1);

}  // namespace corona
