#include "corona/cauchy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "corona/errors.hpp"
#include "corona/parallel.hpp"

namespace corona {

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n < 2) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int lo = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int hi = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

CauchyTransform::CauchyTransform(GridFn src, bool subdivide_near)
    : src_(std::move(src)), subdivide_near_(subdivide_near) {
  const DiskGrid& g = *src_.grid();
  moments_.resize(static_cast<size_t>(g.size()));
  for (int idx = 0; idx < g.size(); ++idx) {
    moments_[static_cast<size_t>(idx)] =
        src_[idx] * (g.area(idx) / std::numbers::pi);
  }
}

Complex CauchyTransform::operator()(Complex z) const {
  const DiskGrid& g = *src_.grid();
  Complex acc(0.0);
  for (int idx = 0; idx < g.size(); ++idx) {
    const Complex d = z - g.node(idx);
    const double rho = g.half_diameter(idx);
    if (std::norm(d) >= rho * rho) {
      acc += moments_[static_cast<size_t>(idx)] / d;
    } else if (subdivide_near_) {
      acc += refined_cell(z, idx);
    }
    // else: the cell containing z contributes zero; over a (nearly)
    // centrally symmetric cell the kernel averages out.
  }
  return acc;
}

Complex CauchyTransform::refined_cell(Complex z, int idx) const {
  // 3x3 midpoint subdivision of the polar cell, dropping only the subcells
  // whose own half-diagonal still covers z.
  const DiskGrid& g = *src_.grid();
  const double dr = g.radial_step() / 3.0;
  const double dth = g.angular_step() / 3.0;
  const int i = g.radial_index(idx);
  const int k = g.angular_index(idx);
  const double r0 = i * g.radial_step();
  const double th0 = k * g.angular_step();
  const Complex s = src_[idx] / std::numbers::pi;
  Complex acc(0.0);
  for (int a = 0; a < 3; ++a) {
    const double r = r0 + (a + 0.5) * dr;
    const double rho_sub = 0.5 * std::hypot(dr, r * dth);
    for (int b = 0; b < 3; ++b) {
      const double th = th0 + (b + 0.5) * dth;
      const Complex w(r * std::cos(th), r * std::sin(th));
      const Complex d = z - w;
      if (std::norm(d) >= rho_sub * rho_sub) {
        acc += s * (r * dr * dth) / d;
      }
    }
  }
  return acc;
}

double carleson_box_proxy(const DiskGrid& grid, const std::vector<double>& weights,
                          const CarlesonProxyOptions& opt) {
  if (static_cast<int>(weights.size()) != grid.size()) {
    throw InvalidInput("carleson_box_proxy: weight count does not match grid");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  double proxy = 0.0;
  for (int level = 0; level <= opt.max_levels; ++level) {
    const int boxes = 1 << level;
    if (grid.config().n_theta / boxes < opt.min_cells_per_box) break;
    const double arc = two_pi / boxes;  // |I|, also the radial depth of the box
    const double r_lo = std::max(0.0, 1.0 - arc);
    if (r_lo >= grid.config().r_max) break;  // no grid support left
    std::vector<double> mass(static_cast<size_t>(boxes), 0.0);
    for (int idx = 0; idx < grid.size(); ++idx) {
      const Complex w = grid.node(idx);
      if (std::abs(w) < r_lo) continue;
      double th = std::arg(w);
      if (th < 0) th += two_pi;
      int m = static_cast<int>(th / arc);
      m = std::clamp(m, 0, boxes - 1);
      mass[static_cast<size_t>(m)] += weights[static_cast<size_t>(idx)] * grid.area(idx);
    }
    for (double v : mass) proxy = std::max(proxy, v / arc);
  }
  return proxy;
}

WolffEstimates wolff_data_estimates(const DiskGridPtr& grid,
                                    const std::function<Complex(Complex)>& src,
                                    double fd_step, int threads) {
  const DiskGrid& g = *grid;
  std::vector<double> w1(static_cast<size_t>(g.size()));
  std::vector<double> w2(static_cast<size_t>(g.size()));
  std::vector<double> sup3(static_cast<size_t>(g.size()), 0.0);
  parallel_for(g.size(), threads, [&](int idx) {
    const Complex z = g.node(idx);
    const double r = std::abs(z);
    const double log_weight = std::log(1.0 / r);
    const double v = std::abs(src(z));
    // d/dz of the source via central differences; the source itself is only
    // available as values.
    const Complex ih(0.0, fd_step);
    const Complex dsrc = (src(z + fd_step) - src(z - fd_step) -
                          Complex(0, 1) * (src(z + ih) - src(z - ih))) /
                         (4.0 * fd_step);
    const double dv = std::abs(dsrc);
    w1[static_cast<size_t>(idx)] = v * v * log_weight;
    w2[static_cast<size_t>(idx)] = dv * log_weight;
    const double s = 1.0 - r * r;
    sup3[static_cast<size_t>(idx)] = s * s * dv;
  });
  WolffEstimates est;
  est.b1 = carleson_box_proxy(g, w1);
  est.b2 = carleson_box_proxy(g, w2);
  est.b3 = *std::max_element(sup3.begin(), sup3.end());
  return est;
}

}  // namespace corona
