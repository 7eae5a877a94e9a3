#include "corona/grid.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "corona/errors.hpp"

namespace corona {

DiskGrid::DiskGrid(DiskGridConfig cfg) : cfg_(cfg) {
  if (cfg_.n_r < 1 || cfg_.n_theta < 2 || cfg_.n_theta % 2 != 0) {
    throw InvalidInput("DiskGrid: need n_r >= 1 and even n_theta >= 2");
  }
  if (!(cfg_.r_max > 0.0) || cfg_.r_max >= 1.0) {
    throw InvalidInput("DiskGrid: need 0 < r_max < 1");
  }
  const double dr = radial_step();
  const double dth = angular_step();
  nodes_.resize(static_cast<size_t>(size()));
  areas_.resize(static_cast<size_t>(size()));
  rho_.resize(static_cast<size_t>(size()));
  for (int i = 0; i < cfg_.n_r; ++i) {
    const double r = (i + 0.5) * dr;
    const double cell_area = r * dr * dth;
    const double half_diag = 0.5 * std::hypot(dr, r * dth);
    for (int k = 0; k < cfg_.n_theta; ++k) {
      const double th = (k + 0.5) * dth;
      const int idx = index_of(i, k);
      nodes_[static_cast<size_t>(idx)] = Complex(r * std::cos(th), r * std::sin(th));
      areas_[static_cast<size_t>(idx)] = cell_area;
      rho_[static_cast<size_t>(idx)] = half_diag;
    }
  }
}

int DiskGrid::conj_index(int idx) const {
  const int i = radial_index(idx);
  const int k = angular_index(idx);
  return index_of(i, cfg_.n_theta - 1 - k);
}

double DiskGrid::angular_step() const {
  return 2.0 * std::numbers::pi / cfg_.n_theta;
}

double DiskGrid::total_area() const {
  double s = 0.0;
  for (double a : areas_) s += a;
  return s;
}

DiskGridPtr make_grid(DiskGridConfig cfg) {
  return std::make_shared<const DiskGrid>(cfg);
}

GridFn::GridFn(DiskGridPtr grid, Complex fill)
    : grid_(std::move(grid)), values_(static_cast<size_t>(grid_->size()), fill) {}

GridFn::GridFn(DiskGridPtr grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (static_cast<int>(values_.size()) != grid_->size()) {
    throw InvalidInput("GridFn: value count does not match grid size");
  }
}

GridFn GridFn::sample(DiskGridPtr grid, const std::function<Complex(Complex)>& f) {
  GridFn g(grid);
  for (int idx = 0; idx < g.size(); ++idx) g[idx] = f(grid->node(idx));
  return g;
}

GridFn GridFn::hat() const {
  GridFn out(grid_);
  for (int idx = 0; idx < size(); ++idx) {
    out[idx] = std::conj(values_[static_cast<size_t>(grid_->conj_index(idx))]);
  }
  return out;
}

GridFn GridFn::conj() const {
  GridFn out(grid_);
  for (int idx = 0; idx < size(); ++idx) out[idx] = std::conj(values_[static_cast<size_t>(idx)]);
  return out;
}

double GridFn::sup_norm() const {
  double s = 0.0;
  for (const Complex& v : values_) s = std::max(s, std::abs(v));
  return s;
}

double GridFn::min_abs() const {
  double s = std::numeric_limits<double>::infinity();
  for (const Complex& v : values_) s = std::min(s, std::abs(v));
  return s;
}

void GridFn::check_same_grid(const GridFn& o) const {
  if (grid_.get() != o.grid_.get()) {
    throw InvalidInput("GridFn: operands sampled on different grids");
  }
}

GridFn& GridFn::operator+=(const GridFn& o) {
  check_same_grid(o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

GridFn& GridFn::operator-=(const GridFn& o) {
  check_same_grid(o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

GridFn& GridFn::operator*=(Complex s) {
  for (Complex& v : values_) v *= s;
  return *this;
}

GridFn& GridFn::operator*=(const GridFn& o) {
  check_same_grid(o);
  for (size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

void GridFn::write_csv(std::ostream& os) const {
  os << "re_w,im_w,re_v,im_v\n";
  os.precision(17);
  for (int idx = 0; idx < size(); ++idx) {
    const Complex w = grid_->node(idx);
    const Complex v = values_[static_cast<size_t>(idx)];
    os << w.real() << "," << w.imag() << "," << v.real() << "," << v.imag() << "\n";
  }
}

GridFn GridFn::read_csv(DiskGridPtr grid, std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) {
    throw InvalidInput("GridFn::read_csv: empty input");
  }
  GridFn out(grid);
  for (int idx = 0; idx < out.size(); ++idx) {
    if (!std::getline(is, line)) {
      throw InvalidInput("GridFn::read_csv: fewer rows than grid nodes");
    }
    std::istringstream row(line);
    double f[4];
    char comma;
    row >> f[0] >> comma >> f[1] >> comma >> f[2] >> comma >> f[3];
    if (!row) {
      throw InvalidInput("GridFn::read_csv: malformed row '" + line + "'");
    }
    const Complex w = grid->node(idx);
    if (std::abs(w - Complex(f[0], f[1])) > 1e-12) {
      throw InvalidInput("GridFn::read_csv: node coordinates do not match the grid");
    }
    out[idx] = Complex(f[2], f[3]);
  }
  return out;
}

GridFn operator+(GridFn a, const GridFn& b) { return a += b; }
GridFn operator-(GridFn a, const GridFn& b) { return a -= b; }
GridFn operator*(GridFn a, const GridFn& b) { return a *= b; }
GridFn operator*(GridFn a, Complex s) { return a *= s; }
GridFn operator*(Complex s, GridFn a) { return a *= s; }

}  // namespace corona
