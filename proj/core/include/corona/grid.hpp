#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

namespace corona {

using Complex = std::complex<double>;

/// Polar midpoint grid on the disk of radius r_max. Node (i,k) sits at
///   r_i = (i + 1/2) * r_max / n_r,  theta_k = 2*pi*(k + 1/2) / n_theta,
/// and carries the cell area r_i * (r_max/n_r) * (2*pi/n_theta). The node set
/// is closed under complex conjugation (theta -> -theta maps node k to node
/// n_theta-1-k exactly), which downstream code relies on for evaluating
/// reflected conjugates without interpolation. Cell areas sum to pi*r_max^2.
struct DiskGridConfig {
  int n_r = 64;
  int n_theta = 256;
  double r_max = 0.995;
};

class DiskGrid {
 public:
  explicit DiskGrid(DiskGridConfig cfg = {});

  const DiskGridConfig& config() const { return cfg_; }
  int size() const { return cfg_.n_r * cfg_.n_theta; }

  Complex node(int idx) const { return nodes_[static_cast<size_t>(idx)]; }
  double area(int idx) const { return areas_[static_cast<size_t>(idx)]; }
  /// Half of the cell diagonal: the exclusion radius used by singular
  /// quadratures to decide that a target point lies "inside" the cell.
  double half_diameter(int idx) const { return rho_[static_cast<size_t>(idx)]; }

  int radial_index(int idx) const { return idx / cfg_.n_theta; }
  int angular_index(int idx) const { return idx % cfg_.n_theta; }
  int index_of(int i, int k) const { return i * cfg_.n_theta + k; }

  /// Index of the node at the conjugate point conj(z(idx)); exact, because
  /// the angular midpoints are symmetric about the real axis.
  int conj_index(int idx) const;

  double radial_step() const { return cfg_.r_max / cfg_.n_r; }
  double angular_step() const;
  double total_area() const;

  const std::vector<Complex>& nodes() const { return nodes_; }
  const std::vector<double>& areas() const { return areas_; }

 private:
  DiskGridConfig cfg_;
  std::vector<Complex> nodes_;
  std::vector<double> areas_;
  std::vector<double> rho_;
};

using DiskGridPtr = std::shared_ptr<const DiskGrid>;

DiskGridPtr make_grid(DiskGridConfig cfg = {});

/// A complex-valued function sampled on a DiskGrid (one value per node).
class GridFn {
 public:
  GridFn(DiskGridPtr grid, Complex fill = Complex(0.0));
  GridFn(DiskGridPtr grid, std::vector<Complex> values);

  static GridFn sample(DiskGridPtr grid, const std::function<Complex(Complex)>& f);

  const DiskGridPtr& grid() const { return grid_; }
  int size() const { return static_cast<int>(values_.size()); }
  Complex operator[](int idx) const { return values_[static_cast<size_t>(idx)]; }
  Complex& operator[](int idx) { return values_[static_cast<size_t>(idx)]; }
  const std::vector<Complex>& values() const { return values_; }

  /// Reflected conjugate v -> conj(v(conj z)), realized exactly by the node
  /// permutation conj_index.
  GridFn hat() const;
  GridFn conj() const;

  double sup_norm() const;
  double min_abs() const;

  GridFn& operator+=(const GridFn& o);
  GridFn& operator-=(const GridFn& o);
  GridFn& operator*=(Complex s);
  /// Pointwise product.
  GridFn& operator*=(const GridFn& o);

  /// CSV with header re_w,im_w,re_v,im_v; nodes in index order, full
  /// round-trip precision.
  void write_csv(std::ostream& os) const;
  /// Reads a CSV produced by write_csv; the node coordinates must match the
  /// given grid to 1e-12 (throws InvalidInput otherwise).
  static GridFn read_csv(DiskGridPtr grid, std::istream& is);

 private:
  void check_same_grid(const GridFn& o) const;

  DiskGridPtr grid_;
  std::vector<Complex> values_;
};

GridFn operator+(GridFn a, const GridFn& b);
GridFn operator-(GridFn a, const GridFn& b);
GridFn operator*(GridFn a, const GridFn& b);
GridFn operator*(GridFn a, Complex s);
GridFn operator*(Complex s, GridFn a);

}  // namespace corona
