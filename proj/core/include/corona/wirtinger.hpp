#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "corona/series.hpp"

namespace corona {

/// Value and Wirtinger derivatives of an expression at one point:
///   dz    = (d/dx - i d/dy)/2,   dzbar = (d/dx + i d/dy)/2.
struct WEval {
  Complex v{0.0};
  Complex dz{0.0};
  Complex dzbar{0.0};
};

struct WNode;
using WNodePtr = std::shared_ptr<const WNode>;

/// Immutable expression DAG over smooth functions of (z, conj z). Atoms are
/// constants and holomorphic truncated series; composite nodes are the ring
/// operations, complex conjugation, and evaluation at the conjugate point.
/// Evaluation propagates (value, dz, dzbar) jointly:
///   conj:     value -> conj(value), swaps dz and dzbar (conjugated),
///   at_conj:  evaluates the child at conj(z); dz here equals the child's
///             dzbar there (conjugate-point chain rule), and vice versa,
///   hat:      conj(at_conj(e)), i.e. z -> conj(e(conj z)); for a series
///             atom this coincides with conjugating its coefficients,
///   dzbar_of: extracts the child's dzbar as a VALUE. Derivatives of this
///             node are not available and evaluate to NaN by design, so an
///             accidental second derivative is loud instead of wrong.
class WExpr {
 public:
  WExpr();  // the zero expression
  static WExpr constant(Complex c);
  static WExpr series(const CSeries& f);

  WEval eval(Complex z) const;
  Complex value(Complex z) const { return eval(z).v; }
  Complex dz(Complex z) const { return eval(z).dz; }
  Complex dzbar(Complex z) const { return eval(z).dzbar; }

  const WNodePtr& node() const { return node_; }
  explicit WExpr(WNodePtr n) : node_(std::move(n)) {}

 private:
  WNodePtr node_;
};

WExpr operator+(const WExpr& a, const WExpr& b);
WExpr operator-(const WExpr& a, const WExpr& b);
WExpr operator*(const WExpr& a, const WExpr& b);
WExpr operator/(const WExpr& a, const WExpr& b);
WExpr operator-(const WExpr& a);

WExpr conj(const WExpr& e);
WExpr at_conj(const WExpr& e);
WExpr hat(const WExpr& e);
/// |e|^2 = e * conj(e) as a smooth (real-valued) expression.
WExpr abs_sq(const WExpr& e);
WExpr dzbar_of(const WExpr& e);

/// Memoized evaluator for many expressions sharing subtrees at one point.
/// Subexpression results are cached per point (z and conj z), so evaluating
/// a family of related expressions costs each distinct node once. The cache
/// holds shared ownership of every node it has seen: results stay valid (and
/// node addresses cannot be recycled into stale cache hits) even when callers
/// evaluate short-lived expression handles.
class WPointEval {
 public:
  explicit WPointEval(Complex z);
  WEval operator()(const WExpr& e);

 private:
  const WEval& eval(const WNodePtr& n, bool at_conj_point);

  Complex z_;
  std::unordered_map<WNodePtr, WEval> memo_[2];
};

/// Central-difference approximations of the Wirtinger derivatives for an
/// arbitrary complex->complex function; used as an independent oracle for
/// the DAG rules and as the holomorphy probe for assembled solutions.
template <typename F>
Complex finite_diff_dz(F&& f, Complex z, double h) {
  const Complex ih(0.0, h);
  return (f(z + h) - f(z - h) - Complex(0, 1) * (f(z + ih) - f(z - ih))) / (4.0 * h);
}

template <typename F>
Complex finite_diff_dzbar(F&& f, Complex z, double h) {
  const Complex ih(0.0, h);
  return (f(z + h) - f(z - h) + Complex(0, 1) * (f(z + ih) - f(z - ih))) / (4.0 * h);
}

}  // namespace corona
