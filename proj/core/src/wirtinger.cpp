#include "corona/wirtinger.hpp"

#include <cmath>
#include <limits>

namespace corona {

enum class WKind { Const, Series, Add, Sub, Mul, Div, Neg, Conj, AtConj, Dzbar };

struct WNode {
  WKind kind;
  Complex c{0.0};          // Const
  CSeries f, fprime;       // Series
  WNodePtr a, b;           // children

  explicit WNode(WKind k) : kind(k) {}
};

namespace {

WExpr make1(WKind k, const WExpr& x) {
  auto n = std::make_shared<WNode>(k);
  n->a = x.node();
  return WExpr(std::move(n));
}

WExpr make2(WKind k, const WExpr& x, const WExpr& y) {
  auto n = std::make_shared<WNode>(k);
  n->a = x.node();
  n->b = y.node();
  return WExpr(std::move(n));
}

}  // namespace

WExpr::WExpr() : node_(nullptr) { *this = constant(Complex(0.0)); }

WExpr WExpr::constant(Complex c) {
  auto n = std::make_shared<WNode>(WKind::Const);
  n->c = c;
  return WExpr(std::move(n));
}

WExpr WExpr::series(const CSeries& f) {
  auto n = std::make_shared<WNode>(WKind::Series);
  n->f = f;
  n->fprime = f.derivative();
  return WExpr(std::move(n));
}

WExpr operator+(const WExpr& a, const WExpr& b) { return make2(WKind::Add, a, b); }
WExpr operator-(const WExpr& a, const WExpr& b) { return make2(WKind::Sub, a, b); }
WExpr operator*(const WExpr& a, const WExpr& b) { return make2(WKind::Mul, a, b); }
WExpr operator/(const WExpr& a, const WExpr& b) { return make2(WKind::Div, a, b); }
WExpr operator-(const WExpr& a) { return make1(WKind::Neg, a); }

WExpr conj(const WExpr& e) { return make1(WKind::Conj, e); }
WExpr at_conj(const WExpr& e) { return make1(WKind::AtConj, e); }
WExpr hat(const WExpr& e) { return conj(at_conj(e)); }
WExpr abs_sq(const WExpr& e) { return e * conj(e); }
WExpr dzbar_of(const WExpr& e) { return make1(WKind::Dzbar, e); }

WPointEval::WPointEval(Complex z) : z_(z) {}

const WEval& WPointEval::eval(const WNodePtr& n, bool cp) {
  auto& memo = memo_[cp ? 1 : 0];
  if (auto it = memo.find(n); it != memo.end()) return it->second;

  const Complex z = cp ? std::conj(z_) : z_;
  WEval r;
  switch (n->kind) {
    case WKind::Const:
      r.v = n->c;
      break;
    case WKind::Series:
      r.v = n->f(z);
      r.dz = n->fprime(z);
      r.dzbar = Complex(0.0);
      break;
    case WKind::Add: {
      const WEval& x = eval(n->a, cp);
      const WEval& y = eval(n->b, cp);
      r = {x.v + y.v, x.dz + y.dz, x.dzbar + y.dzbar};
      break;
    }
    case WKind::Sub: {
      const WEval& x = eval(n->a, cp);
      const WEval& y = eval(n->b, cp);
      r = {x.v - y.v, x.dz - y.dz, x.dzbar - y.dzbar};
      break;
    }
    case WKind::Mul: {
      const WEval& x = eval(n->a, cp);
      const WEval& y = eval(n->b, cp);
      r = {x.v * y.v, x.dz * y.v + x.v * y.dz, x.dzbar * y.v + x.v * y.dzbar};
      break;
    }
    case WKind::Div: {
      const WEval& x = eval(n->a, cp);
      const WEval& y = eval(n->b, cp);
      const Complex inv = 1.0 / y.v;
      const Complex q = x.v * inv;
      r = {q, (x.dz - q * y.dz) * inv, (x.dzbar - q * y.dzbar) * inv};
      break;
    }
    case WKind::Neg: {
      const WEval& x = eval(n->a, cp);
      r = {-x.v, -x.dz, -x.dzbar};
      break;
    }
    case WKind::Conj: {
      const WEval& x = eval(n->a, cp);
      r = {std::conj(x.v), std::conj(x.dzbar), std::conj(x.dz)};
      break;
    }
    case WKind::AtConj: {
      // u(z) = e(conj z): du/dz = (dzbar e)(conj z), du/dzbar = (dz e)(conj z).
      const WEval& x = eval(n->a, !cp);
      r = {x.v, x.dzbar, x.dz};
      break;
    }
    case WKind::Dzbar: {
      const WEval& x = eval(n->a, cp);
      const double nan = std::numeric_limits<double>::quiet_NaN();
      r = {x.dzbar, Complex(nan, nan), Complex(nan, nan)};
      break;
    }
  }
  return memo.emplace(n, r).first->second;
}

WEval WPointEval::operator()(const WExpr& e) { return eval(e.node(), false); }

WEval WExpr::eval(Complex z) const {
  WPointEval ev(z);
  return ev(*this);
}

}  // namespace corona
