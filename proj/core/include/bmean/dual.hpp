#pragma once

#include <cmath>

namespace bmean {

/// Second-order forward-mode dual number: a value with its first and second
/// derivative with respect to one seed variable.
///
/// Arithmetic propagates the product, quotient and chain rules exactly to
/// second order, so evaluating f on Dual2::variable(x) yields
/// (f(x), f'(x), f''(x)) up to rounding.
struct Dual2 {
  double v0 = 0.0;  // value
  double v1 = 0.0;  // first derivative
  double v2 = 0.0;  // second derivative

  constexpr Dual2() = default;
  constexpr Dual2(double value, double d1 = 0.0, double d2 = 0.0)
      : v0(value), v1(d1), v2(d2) {}

  static constexpr Dual2 variable(double x) { return {x, 1.0, 0.0}; }
  static constexpr Dual2 constant(double c) { return {c, 0.0, 0.0}; }

  constexpr Dual2 operator-() const { return {-v0, -v1, -v2}; }

  constexpr Dual2& operator+=(const Dual2& o) {
    v0 += o.v0;
    v1 += o.v1;
    v2 += o.v2;
    return *this;
  }
  constexpr Dual2& operator-=(const Dual2& o) {
    v0 -= o.v0;
    v1 -= o.v1;
    v2 -= o.v2;
    return *this;
  }
  constexpr Dual2& operator*=(const Dual2& o) {
    const double p2 = v2 * o.v0 + 2.0 * v1 * o.v1 + v0 * o.v2;
    const double p1 = v1 * o.v0 + v0 * o.v1;
    v0 *= o.v0;
    v1 = p1;
    v2 = p2;
    return *this;
  }
  constexpr Dual2& operator/=(const Dual2& o);
};

/// Applies an outer scalar function with known derivatives (d0, d1, d2) at
/// inner.v0 to an inner dual number.
constexpr Dual2 apply_chain(const Dual2& inner, double d0, double d1, double d2) {
  return {d0, d1 * inner.v1, d2 * inner.v1 * inner.v1 + d1 * inner.v2};
}

/// Composes an outer dual (derivatives in an intermediate variable) with an
/// inner dual (that variable as a function of the seed).
constexpr Dual2 compose(const Dual2& outer, const Dual2& inner) {
  return apply_chain(inner, outer.v0, outer.v1, outer.v2);
}

constexpr Dual2 reciprocal(const Dual2& a) {
  const double r = 1.0 / a.v0;
  return apply_chain(a, r, -r * r, 2.0 * r * r * r);
}

constexpr Dual2& Dual2::operator/=(const Dual2& o) { return *this *= reciprocal(o); }

constexpr Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
constexpr Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }
constexpr Dual2 operator*(Dual2 a, const Dual2& b) { return a *= b; }
constexpr Dual2 operator/(Dual2 a, const Dual2& b) { return a /= b; }

constexpr Dual2 operator+(Dual2 a, double b) { return a += Dual2(b); }
constexpr Dual2 operator+(double a, Dual2 b) { return b += Dual2(a); }
constexpr Dual2 operator-(Dual2 a, double b) { return a -= Dual2(b); }
constexpr Dual2 operator-(double a, const Dual2& b) { return Dual2(a) - b; }
constexpr Dual2 operator*(Dual2 a, double b) { return {a.v0 * b, a.v1 * b, a.v2 * b}; }
constexpr Dual2 operator*(double a, Dual2 b) { return b * a; }
constexpr Dual2 operator/(Dual2 a, double b) { return {a.v0 / b, a.v1 / b, a.v2 / b}; }
constexpr Dual2 operator/(double a, const Dual2& b) { return a * reciprocal(b); }

// Elementary functions. The caller is responsible for staying inside each
// function's differentiable domain; expr::eval_dual performs those checks.

inline Dual2 sin(const Dual2& a) {
  const double s = std::sin(a.v0), c = std::cos(a.v0);
  return apply_chain(a, s, c, -s);
}
inline Dual2 cos(const Dual2& a) {
  const double s = std::sin(a.v0), c = std::cos(a.v0);
  return apply_chain(a, c, -s, -c);
}
inline Dual2 tan(const Dual2& a) {
  const double t = std::tan(a.v0);
  const double sec2 = 1.0 + t * t;
  return apply_chain(a, t, sec2, 2.0 * t * sec2);
}
inline Dual2 sinh(const Dual2& a) {
  const double s = std::sinh(a.v0), c = std::cosh(a.v0);
  return apply_chain(a, s, c, s);
}
inline Dual2 cosh(const Dual2& a) {
  const double s = std::sinh(a.v0), c = std::cosh(a.v0);
  return apply_chain(a, c, s, c);
}
inline Dual2 tanh(const Dual2& a) {
  const double t = std::tanh(a.v0);
  const double sech2 = 1.0 - t * t;
  return apply_chain(a, t, sech2, -2.0 * t * sech2);
}
inline Dual2 exp(const Dual2& a) {
  const double e = std::exp(a.v0);
  return apply_chain(a, e, e, e);
}
inline Dual2 log(const Dual2& a) {
  const double r = 1.0 / a.v0;
  return apply_chain(a, std::log(a.v0), r, -r * r);
}
inline Dual2 sqrt(const Dual2& a) {
  const double s = std::sqrt(a.v0);
  return apply_chain(a, s, 0.5 / s, -0.25 / (s * a.v0));
}
inline Dual2 atan(const Dual2& a) {
  const double d = 1.0 / (1.0 + a.v0 * a.v0);
  return apply_chain(a, std::atan(a.v0), d, -2.0 * a.v0 * d * d);
}
inline Dual2 atanh(const Dual2& a) {
  const double d = 1.0 / (1.0 - a.v0 * a.v0);
  return apply_chain(a, std::atanh(a.v0), d, 2.0 * a.v0 * d * d);
}
inline Dual2 asin(const Dual2& a) {
  const double q = 1.0 - a.v0 * a.v0;
  const double d = 1.0 / std::sqrt(q);
  return apply_chain(a, std::asin(a.v0), d, a.v0 * d / q);
}
inline Dual2 abs(const Dual2& a) {
  const double s = a.v0 < 0.0 ? -1.0 : 1.0;
  return {std::abs(a.v0), s * a.v1, s * a.v2};
}

/// Integer power by binary exponentiation; negative exponents go through the
/// reciprocal of the positive power.
inline Dual2 ipow(const Dual2& base, long long n) {
  if (n < 0) return reciprocal(ipow(base, -n));
  Dual2 result(1.0);
  Dual2 b = base;
  while (n > 0) {
    if (n & 1) result *= b;
    n >>= 1;
    if (n > 0) b *= b;
  }
  return result;
}

/// base^exponent for base > 0 via exp(exponent * log(base)).
inline Dual2 pow(const Dual2& base, const Dual2& exponent) {
  return exp(exponent * log(base));
}

}  // namespace bmean
