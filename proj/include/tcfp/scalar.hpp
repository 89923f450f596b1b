#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "tcfp/rational.hpp"

namespace tcfp {

using Real = long double;
using Complex = std::complex<Real>;

/// Exact complex number with rational real and imaginary parts.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(int r) : re(r) {}                  // NOLINT(google-explicit-constructor)
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) {
    Rational n = o.re * o.re + o.im * o.im;
    if (n == 0) throw DomainError("division by zero Gaussian rational");
    Rational r = (re * o.re + im * o.im) / n;
    Rational i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend std::ostream& operator<<(std::ostream& os, const Gaussian& g) {
    return os << to_string(g.re) << (sgn(g.im) < 0 ? "" : "+") << to_string(g.im) << "i";
  }
};

inline Gaussian conj(const Gaussian& g) { return {g.re, -g.im}; }

/// Field operations the generic linear algebra and the tpp layer need.
template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static Complex from_rational(const Rational& q) { return {to_long_double(q), 0}; }
  static Complex conj(const Complex& z) { return std::conj(z); }
  static Real magnitude(const Complex& z) { return std::abs(z); }
  static bool is_zero(const Complex& z) { return z == Complex(0); }
};

template <>
struct scalar_traits<Gaussian> {
  static constexpr bool exact = true;
  static Gaussian from_rational(const Rational& q) { return Gaussian(q); }
  static Gaussian conj(const Gaussian& z) { return tcfp::conj(z); }
  static Real magnitude(const Gaussian& z) {
    return std::hypot(to_long_double(z.re), to_long_double(z.im));
  }
  static bool is_zero(const Gaussian& z) { return z.re == 0 && z.im == 0; }
};

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static Rational conj(const Rational& z) { return z; }
  static Real magnitude(const Rational& z) { return std::fabs(to_long_double(z)); }
  static bool is_zero(const Rational& z) { return z == 0; }
};

}  // namespace tcfp
