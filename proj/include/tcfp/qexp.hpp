#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "tcfp/errors.hpp"
#include "tcfp/rational.hpp"
#include "tcfp/scalar.hpp"

namespace tcfp {

/// Truncated q-series a_0 + a_1 q + ... + a_prec q^prec with exact rational
/// coefficients. Binary operations truncate to the smaller precision; reading
/// a coefficient beyond prec is an error, never an implicit zero.
class QExpansion {
 public:
  QExpansion() : coeffs_(1, Rational(0)) {}
  explicit QExpansion(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw DomainError("q-expansion needs at least the constant coefficient");
  }

  static QExpansion zero(int prec) { return QExpansion(std::vector<Rational>(checked(prec) + 1, Rational(0))); }
  static QExpansion one(int prec) {
    QExpansion f = zero(prec);
    f.coeffs_[0] = 1;
    return f;
  }
  /// c * q^n truncated at prec.
  static QExpansion monomial(int n, int prec, const Rational& c = 1) {
    QExpansion f = zero(prec);
    if (n >= 0 && n <= prec) f.coeffs_[static_cast<std::size_t>(n)] = c;
    return f;
  }

  int prec() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& operator[](int n) const {
    if (n < 0 || n > prec())
      throw PrecisionError("coefficient a_" + std::to_string(n) + " requested but prec is " + std::to_string(prec()));
    return coeffs_[static_cast<std::size_t>(n)];
  }
  std::span<const Rational> coeffs() const { return coeffs_; }

  QExpansion truncated(int new_prec) const {
    if (new_prec > prec()) throw PrecisionError("cannot extend a q-expansion beyond its precision");
    return QExpansion(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + checked(new_prec) + 1));
  }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  friend QExpansion operator+(const QExpansion& a, const QExpansion& b) {
    const int p = std::min(a.prec(), b.prec());
    std::vector<Rational> c(static_cast<std::size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) c[n] = a.coeffs_[n] + b.coeffs_[n];
    return QExpansion(std::move(c));
  }
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b) {
    const int p = std::min(a.prec(), b.prec());
    std::vector<Rational> c(static_cast<std::size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) c[n] = a.coeffs_[n] - b.coeffs_[n];
    return QExpansion(std::move(c));
  }
  friend QExpansion operator*(const Rational& s, QExpansion a) {
    for (auto& c : a.coeffs_) c *= s;
    return a;
  }
  friend QExpansion operator*(const QExpansion& a, const QExpansion& b) { return multiply(a, b); }
  friend bool operator==(const QExpansion& a, const QExpansion& b) { return a.coeffs_ == b.coeffs_; }

 private:
  static std::size_t checked(int prec) {
    if (prec < 0) throw DomainError("negative q-expansion precision");
    return static_cast<std::size_t>(prec);
  }

  // Cauchy product carried out on integer numerators after clearing
  // denominators, which keeps the inner loop in mpz_addmul.
  static QExpansion multiply(const QExpansion& a, const QExpansion& b) {
    const int p = std::min(a.prec(), b.prec());
    auto integral = [p](const QExpansion& f, Integer& denom) {
      denom = 1;
      for (int n = 0; n <= p; ++n) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), f.coeffs_[n].get_den_mpz_t());
      std::vector<Integer> v(static_cast<std::size_t>(p) + 1);
      for (int n = 0; n <= p; ++n) v[n] = f.coeffs_[n].get_num() * (denom / f.coeffs_[n].get_den());
      return v;
    };
    Integer da, db;
    const auto ia = integral(a, da);
    const auto ib = integral(b, db);
    std::vector<Integer> ic(static_cast<std::size_t>(p) + 1, Integer(0));
    for (int i = 0; i <= p; ++i) {
      if (ia[i] == 0) continue;
      for (int j = 0; i + j <= p; ++j)
        mpz_addmul(ic[i + j].get_mpz_t(), ia[i].get_mpz_t(), ib[j].get_mpz_t());
    }
    const Integer d = da * db;
    std::vector<Rational> c(static_cast<std::size_t>(p) + 1);
    for (int n = 0; n <= p; ++n) {
      c[n] = Rational(ic[n], d);
      c[n].canonicalize();
    }
    return QExpansion(std::move(c));
  }

  std::vector<Rational> coeffs_;
};

inline QExpansion pow(const QExpansion& a, unsigned e) {
  QExpansion result = QExpansion::one(a.prec());
  QExpansion base = a;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

/// Value of a truncated series at tau, plus an extrapolated estimate of the
/// omitted tail sum_{n>prec} C n^k |q|^n with C = max_{n>=1} |a_n| / n^k.
/// The estimate is heuristic: it assumes coefficient growth no faster than
/// the largest growth ratio seen among the known coefficients.
template <class R = double>
struct Evaluation {
  std::complex<R> value;
  R tail_estimate;
};

template <class R = double>
Evaluation<R> eval(const QExpansion& f, int weight, std::complex<R> tau) {
  if (!(tau.imag() > 0)) throw DomainError("evaluation point must lie in the upper half-plane");
  const R two_pi = 2 * std::numbers::pi_v<R>;
  const std::complex<R> q = std::exp(std::complex<R>(0, two_pi) * tau);
  std::complex<R> acc = 0;
  for (int n = f.prec(); n >= 0; --n) acc = acc * q + static_cast<R>(to_long_double(f[n]));

  R growth = 0;
  for (int n = 1; n <= f.prec(); ++n) {
    const R a = std::fabs(static_cast<R>(to_long_double(f[n])));
    if (a > 0) growth = std::max(growth, a / std::pow(static_cast<R>(n), static_cast<R>(weight)));
  }
  R tail = 0;
  if (growth > 0) {
    const R r = std::exp(-two_pi * tau.imag());
    const R k = static_cast<R>(weight);
    for (long n = f.prec() + 1;; ++n) {
      const R nn = static_cast<R>(n);
      const R term = growth * std::pow(nn, k) * std::pow(r, nn);
      const R ratio = std::pow((nn + 1) / nn, k) * r;
      tail += term;
      if (ratio < 1 && term * ratio / (1 - ratio) <= tail * std::numeric_limits<R>::epsilon()) {
        tail += term * ratio / (1 - ratio);
        break;
      }
      if (n > f.prec() + 1000000) break;
    }
  }
  return {acc, tail};
}

}  // namespace tcfp
