#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sdtwist/rational.hpp"

namespace sdtwist {

template <class Scalar>
class Polynomial;

/// Ring operations the generic algorithms need from a coefficient type.
template <class T>
struct RingTraits {
  static T zero() { return T(0); }
  static T one() { return T(1); }
  static T from_int(long v) { return T(v); }
  static bool is_zero(const T& v) { return sgn(v) == 0; }
};

template <class S>
struct RingTraits<Polynomial<S>> {
  static Polynomial<S> zero() { return Polynomial<S>(); }
  static Polynomial<S> one() { return Polynomial<S>::constant(RingTraits<S>::one()); }
  static Polynomial<S> from_int(long v) {
    return Polynomial<S>::constant(RingTraits<S>::from_int(v));
  }
  static bool is_zero(const Polynomial<S>& p) { return p.is_zero(); }
};

/// Dense univariate polynomial; coefficient i multiplies x^i.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and degree() == -1 for it. Every mutating
/// operation renormalizes. With Scalar = Rational the GMP type keeps each
/// coefficient gcd-reduced.
template <class Scalar>
class Polynomial {
 public:
  using scalar_type = Scalar;

  Polynomial() = default;

  explicit Polynomial(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static Polynomial constant(Scalar c) { return Polynomial(std::vector<Scalar>{std::move(c)}); }

  static Polynomial monomial(Scalar c, std::size_t power) {
    std::vector<Scalar> v(power + 1, RingTraits<Scalar>::zero());
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  /// The polynomial x.
  static Polynomial variable() { return monomial(RingTraits<Scalar>::one(), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  Scalar coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : RingTraits<Scalar>::zero();
  }
  const Scalar& operator[](std::size_t i) const { return coeffs_.at(i); }

  const Scalar& leading() const {
    if (coeffs_.empty()) throw DomainError("leading coefficient of the zero polynomial");
    return coeffs_.back();
  }

  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Polynomial operator-() const {
    Polynomial out(*this);
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), RingTraits<Scalar>::zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), RingTraits<Scalar>::zero());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    normalize();
    return *this;
  }

  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial& operator*=(const Scalar& s) {
    for (auto& c : coeffs_) c *= s;
    normalize();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<Scalar> out(a.coeffs_.size() + b.coeffs_.size() - 1, RingTraits<Scalar>::zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (RingTraits<Scalar>::is_zero(a.coeffs_[i])) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        Scalar term = a.coeffs_[i] * b.coeffs_[j];
        out[i + j] += term;
      }
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    std::vector<Scalar> out;
    out.reserve(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      Scalar c = coeffs_[i] * RingTraits<Scalar>::from_int(static_cast<long>(i));
      out.push_back(std::move(c));
    }
    return Polynomial(std::move(out));
  }

  /// Horner evaluation at a point of any ring that Scalar embeds into.
  template <class T>
  T evaluate(const T& point) const {
    T acc = T();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * point;
      acc += T(*it);
    }
    return acc;
  }

  Scalar evaluate(const Scalar& point) const {
    Scalar acc = RingTraits<Scalar>::zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      Scalar next = acc * point;
      next += *it;
      acc = std::move(next);
    }
    return acc;
  }

  /// f(g(x)).
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      acc = acc * g;
      acc += constant(*it);
    }
    return acc;
  }

  /// x^deg * f(1/x).
  Polynomial reciprocal() const {
    std::vector<Scalar> v(coeffs_.rbegin(), coeffs_.rend());
    return Polynomial(std::move(v));
  }

  /// Multiply by x^k.
  Polynomial shifted_up(std::size_t k) const {
    if (is_zero()) return *this;
    std::vector<Scalar> v(k, RingTraits<Scalar>::zero());
    v.insert(v.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(std::move(v));
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && RingTraits<Scalar>::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<Scalar> coeffs_;
};

using ExactPoly = Polynomial<Rational>;
/// Polynomial in x whose coefficients are ExactPoly in t.
using BivarPoly = Polynomial<ExactPoly>;

template <class T>
T ring_pow(const T& base, long e) {
  if (e < 0) throw DomainError("negative exponent in ring power");
  T out = RingTraits<T>::one();
  T b = base;
  while (e > 0) {
    if (e & 1) out = out * b;
    e >>= 1;
    if (e > 0) b = b * b;
  }
  return out;
}

inline Rational exact_divide(const Rational& a, const Rational& b) {
  if (b == 0) throw DomainError("division by zero");
  return a / b;
}

template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divrem(const Polynomial<S>& a, const Polynomial<S>& b);

/// Division that must leave no remainder (used by fraction-free elimination).
template <class S>
Polynomial<S> exact_divide(const Polynomial<S>& a, const Polynomial<S>& b) {
  auto [q, r] = divrem(a, b);
  if (!r.is_zero()) throw DomainError("inexact polynomial division");
  return q;
}

/// Euclidean division a = q*b + r with deg r < deg b. Requires each
/// leading-coefficient quotient to be exact in Scalar (always true over Q).
template <class S>
std::pair<Polynomial<S>, Polynomial<S>> divrem(const Polynomial<S>& a, const Polynomial<S>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<S>(), a};
  std::vector<S> rem = a.coefficients();
  const int db = b.degree();
  std::vector<S> quot(static_cast<std::size_t>(a.degree() - db + 1), RingTraits<S>::zero());
  const S& lb = b.leading();
  for (int k = a.degree(); k >= db; --k) {
    S& top = rem[static_cast<std::size_t>(k)];
    if (RingTraits<S>::is_zero(top)) continue;
    S q = exact_divide(top, lb);
    for (int j = 0; j <= db; ++j) {
      S term = q * b.coefficients()[static_cast<std::size_t>(j)];
      rem[static_cast<std::size_t>(k - db + j)] -= term;
    }
    quot[static_cast<std::size_t>(k - db)] = std::move(q);
  }
  return {Polynomial<S>(std::move(quot)), Polynomial<S>(std::move(rem))};
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed without
/// any coefficient division.
template <class S>
Polynomial<S> pseudo_remainder(const Polynomial<S>& a, const Polynomial<S>& b) {
  if (b.is_zero()) throw DomainError("pseudo-remainder by zero");
  if (a.degree() < b.degree()) return a;
  const int db = b.degree();
  const int delta = a.degree() - db;
  const S& lb = b.leading();
  Polynomial<S> r = a;
  int steps = 0;
  while (!r.is_zero() && r.degree() >= db) {
    Polynomial<S> lead = Polynomial<S>::monomial(r.leading(), static_cast<std::size_t>(r.degree() - db));
    r = r * lb - lead * b;
    ++steps;
  }
  if (steps < delta + 1) r = r * ring_pow(lb, delta + 1 - steps);
  return r;
}

}  // namespace sdtwist
