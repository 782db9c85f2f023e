#pragma once

#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "sdtwist/polynomial.hpp"

namespace sdtwist {

/// Resultant of f and g by the subresultant pseudo-remainder sequence.
///
/// Works over any integral domain whose exact quotients are available through
/// exact_divide: Rational for scalar resultants and ExactPoly when the
/// coefficients are themselves polynomials in a second variable.
/// Satisfies Res(f,g) = (-1)^(deg f * deg g) Res(g,f).
template <class S>
S resultant(Polynomial<S> f, Polynomial<S> g) {
  if (f.is_zero() || g.is_zero()) throw DomainError("resultant of a zero polynomial");
  int s = 1;
  if (f.degree() < g.degree()) {
    std::swap(f, g);
    if ((f.degree() & 1) && (g.degree() & 1)) s = -s;
  }
  if (g.degree() == 0) {
    S out = ring_pow(g.leading(), f.degree());
    return s < 0 ? S(-out) : out;
  }
  S gg = RingTraits<S>::one();
  S h = RingTraits<S>::one();
  for (;;) {
    const int delta = f.degree() - g.degree();
    if ((f.degree() & 1) && (g.degree() & 1)) s = -s;
    Polynomial<S> r = pseudo_remainder(f, g);
    if (r.is_zero()) return RingTraits<S>::zero();
    f = std::move(g);
    S divisor = gg * ring_pow(h, delta);
    std::vector<S> reduced;
    reduced.reserve(r.size());
    for (const S& c : r.coefficients()) reduced.push_back(exact_divide(c, divisor));
    g = Polynomial<S>(std::move(reduced));
    gg = f.leading();
    if (delta > 0) h = exact_divide(ring_pow(gg, delta), ring_pow(h, delta - 1));
    if (g.degree() == 0) {
      const int n = f.degree();
      S out = exact_divide(ring_pow(g.leading(), n), ring_pow(h, n - 1));
      return s < 0 ? S(-out) : out;
    }
  }
}

/// Disc(F) = (-1)^(n(n-1)/2) / a_n * Res(F, F').
template <class S>
S discriminant(const Polynomial<S>& f) {
  const int n = f.degree();
  if (n < 1) throw DomainError("discriminant of a constant polynomial");
  S d = exact_divide(resultant(f, f.derivative()), f.leading());
  if (((n * (n - 1)) / 2) & 1) d = -d;
  return d;
}

Rational resultant(const ExactPoly& f, const ExactPoly& g);
Rational discriminant(const ExactPoly& f);

/// Discriminant of P taken in x, as an exact polynomial in t.
ExactPoly discriminant_in_t(const BivarPoly& p);

/// Monic gcd over Q; gcd(0, 0) is 0.
ExactPoly gcd(ExactPoly a, ExactPoly b);

ExactPoly monic(const ExactPoly& f);

/// f = content * primitive with primitive in Z[x], gcd of its coefficients 1,
/// and positive leading coefficient.
struct ContentSplit {
  Rational content;
  ExactPoly primitive;
};
ContentSplit primitive_part(const ExactPoly& f);

/// Integer coefficients of a polynomial already known to be integral.
std::vector<Integer> integer_coefficients(const ExactPoly& f);

ExactPoly from_integers(const std::vector<Integer>& coeffs);
ExactPoly from_longs(std::initializer_list<long> coeffs);

struct SquarefreeFactor {
  ExactPoly factor;  // primitive, integral, positive leading coefficient
  int multiplicity;
};

struct SquarefreeDecomposition {
  Rational content;
  std::vector<SquarefreeFactor> factors;  // ascending multiplicity

  /// Some factor of positive degree occurs exactly once.
  bool non_squarefull() const;
  ExactPoly expand() const;
};

/// Yun's algorithm: h = content * prod factor_i^mult_i with the factors
/// squarefree and pairwise coprime.
SquarefreeDecomposition squarefree_decompose(const ExactPoly& h);

bool is_squarefree(const ExactPoly& f);

/// Number of distinct real roots of a squarefree F from its Sturm sequence.
int sturm_real_roots(const ExactPoly& f);

/// Sign changes between consecutive nonzero coefficients.
int descartes_sign_changes(const ExactPoly& f);

/// F(-x).
ExactPoly negate_variable(const ExactPoly& f);

/// Remainder of F on division by P (deg P >= 1).
ExactPoly reduce_mod(const ExactPoly& f, const ExactPoly& p);

/// Coefficient of x^i in P, as a polynomial in t, evaluated at t0.
ExactPoly specialize_t(const BivarPoly& p, const Rational& t0);

/// Human-readable form in the given variable, e.g. "x^3 - 2*x + 1/2".
std::string to_string(const ExactPoly& f, std::string_view var = "x");

/// Parses sums of terms "c", "c*x", "x^k", "c*x^k" with rational c.
ExactPoly parse_poly(std::string_view text, char var = 'x');

}  // namespace sdtwist
