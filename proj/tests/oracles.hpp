#pragma once

// Independent reference computations used only by the test suites. Nothing
// here calls the subresultant code paths it is meant to check.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "sdtwist/polynomial.hpp"

namespace sdtwist::oracle {

using Matrix = std::vector<std::vector<Rational>>;

/// Determinant by Gaussian elimination over Q with exact pivots.
inline Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      Rational factor = m[r][col] / m[col][col];
      for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
    }
  }
  return det;
}

/// Sylvester matrix with rows of f's coefficients (highest first) shifted
/// deg g times, then g's shifted deg f times.
inline Matrix sylvester(const ExactPoly& f, const ExactPoly& g) {
  const int n = f.degree();
  const int m = g.degree();
  const std::size_t size = static_cast<std::size_t>(n + m);
  Matrix s(size, std::vector<Rational>(size, Rational(0)));
  for (int row = 0; row < m; ++row)
    for (int i = 0; i <= n; ++i) s[row][row + i] = f.coeff(static_cast<std::size_t>(n - i));
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= m; ++i) s[m + row][row + i] = g.coeff(static_cast<std::size_t>(m - i));
  return s;
}

inline Rational sylvester_resultant(const ExactPoly& f, const ExactPoly& g) {
  if (f.degree() == 0) return ring_pow(f.leading(), g.degree());
  if (g.degree() == 0) return ring_pow(g.leading(), f.degree());
  return determinant(sylvester(f, g));
}

inline Rational sylvester_discriminant(const ExactPoly& f) {
  const int n = f.degree();
  Rational d = sylvester_resultant(f, f.derivative()) / f.leading();
  if (((n * (n - 1)) / 2) & 1) d = -d;
  return d;
}

/// Lagrange interpolation through (x_i, y_i).
inline ExactPoly interpolate(const std::vector<std::pair<Rational, Rational>>& pts) {
  ExactPoly acc;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    ExactPoly basis = ExactPoly::constant(Rational(1));
    Rational denom = 1;
    for (std::size_t j = 0; j < pts.size(); ++j) {
      if (i == j) continue;
      basis = basis * ExactPoly(std::vector<Rational>{Rational(-pts[j].first), Rational(1)});
      denom *= pts[i].first - pts[j].first;
    }
    acc += basis * Rational(pts[i].second / denom);
  }
  return acc;
}

inline ExactPoly random_poly(std::mt19937_64& rng, int degree, long range, bool rational = false) {
  std::uniform_int_distribution<long> coef(-range, range);
  std::uniform_int_distribution<long> den(1, 5);
  std::vector<Rational> v;
  for (int i = 0; i <= degree; ++i) {
    Rational c = rational ? make_rational(Integer(coef(rng)), Integer(den(rng))) : Rational(coef(rng));
    v.push_back(c);
  }
  if (v.back() == 0) v.back() = 1;
  return ExactPoly(std::move(v));
}

}  // namespace sdtwist::oracle
