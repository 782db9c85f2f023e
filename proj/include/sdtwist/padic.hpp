#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "sdtwist/polynomial.hpp"

namespace sdtwist {

/// Sentinel for v_p(0).
inline constexpr long kInfiniteValuation = std::numeric_limits<long>::max();

/// v_p(num) - v_p(den), or kInfiniteValuation for r = 0.
long valuation(const Rational& r, const Integer& p);

struct NewtonSegment {
  Rational slope;
  int length;  // horizontal
};

/// Lower convex hull of (i, v_p(a_i)) over coefficients a_i != 0.
///
/// Slopes are the hull's own slopes, so a root of valuation e contributes to
/// a segment of slope -e (x^3 + 5 at p = 5 has one segment of slope -1/3).
/// Zero coefficients below the first nonzero one (roots at 0) are skipped.
struct NewtonPolygon {
  Integer prime;
  std::vector<std::pair<int, long>> points;
  std::vector<NewtonSegment> segments;

  int total_length() const;
  /// Multiset of root valuations, -slope repeated length times.
  std::vector<Rational> root_valuations() const;
};

NewtonPolygon newton_polygon(const ExactPoly& f, const Integer& p);

/// Lengths n of the cycles forced by segments of slope m/n (lowest terms)
/// and length exactly n, all other slopes having denominator coprime to n.
std::vector<int> cycle_certificate(const NewtonPolygon& polygon);

/// Multiset of cycle lengths, kept in ascending order.
struct CycleType {
  std::vector<int> parts;

  CycleType() = default;
  explicit CycleType(std::vector<int> p);
  int degree() const;
  bool contains_cycle(int n) const;
  std::string str() const;
  friend bool operator==(const CycleType&, const CycleType&) = default;
  friend auto operator<=>(const CycleType&, const CycleType&) = default;
};

/// Degree pattern of F mod p, or nullopt when p is a bad prime: the reduction
/// drops degree or is not squarefree. Throws if p divides a denominator.
std::optional<CycleType> frobenius_cycle_type(const ExactPoly& f, const Integer& p);

}  // namespace sdtwist
