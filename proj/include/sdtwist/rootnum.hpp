#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sdtwist/candidate.hpp"

namespace sdtwist {

/// Kronecker symbol (a/n) with the usual conventions at n = 0, -1 and 2.
/// Throws on (0, 0).
int kronecker(const Integer& a, const Integer& n);

/// Conductor and global root number of E, supplied by the caller.
struct CurveArithData {
  Integer conductor = 1;
  int w = 1;
};

struct RootReport {
  int d = 0;
  Integer disc;
  bool gcd_ok = false;
  Integer gcd;  // gcd(disc, N_E)
  int kronecker_value = 0;
  std::optional<int> w_rel;  // unset when gcd(disc, N_E) != 1
};

/// w(E)^(d-1) * sgn(disc) * (disc / N_E), defined when gcd(disc, N_E) = 1.
RootReport relative_root_number(const CurveArithData& data, int d, const Integer& disc);

struct SignPair {
  std::size_t first = 0;   // index of the negative-discriminant candidate
  std::size_t second = 0;  // index of the positive one
  RootReport first_report;
  RootReport second_report;
};

/// Pairs candidates in the same class (u mod M, v mod M) with opposite
/// discriminant signs. A pair is emitted only when both relative root numbers
/// are defined and opposite. M must be a positive power of N_E.
std::vector<SignPair> sign_pairing(const std::vector<FieldCandidate>& candidates, const Integer& modulus,
                                   const CurveArithData& data);

/// For the d = 3 family of a model with f = x^3 mod N and v = 1 mod N, the
/// discriminant is -u^3 (27u + 4) times a unit square mod N. Returns the class
/// (u0, 1) mod N with the smallest u0 in [1, N) whose symbol against N
/// equals target. Throws when no such class exists.
Congruence cubic_sign_preset(const Integer& conductor, int target = -1);

}  // namespace sdtwist
