#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdtwist {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an operation is called outside its mathematical domain
/// (zero polynomial where a nonzero one is required, non-prime modulus, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integral(const Rational& r) { return r.get_den() == 1; }

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Integer& n) { return sgn(n); }

inline Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Integer pow_int(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline Rational pow_rat(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return pow_rat(Rational(1) / base, -e);
  }
  Rational out = make_rational(pow_int(base.get_num(), static_cast<unsigned long>(e)),
                               pow_int(base.get_den(), static_cast<unsigned long>(e)));
  return out;
}

inline bool fits_u64(const Integer& n) {
  return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const Integer& n) {
  if (!fits_u64(n)) throw DomainError("integer does not fit in 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

inline Integer from_u64(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

/// Residue of n modulo m in [0, m).
inline std::uint64_t mod_u64(const Integer& n, std::uint64_t m) {
  Integer r;
  Integer mm = from_u64(m);
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), mm.get_mpz_t());
  return to_u64(r);
}

/// Exponent of p in n (n != 0).
inline long valuation_int(Integer n, const Integer& p) {
  if (n == 0) throw DomainError("valuation of zero integer");
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

inline std::string to_string(const Integer& n) { return n.get_str(); }
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "p", "-p", or "p/q" in base 10.
Rational parse_rational(std::string_view text);

}  // namespace sdtwist
