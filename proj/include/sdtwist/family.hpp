#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sdtwist/polyarith.hpp"

namespace sdtwist {

/// Integral short Weierstrass curve y^2 = x^3 + a x + b.
struct Curve {
  Integer a;
  Integer b;

  ExactPoly cubic() const;
  /// -4a^3 - 27b^2
  Integer discriminant() const;
};

/// y^2 = f(x) = x^3 + B x^2 + C x + D with the normalizations
/// (i) denominators only at p1, (ii) p2 || D and p2 does not divide C,
/// (iii) f = (x + a)^3 mod p3, (iv) |B - 3 alpha|, |C - 3 alpha^2|,
/// |D - alpha^3| < epsilon.
struct WeierstrassModel {
  Curve curve;
  int d = 3;
  Rational B, C, D;
  Integer p1, p2, p3;
  Integer target_shift;  // a
  Rational target_alpha;
  Rational epsilon;

  // Construction steps, kept for provenance.
  Integer shift_r;      // x -> x + r at p2
  ExactPoly f_r;        // g(x + r)
  ExactPoly f_tilde;    // p3^6 f_r((x + s) / p3^2)
  Rational u;           // p1-adic approximation of alpha
  long k = 0;           // final rescaling by p1^(2k)

  ExactPoly cubic() const;
  /// Primes whose powers may appear in a denominator.
  std::vector<Integer> denominator_support() const { return {p1}; }
};

struct ModelCheck {
  bool denominators = false;   // (i)
  bool p2_condition = false;   // (ii)
  bool p3_congruence = false;  // (iii)
  bool close_to_target = false;  // (iv)
  bool nonsingular = false;
  bool all() const { return denominators && p2_condition && p3_congruence && close_to_target && nonsingular; }
};

/// Primes excluded from p1, p2, p3: those dividing 6 d (d-3) Disc(curve),
/// with the (d-3) factor dropped at d = 3.
Integer excluded_product(const Curve& curve, int d);

WeierstrassModel build_model(const Curve& curve, const Integer& shift_a, const Rational& alpha,
                             const Rational& epsilon, int d, std::uint64_t prime_bound = 100000);

ModelCheck verify_model(const WeierstrassModel& model);

enum class ParityCase { cubic, even, odd };

std::string to_string(ParityCase c);

/// The twist family P(x, t) attached to y^2 = f(x) and the point (x, F/G)
/// it carries: F^2 - f G^2 = identity_sign * P in Q[t][x].
struct TwistFamily {
  int d = 3;
  ParityCase parity = ParityCase::cubic;
  ExactPoly f;
  std::optional<WeierstrassModel> model;
  BivarPoly P;
  BivarPoly F;
  BivarPoly G;
  int identity_sign = 1;

  /// Checks the bivariate identity exactly.
  bool identity_holds() const;
};

/// Even d: t^2 x^d - f. Odd d >= 5: x^(d-3) f - t^2. d = 3: f - (x + t)^2.
TwistFamily twist_polynomial(const ExactPoly& f, int d);
TwistFamily twist_polynomial(const WeierstrassModel& model, int d);

/// Disc_x(P) = unit * t^t_power * h(t) with h monic of degree 6 (4 when d = 3).
struct DiscriminantForm {
  int t_power = 0;
  Rational unit;
  ExactPoly h;
  int degree_h = 0;
  ExactPoly full;  // Disc_x(P) itself
  SquarefreeDecomposition decomposition;
  std::optional<ExactPoly> simple_factor;  // multiplicity one, coprime to t
  std::optional<Rational> positive_at;     // grid points k/64 witnessing each sign
  std::optional<Rational> negative_at;

  bool non_squarefull() const { return decomposition.non_squarefull(); }
  bool both_signs() const { return positive_at.has_value() && negative_at.has_value(); }
};

DiscriminantForm disc_form(const TwistFamily& family);

/// Primitive integral P(x, u/v) with positive leading coefficient.
ExactPoly specialize(const TwistFamily& family, const Integer& u, const Integer& v);

/// reduce_mod(F^2 - f G^2 at t = u/v, P_spec) == 0.
bool verify_new_point(const ExactPoly& p_spec, const TwistFamily& family, const Integer& u, const Integer& v);

struct FamilyOptions {
  Rational epsilon = Rational(1, 10);
  int max_retries = 8;
  std::optional<Integer> shift_a;  // per-parity default when unset
  std::optional<Rational> alpha;
  std::uint64_t prime_bound = 100000;
};

struct BuiltFamily {
  TwistFamily family;
  DiscriminantForm form;
  int retries = 0;
};

/// build_model with the per-parity targets (a, alpha) = (0, 0) for d = 3,
/// (1, 1) for odd d, (-1, -1) for even d, shrinking epsilon tenfold until the
/// discriminant form is non-squarefull with a simple factor and both signs.
BuiltFamily build_family(const Curve& curve, int d, const FamilyOptions& options = {});

/// f = p1^(-6k) f~(p1^(2k) x) with f~ = N^6 g(x / N^2) and p1^(2k) = 1 mod N,
/// so f = x^3 mod N and f is within epsilon of x^3 coefficientwise.
struct CongruenceModel {
  Curve curve;
  Integer modulus;
  Integer p1;
  long k = 0;
  ExactPoly f;
};

CongruenceModel congruence_model(const Curve& curve, const Integer& modulus, const Rational& epsilon);

}  // namespace sdtwist
