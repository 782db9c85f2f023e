#include "sdtwist/family.hpp"

#include "sdtwist/padic.hpp"
#include "sdtwist/primes.hpp"

namespace sdtwist {

namespace {

ExactPoly X() { return ExactPoly::variable(); }
ExactPoly constant(const Rational& c) { return ExactPoly::constant(c); }

BivarPoly lift(const ExactPoly& f) {
  std::vector<ExactPoly> v;
  for (const auto& c : f.coefficients()) v.push_back(ExactPoly::constant(c));
  return BivarPoly(std::move(v));
}

BivarPoly x_power(std::size_t k, const ExactPoly& coeff = ExactPoly::constant(Rational(1))) {
  return BivarPoly::monomial(coeff, k);
}

// Smallest positive e with base^e = 1 mod m.
long multiplicative_order(const Integer& base, const Integer& m) {
  if (gcd(base, m) != 1) throw DomainError("order of a non-unit");
  Integer acc = base % m;
  if (acc < 0) acc += m;
  long e = 1;
  while (acc != 1 % m) {
    acc = (acc * base) % m;
    ++e;
  }
  return e;
}

Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

bool close_to(const ExactPoly& f, const Rational& alpha, const Rational& eps) {
  return abs_rat(f.coeff(2) - 3 * alpha) < eps && abs_rat(f.coeff(1) - 3 * alpha * alpha) < eps &&
         abs_rat(f.coeff(0) - alpha * alpha * alpha) < eps;
}

// Nearest integer, halves rounded up.
Integer round_rat(const Rational& r) { return floor_of(r + Rational(1, 2)); }

}  // namespace

ExactPoly Curve::cubic() const {
  return from_integers({b, a, Integer(0), Integer(1)});
}

Integer Curve::discriminant() const { return -4 * a * a * a - 27 * b * b; }

ExactPoly WeierstrassModel::cubic() const {
  return ExactPoly(std::vector<Rational>{D, C, B, Rational(1)});
}

Integer excluded_product(const Curve& curve, int d) {
  const Integer disc = curve.discriminant();
  if (disc == 0) throw DomainError("singular curve");
  Integer s = 6 * Integer(d) * disc;
  if (d != 3) s *= Integer(d - 3);
  return abs(s);
}

WeierstrassModel build_model(const Curve& curve, const Integer& shift_a, const Rational& alpha,
                             const Rational& epsilon, int d, std::uint64_t prime_bound) {
  if (d < 3) throw DomainError("degree must be at least 3");
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  const Integer excluded = excluded_product(curve, d);
  const ExactPoly g = curve.cubic();
  const ExactPoly dg = g.derivative();

  WeierstrassModel m;
  m.curve = curve;
  m.d = d;
  m.target_shift = shift_a;
  m.target_alpha = alpha;
  m.epsilon = epsilon;

  const auto primes = primes_up_to(prime_bound);
  auto admissible = [&](std::uint64_t p) { return !mpz_divisible_ui_p(excluded.get_mpz_t(), p); };

  // p2 and a simple root r of g mod p2, lifted so that p2 || g(r).
  bool found = false;
  for (std::uint64_t p : primes) {
    if (!admissible(p)) continue;
    const Integer pz = from_u64(p);
    for (std::uint64_t r0 = 0; r0 < p && !found; ++r0) {
      const Rational gr = g.evaluate(Rational(from_u64(r0)));
      if (gr.get_num() % pz != 0 || dg.evaluate(Rational(from_u64(r0))).get_num() % pz == 0) continue;
      for (std::uint64_t j = 0; j < p && !found; ++j) {
        const Integer r = from_u64(r0) + from_u64(j) * pz;
        const Rational val = g.evaluate(Rational(r));
        if (val != 0 && valuation_int(val.get_num(), pz) == 1) {
          m.p2 = pz;
          m.shift_r = r;
          found = true;
        }
      }
    }
    if (found) break;
  }
  if (!found) throw DomainError("no admissible p2 below the prime bound");
  m.f_r = g.compose(X() + constant(Rational(m.shift_r)));

  for (std::uint64_t p : primes) {
    if (admissible(p) && from_u64(p) != m.p2) {
      m.p3 = from_u64(p);
      break;
    }
  }
  for (std::uint64_t p : primes) {
    if (admissible(p) && from_u64(p) != m.p2 && from_u64(p) != m.p3) {
      m.p1 = from_u64(p);
      break;
    }
  }
  if (m.p3 == 0 || m.p1 == 0) throw DomainError("no admissible p1/p3 below the prime bound");

  // x -> (x + s) / p3^2 with s = a (p2 p2bar)^2, p2 p2bar = 1 mod p3^2.
  const Integer p3sq = m.p3 * m.p3;
  Integer p2bar;
  mpz_invert(p2bar.get_mpz_t(), m.p2.get_mpz_t(), p3sq.get_mpz_t());
  const Integer s = shift_a * m.p2 * m.p2 * p2bar * p2bar;
  const Rational p3sq_r(p3sq);
  m.f_tilde = m.f_r.compose((X() + constant(Rational(s))) * Rational(Rational(1) / p3sq_r)) *
              Rational(p3sq * p3sq * p3sq);

  // u in Z[1/p1], divisible by p2^2 p3, with |u^i - alpha^i| < eps/4.
  const Integer q = m.p2 * m.p2 * m.p3;
  const Rational quarter = epsilon / 4;
  for (long j = 0;; ++j) {
    if (j > 4000) throw DomainError("no p1-adic approximation of alpha found");
    const Integer pj = pow_int(m.p1, static_cast<unsigned long>(j));
    const Rational u = make_rational(round_rat(alpha * Rational(pj) / Rational(q)) * q, pj);
    if (abs_rat(u - alpha) < quarter && abs_rat(u * u - alpha * alpha) < quarter &&
        abs_rat(u * u * u - alpha * alpha * alpha) < quarter) {
      m.u = u;
      break;
    }
  }

  // Smallest k (a multiple of ord_{p3}(p1^2) unless a = 0 mod p3) meeting (iv).
  const long step = (shift_a % m.p3 == 0) ? 1 : multiplicative_order(m.p1 * m.p1, m.p3);
  for (long n = 1;; ++n) {
    if (n > 2000) throw DomainError("rescaling exponent search exhausted");
    const long k = n * step;
    const Rational scale(pow_int(m.p1, static_cast<unsigned long>(2 * k)));
    const ExactPoly f = m.f_tilde.compose((X() + constant(m.u)) * scale) *
                        Rational(Rational(1) / (scale * scale * scale));
    if (close_to(f, alpha, epsilon)) {
      m.k = k;
      m.D = f.coeff(0);
      m.C = f.coeff(1);
      m.B = f.coeff(2);
      break;
    }
  }
  return m;
}

ModelCheck verify_model(const WeierstrassModel& model) {
  ModelCheck out;
  const ExactPoly f = model.cubic();
  out.nonsingular = discriminant(f) != 0;
  out.denominators = true;
  for (const Rational* c : {&model.B, &model.C, &model.D}) {
    Integer den = c->get_den();
    if (model.p1 > 1) mpz_remove(den.get_mpz_t(), den.get_mpz_t(), model.p1.get_mpz_t());
    if (den != 1) out.denominators = false;
  }
  out.p2_condition = is_prime(model.p2) && model.D != 0 && valuation(model.D, model.p2) == 1 &&
                     model.C != 0 && valuation(model.C, model.p2) == 0;
  out.p3_congruence = is_prime(model.p3);
  if (out.p3_congruence) {
    const ExactPoly shifted = X() + constant(Rational(model.target_shift));
    const ExactPoly diff = f - shifted * shifted * shifted;
    for (const auto& c : diff.coefficients())
      if (valuation(c, model.p3) < 1) out.p3_congruence = false;
  }
  out.close_to_target = model.epsilon > 0 && close_to(f, model.target_alpha, model.epsilon);
  return out;
}

std::string to_string(ParityCase c) {
  switch (c) {
    case ParityCase::cubic: return "d=3";
    case ParityCase::even: return "even";
    case ParityCase::odd: return "odd";
  }
  return "";
}

bool TwistFamily::identity_holds() const {
  return F * F - lift(f) * G * G == P * ExactPoly::constant(Rational(identity_sign));
}

TwistFamily twist_polynomial(const ExactPoly& f, int d) {
  if (d < 3) throw DomainError("twist family needs d >= 3");
  if (f.degree() != 3) throw DomainError("twist family needs a cubic f");
  TwistFamily fam;
  fam.d = d;
  fam.f = f;
  const ExactPoly t = ExactPoly::variable();
  const ExactPoly one = ExactPoly::constant(Rational(1));
  const BivarPoly lf = lift(f);
  if (d == 3) {
    fam.parity = ParityCase::cubic;
    const BivarPoly xt = x_power(1) + BivarPoly::constant(t);
    fam.P = lf - xt * xt;
    fam.F = xt;
    fam.G = BivarPoly::constant(one);
    fam.identity_sign = -1;
  } else if (d % 2 == 0) {
    fam.parity = ParityCase::even;
    fam.P = x_power(static_cast<std::size_t>(d), t * t) - lf;
    fam.F = x_power(static_cast<std::size_t>(d / 2), t);
    fam.G = BivarPoly::constant(one);
    fam.identity_sign = 1;
  } else {
    fam.parity = ParityCase::odd;
    fam.P = lf.shifted_up(static_cast<std::size_t>(d - 3)) - BivarPoly::constant(t * t);
    fam.F = BivarPoly::constant(t);
    fam.G = x_power(static_cast<std::size_t>((d - 3) / 2));
    fam.identity_sign = -1;
  }
  return fam;
}

TwistFamily twist_polynomial(const WeierstrassModel& model, int d) {
  TwistFamily fam = twist_polynomial(model.cubic(), d);
  fam.model = model;
  return fam;
}

DiscriminantForm disc_form(const TwistFamily& family) {
  DiscriminantForm out;
  const int d = family.d;
  out.full = discriminant_in_t(family.P);
  out.t_power = d == 3 ? 0 : 2 * d - 8;
  const int expected = d == 3 ? 4 : 6;
  for (int i = 0; i < out.t_power; ++i)
    if (out.full.coeff(static_cast<std::size_t>(i)) != 0)
      throw DomainError("discriminant is not divisible by t^" + std::to_string(out.t_power));
  std::vector<Rational> rest(out.full.coefficients().begin() + std::min<std::ptrdiff_t>(out.t_power, out.full.size()),
                             out.full.coefficients().end());
  const ExactPoly h_raw(std::move(rest));
  if (h_raw.degree() != expected)
    throw DomainError("discriminant cofactor has degree " + std::to_string(h_raw.degree()) + ", expected " +
                      std::to_string(expected));
  out.unit = h_raw.leading();
  out.h = monic(h_raw);
  out.degree_h = out.h.degree();
  out.decomposition = squarefree_decompose(out.h);
  for (const auto& fac : out.decomposition.factors) {
    if (fac.multiplicity != 1) continue;
    ExactPoly g = fac.factor;
    while (g.degree() >= 1 && g.coeff(0) == 0) g = divrem(g, X()).first;
    if (g.degree() >= 1) out.simple_factor = g;
  }
  for (long k = -64; k <= 64; ++k) {
    const Rational t0 = make_rational(Integer(k), Integer(64));
    const int s = sign(out.full.evaluate(t0));
    if (s > 0 && !out.positive_at) out.positive_at = t0;
    if (s < 0 && !out.negative_at) out.negative_at = t0;
  }
  return out;
}

ExactPoly specialize(const TwistFamily& family, const Integer& u, const Integer& v) {
  if (v == 0) throw DomainError("specialization with v = 0");
  if (gcd(u, v) != 1) throw DomainError("specialization needs gcd(u, v) = 1");
  const ExactPoly p = specialize_t(family.P, make_rational(u, v));
  if (p.is_zero()) throw DomainError("specialization vanishes identically");
  return primitive_part(p).primitive;
}

bool verify_new_point(const ExactPoly& p_spec, const TwistFamily& family, const Integer& u, const Integer& v) {
  if (v == 0) throw DomainError("specialization with v = 0");
  if (p_spec.degree() != family.d) throw DomainError("specialized polynomial does not have degree d");
  const Rational t0 = make_rational(u, v);
  const ExactPoly F = specialize_t(family.F, t0);
  const ExactPoly G = specialize_t(family.G, t0);
  const ExactPoly H = F * F - family.f * G * G;
  return reduce_mod(H, p_spec).is_zero();
}

BuiltFamily build_family(const Curve& curve, int d, const FamilyOptions& options) {
  Integer a = d == 3 ? 0 : (d % 2 ? 1 : -1);
  Rational alpha(a);
  if (options.shift_a) a = *options.shift_a;
  if (options.alpha) alpha = *options.alpha;
  Rational eps = options.epsilon;
  std::string last_issue;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt, eps /= 10) {
    const WeierstrassModel model = build_model(curve, a, alpha, eps, d, options.prime_bound);
    BuiltFamily out;
    out.family = twist_polynomial(model, d);
    out.form = disc_form(out.family);
    out.retries = attempt;
    if (out.form.non_squarefull() && out.form.simple_factor && out.form.both_signs()) return out;
    last_issue = out.form.both_signs() ? "squarefull discriminant" : "discriminant of one sign on the grid";
  }
  throw DomainError("no admissible model after shrinking epsilon: " + last_issue);
}

CongruenceModel congruence_model(const Curve& curve, const Integer& modulus, const Rational& epsilon) {
  if (modulus < 2) throw DomainError("modulus must be at least 2");
  if (epsilon <= 0) throw DomainError("epsilon must be positive");
  const Integer excluded = abs(6 * modulus * curve.discriminant());
  if (excluded == 0) throw DomainError("singular curve");
  CongruenceModel out;
  out.curve = curve;
  out.modulus = modulus;
  for (std::uint64_t p = 2;; p = next_prime(p)) {
    if (!mpz_divisible_ui_p(excluded.get_mpz_t(), p)) {
      out.p1 = from_u64(p);
      break;
    }
  }
  const Integer n2 = modulus * modulus;
  const Integer a_t = curve.a * n2 * n2;
  const Integer b_t = curve.b * n2 * n2 * n2;
  const long step = multiplicative_order(out.p1 * out.p1, modulus);
  for (long n = 1;; ++n) {
    if (n > 2000) throw DomainError("rescaling exponent search exhausted");
    const long k = n * step;
    const Integer s = pow_int(out.p1, static_cast<unsigned long>(2 * k));
    const ExactPoly f(std::vector<Rational>{make_rational(b_t, s * s * s), make_rational(a_t, s * s), Rational(0),
                                            Rational(1)});
    if (close_to(f, Rational(0), epsilon)) {
      out.k = k;
      out.f = f;
      return out;
    }
  }
}

}  // namespace sdtwist
