#include <random>
#include <stdexcept>

#include "parallel.hpp"
#include "sdtwist/enumerate.hpp"
#include "sdtwist/polyarith.hpp"

namespace sdtwist {

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// floor(Y^(e/2)) for e >= 0.
Integer floor_half_power(const Rational& Y, long twice_e) {
  return isqrt(floor_of(pow_rat(Y, twice_e)));
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace

std::pair<std::vector<Integer>, std::vector<Integer>> ev_boxes(int d, const Rational& Y) {
  if (d < 4) throw DomainError("ev boxes need d >= 4");
  if (Y < 1) throw DomainError("ev boxes need Y >= 1");
  std::vector<Integer> fb, gb;
  if (d % 2 == 0) {
    for (int k = 1; k <= d / 2; ++k) fb.push_back(floor_of(pow_rat(Y, k)));
    for (int k = 2; k <= d / 2; ++k) gb.push_back(floor_half_power(Y, 2 * k - 3));
  } else {
    for (int k = 0; k <= (d - 1) / 2; ++k) fb.push_back(floor_half_power(Y, 2 * k + 1));
    for (int k = 1; k <= (d - 3) / 2; ++k) gb.push_back(floor_of(pow_rat(Y, k)));
  }
  return {fb, gb};
}

Rational ev_bound_constant(const ExactPoly& f, int d) {
  Rational s = 1;
  for (const auto& c : f.coefficients()) s += abs(c);
  return Rational(d + 1) * s;
}

std::pair<ExactPoly, ExactPoly> ev_polys(int d, const std::vector<Integer>& f_coeffs,
                                         const std::vector<Integer>& g_coeffs) {
  // Coefficient lists run from the highest free power down.
  auto build = [](std::size_t top, bool monic, const std::vector<Integer>& free) {
    std::vector<Rational> c(top + 1);
    std::size_t deg = top;
    if (monic) c[deg--] = 1;
    for (std::size_t i = 0; i < free.size(); ++i) c[deg - i] = Rational(free[i]);
    return ExactPoly(std::move(c));
  };
  if (d % 2 == 0) {
    const std::size_t h = static_cast<std::size_t>(d / 2);
    if (f_coeffs.size() != h || g_coeffs.size() != h - 1) throw DomainError("ev box coordinate count mismatch");
    return {build(h, true, f_coeffs), build(h - 2, false, g_coeffs)};
  }
  const std::size_t fh = static_cast<std::size_t>((d - 1) / 2), gh = static_cast<std::size_t>((d - 3) / 2);
  if (f_coeffs.size() != fh + 1 || g_coeffs.size() != gh) throw DomainError("ev box coordinate count mismatch");
  return {build(fh, false, f_coeffs), build(gh, true, g_coeffs)};
}

EVRun ev_generate(const ExactPoly& f, int d, const Rational& Y, const EVConfig& config) {
  if (f.degree() != 3 || f.leading() != 1) throw DomainError("ev_generate needs a monic cubic");
  EVRun run;
  run.d = d;
  run.Y = Y;
  std::tie(run.f_bounds, run.g_bounds) = ev_boxes(d, Y);
  run.C = ev_bound_constant(f, d);
  run.seed = config.seed;

  std::vector<Integer> bounds = run.f_bounds;
  bounds.insert(bounds.end(), run.g_bounds.begin(), run.g_bounds.end());
  run.box_points = 1;
  for (const auto& b : bounds) run.box_points *= 2 * b + 1;
  run.exhaustive = run.box_points <= from_u64(config.exhaustive_limit);

  // Draw or enumerate coordinate tuples first, single-threaded.
  std::vector<std::vector<Integer>> tuples;
  if (run.exhaustive) {
    const std::uint64_t total = to_u64(run.box_points);
    tuples.reserve(total);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Integer> t(bounds.size());
      std::uint64_t rest = idx;
      for (std::size_t j = bounds.size(); j-- > 0;) {
        const std::uint64_t width = 2 * to_u64(bounds[j]) + 1;
        t[j] = from_u64(rest % width) - bounds[j];
        rest /= width;
      }
      tuples.push_back(std::move(t));
    }
  } else {
    gmp_randclass rng(gmp_randinit_mt);
    rng.seed(from_u64(config.seed));
    tuples.reserve(config.max_instances);
    for (std::size_t i = 0; i < config.max_instances; ++i) {
      std::vector<Integer> t(bounds.size());
      for (std::size_t j = 0; j < bounds.size(); ++j) t[j] = Integer(rng.get_z_range(2 * bounds[j] + 1)) - bounds[j];
      tuples.push_back(std::move(t));
    }
  }

  const std::size_t nf = run.f_bounds.size();
  run.instances.resize(tuples.size());
  detail::parallel_for(tuples.size(), config.workers, [&](std::size_t i) {
    EVInstance& inst = run.instances[i];
    inst.d = d;
    inst.Y = Y;
    const std::vector<Integer> fc(tuples[i].begin(), tuples[i].begin() + static_cast<long>(nf));
    const std::vector<Integer> gc(tuples[i].begin() + static_cast<long>(nf), tuples[i].end());
    std::tie(inst.F, inst.G) = ev_polys(d, fc, gc);
    inst.H = inst.F * inst.F - f * inst.G * inst.G;
    inst.identity_ok = inst.H.degree() == d && reduce_mod(inst.F * inst.F - f * inst.G * inst.G, inst.H).is_zero();
    inst.bounds_ok = abs(inst.H.leading()) == 1;
    Rational yk = 1;
    for (int k = 1; k <= d && inst.bounds_ok; ++k) {
      yk *= Y;
      if (abs(inst.H.coeff(static_cast<std::size_t>(d - k))) > run.C * yk) inst.bounds_ok = false;
    }
    if (!config.certify) return;
    if (discriminant(inst.H) == 0) {
      inst.status = SdStatus::inconclusive;
      inst.flag = "zero_discriminant";
      return;
    }
    inst.status = certify_sd(collect_evidence(inst.H, d, config.budget)).status;
    if (*inst.status != SdStatus::certified_Sd) inst.flag = "not_certified_Sd";
  });
  return run;
}

// ---- exponents ----------------------------------------------------------

Rational ev_exponent_direct(int d) {
  if (d < 4) throw DomainError("ev exponent needs d >= 4");
  Rational s = 0;
  if (d % 2 == 0) {
    for (int i = 1; i <= d / 2; ++i) s += i;
    for (int j = 2; j <= d / 2; ++j) s += Rational(j) - Rational(3, 2);
  } else {
    for (int k = 1; k <= (d - 3) / 2; ++k) s += k;
    for (int k = 0; k <= (d - 1) / 2; ++k) s += Rational(k) + Rational(1, 2);
  }
  return s;
}

Rational ev_exponent(int d) {
  if (d < 4) throw DomainError("ev exponent needs d >= 4");
  const Rational c = make_rational(Integer(d) * d, 4) - make_rational(d, 4) + Rational(1, 2);
  if (c != ev_exponent_direct(d)) throw std::logic_error("ev exponent disagrees with the box sum");
  return c;
}

std::string to_string(ExponentMode mode) {
  switch (mode) {
    case ExponentMode::small_degree: return "small_degree";
    case ExponentMode::large_degree: return "large_degree";
    case ExponentMode::field_improvement: return "field_improvement";
    case ExponentMode::conditional: return "conditional";
    default: return "theorem_general";
  }
}

ExponentMode parse_exponent_mode(const std::string& text) {
  for (auto m : {ExponentMode::theorem_general, ExponentMode::small_degree, ExponentMode::large_degree,
                 ExponentMode::field_improvement, ExponentMode::conditional})
    if (to_string(m) == text) return m;
  throw DomainError("unknown exponent mode '" + text + "'");
}

int exponent_mode_min_degree(ExponentMode mode) {
  switch (mode) {
    case ExponentMode::large_degree: return 5;
    case ExponentMode::field_improvement: return 7;
    default: return 3;
  }
}

Rational c_exponent(int d, ExponentMode mode) {
  if (d < exponent_mode_min_degree(mode))
    throw DomainError(to_string(mode) + " needs d >= " + std::to_string(exponent_mode_min_degree(mode)));
  const Integer D(d);
  switch (mode) {
    case ExponentMode::small_degree:
      if (d == 3) return Rational(1, 3);
      if (d == 4) return Rational(1, 4);
      return make_rational(1, (d + 1) / 2 + 2);
    case ExponentMode::large_degree:
      return Rational(1, 4) - make_rational(D * D + 4 * D - 2, 2 * D * D * (D - 1));
    case ExponentMode::field_improvement:
      return Rational(1, 4) - make_rational(1, 2 * D);
    case ExponentMode::conditional:
      return Rational(1, 4) + make_rational(1, 2 * (D * D - D));
    case ExponentMode::theorem_general: {
      const Rational small = c_exponent(d, ExponentMode::small_degree);
      if (d < 5) return small;
      const Rational large = c_exponent(d, ExponentMode::large_degree);
      return small > large ? small : large;
    }
  }
  throw std::logic_error("unhandled exponent mode");
}

Rational ev_alpha(int d, int r, int k) {
  if (d < 3 || r < 1 || k < 1) throw DomainError("ev_alpha needs d >= 3 and r, k >= 1");
  return make_rational(4 * k, d - 2) * Rational(binomial(static_cast<unsigned long>(r + 4 * k), static_cast<unsigned long>(r)));
}

bool ev_constraint(int d, int r, int k) {
  return 2 * binomial(static_cast<unsigned long>(r + k), static_cast<unsigned long>(r)) > d;
}

namespace {

// Smallest k >= 1 with C(r+k, r) > d/2; the left side is increasing in k.
int smallest_feasible_k(int d, int r) {
  int hi = 1;
  while (!ev_constraint(d, r, hi)) hi *= 2;
  int lo = hi / 2 + 1;
  if (hi == 1) return 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (ev_constraint(d, r, mid)) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace

AlphaBound schmidt_ev_alpha(int d, int max_r) {
  if (d < 3) throw DomainError("schmidt_ev_alpha needs d >= 3");
  if (max_r < 2) throw DomainError("schmidt_ev_alpha searches r >= 2 at least");
  AlphaBound out;
  out.schmidt = make_rational(d + 2, 4);
  out.target = make_rational(d, 4) - Rational(3, 4) + make_rational(1, 2 * d);
  bool have = false;
  for (int r = 1; r <= max_r; ++r) {
    const int k = smallest_feasible_k(d, r);
    const Rational a = ev_alpha(d, r, k);
    if (r == 2) {
      out.r2_k = k;
      out.r2_alpha = a;
      out.r2_reaches_target = a <= out.target;
    }
    if (!have || a < out.ev_best) {
      out.ev_best = a;
      out.ev_rk = {r, k};
      have = true;
    }
  }
  out.alpha = out.ev_best < out.schmidt ? out.ev_best : out.schmidt;
  if (out.ev_best < out.schmidt) out.witness = out.ev_rk;
  return out;
}

}  // namespace sdtwist
