#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "parallel.hpp"
#include "sdtwist/enumerate.hpp"
#include "sdtwist/polyarith.hpp"
#include "sdtwist/primes.hpp"

namespace sdtwist {

Integer BinaryForm::operator()(const Integer& u, const Integer& v) const {
  // Horner in u with v powers folded in: ((c0 u + c1 v) u + c2 v^2) ...
  Integer acc = 0, vpow = 1;
  const int n = degree();
  std::vector<Integer> vp(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    vp[static_cast<std::size_t>(i)] = vpow;
    vpow *= v;
  }
  for (int i = 0; i <= n; ++i) acc = acc * u + coeffs[static_cast<std::size_t>(i)] * vp[static_cast<std::size_t>(i)];
  return acc;
}

std::string BinaryForm::str() const {
  std::ostringstream os;
  const int n = degree();
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    const Integer& c = coeffs[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    const Integer a = abs(c);
    const int eu = n - i, ev = i;
    bool wrote = false;
    if (a != 1 || (eu == 0 && ev == 0)) {
      os << a;
      wrote = true;
    }
    auto var = [&](const char* name, int e) {
      if (e == 0) return;
      if (wrote) os << '*';
      os << name;
      if (e > 1) os << '^' << e;
      wrote = true;
    };
    var("u", eu);
    var("v", ev);
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

std::uint64_t powmod(std::uint64_t b, unsigned e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

// F(a, b) mod m for residues a, b.
std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const unsigned n = static_cast<unsigned>(c.size() - 1);
  unsigned __int128 acc = 0;
  for (unsigned i = 0; i <= n; ++i)
    acc = (acc + static_cast<unsigned __int128>(c[i]) * powmod(a, n - i, m) % m * powmod(b, i, m)) % m;
  return static_cast<std::uint64_t>(acc);
}

// Squarefreeness of a value, with the partial policy of squarefree_kernel.
enum class Verdict { squarefree, not_squarefree, partial };

Verdict classify_u64(std::uint64_t n, const std::vector<std::uint64_t>& primes, std::uint64_t bound) {
  if (n == 0) return Verdict::not_squarefree;
  bool small_exhausted = false;
  for (std::uint64_t p : primes) {
    if (n == 1) break;
    if (static_cast<unsigned __int128>(p) * p * p > n) {
      small_exhausted = true;
      break;
    }
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return Verdict::not_squarefree;
    }
  }
  if (n == 1) return Verdict::squarefree;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r == n) return Verdict::not_squarefree;
  if (small_exhausted) return Verdict::squarefree;
  const unsigned __int128 limit = static_cast<unsigned __int128>(bound + 1) * (bound + 1) * (bound + 1);
  return n < limit ? Verdict::squarefree : Verdict::partial;
}

Verdict classify(const Integer& value, const std::vector<std::uint64_t>& primes, std::uint64_t bound) {
  const Integer n = abs(value);
  if (fits_u64(n)) return classify_u64(to_u64(n), primes, bound);
  Integer c = n;
  bool small_exhausted = false;
  Integer p3;
  for (std::uint64_t p : primes) {
    p3 = from_u64(p);
    p3 = p3 * p3 * p3;
    if (p3 > c) {
      small_exhausted = true;
      break;
    }
    if (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
      if (mpz_divisible_ui_p(c.get_mpz_t(), p)) return Verdict::not_squarefree;
    }
  }
  if (c == 1) return Verdict::squarefree;
  if (is_perfect_square(c)) return Verdict::not_squarefree;
  if (small_exhausted) return Verdict::squarefree;
  Integer limit = from_u64(bound) + 1;
  limit = limit * limit * limit;
  return c < limit ? Verdict::squarefree : Verdict::partial;
}

std::vector<Integer> axis(const Integer& bound, const std::optional<Congruence>& cong, bool second) {
  std::vector<Integer> out;
  const long b = bound.get_si();
  for (long x = -b; x <= b; ++x) {
    if (cong) {
      Integer r;
      const Integer diff = Integer(x) - (second ? cong->v0 : cong->u0);
      mpz_fdiv_r(r.get_mpz_t(), diff.get_mpz_t(), cong->modulus.get_mpz_t());
      if (r != 0) continue;
    }
    out.emplace_back(x);
  }
  return out;
}

}  // namespace

std::uint64_t local_root_count(const BinaryForm& form, std::uint64_t p) {
  if (!is_prime(p)) throw DomainError("local_root_count needs a prime");
  const int n = form.degree();
  if (n < 0) throw DomainError("empty binary form");
  const std::uint64_t m = p * p;
  std::vector<std::uint64_t> c;
  for (const auto& x : form.coeffs) c.push_back(mod_u64(x, m));
  const std::uint64_t units = m - p;
  if (n == 0) return c[0] == 0 ? m * m : 0;

  // v a unit: (u, v) = v (x, 1). u a unit, p | v: (u, v) = u (1, y).
  std::uint64_t a = 0, b = 0;
  for (std::uint64_t x = 0; x < m; ++x)
    if (eval_mod(c, x, 1, m) == 0) ++a;
  for (std::uint64_t y = 0; y < m; y += p)
    if (eval_mod(c, 1, y, m) == 0) ++b;
  // Both divisible by p: F = p^n F(u', v').
  std::uint64_t both = 0;
  if (n >= 2) {
    both = p * p;
  } else {
    for (std::uint64_t s = 0; s < p; ++s)
      for (std::uint64_t t = 0; t < p; ++t)
        if (eval_mod(c, s, t, p) == 0) ++both;
  }
  return units * a + units * b + both;
}

DensityReport greaves_density(const BinaryForm& form, const DensityConfig& config) {
  const int n = form.degree();
  if (n < 0) throw DomainError("empty binary form");
  if (n > 6) throw DomainError("greaves_density needs degree at most 6");
  if (std::all_of(form.coeffs.begin(), form.coeffs.end(), [](const Integer& x) { return x == 0; }))
    throw DomainError("zero binary form");
  const Integer Uv = config.U_v.value_or(config.U);
  if (config.U < 1 || Uv < 1) throw DomainError("density box bounds must be at least 1");
  if (!config.U.fits_slong_p() || !Uv.fits_slong_p()) throw DomainError("density box too large");
  if (config.congruence && config.congruence->modulus < 1) throw DomainError("congruence modulus must be positive");

  DensityReport out;

  // Warnings for forms with a fixed square factor.
  Integer content = 0;
  for (const auto& x : form.coeffs) content = gcd(content, x);
  if (content > 1 && squarefree_kernel(content, 1000000).kernel != content)
    out.warnings.push_back("content " + content.get_str() + " has a square factor; density is 0");
  if (n >= 2 && form.coeffs[0] == 0 && form.coeffs[1] == 0) out.warnings.push_back("form is divisible by v^2");
  {
    std::vector<Integer> f(form.coeffs.rbegin(), form.coeffs.rend());  // F(x, 1)
    const ExactPoly fx = from_integers(f);
    if (fx.degree() >= 2 && !is_squarefree(fx)) out.warnings.push_back("form has a repeated factor");
  }

  const auto us = axis(config.U, config.congruence, false);
  const auto vs = axis(Uv, config.congruence, true);
  const std::uint64_t box = static_cast<std::uint64_t>(us.size()) * vs.size();
  out.exhaustive = box <= config.samples;
  const std::size_t count = out.exhaustive ? static_cast<std::size_t>(box) : config.samples;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> picks(count);
  if (out.exhaustive) {
    for (std::size_t i = 0; i < count; ++i)
      picks[i] = {static_cast<std::uint32_t>(i / vs.size()), static_cast<std::uint32_t>(i % vs.size())};
  } else {
    std::mt19937_64 rng(config.seed);
    for (auto& pk : picks) {
      pk.first = static_cast<std::uint32_t>(rng() % us.size());
      pk.second = static_cast<std::uint32_t>(rng() % vs.size());
    }
  }

  const auto& primes = primes_up_to(config.trial_bound);
  std::vector<Verdict> verdicts(count);
  detail::parallel_for(count, config.workers, [&](std::size_t i) {
    verdicts[i] = classify(form(us[picks[i].first], vs[picks[i].second]), primes, config.trial_bound);
  });
  out.points = count;
  for (Verdict v : verdicts) {
    if (v == Verdict::squarefree) ++out.squarefree;
    else if (v == Verdict::partial) ++out.partial;
  }
  const std::size_t decided = out.points - out.partial;
  out.empirical = decided ? static_cast<double>(out.squarefree) / static_cast<double>(decided) : 0.0;
  if (out.partial) out.warnings.push_back(std::to_string(out.partial) + " values left unresolved by trial division");

  double product = 1;
  for (std::uint64_t p : primes_up_to(config.local_bound)) {
    const double p4 = std::pow(static_cast<double>(p), 4);
    product *= 1.0 - static_cast<double>(local_root_count(form, p)) / p4;
  }
  out.local_product = product;
  if (out.empirical < 1e-3) out.warnings.push_back("density is essentially zero");
  return out;
}

}  // namespace sdtwist
