#include <map>
#include <memory>
#include <mutex>

#include "sdtwist/enumerate.hpp"
#include "sdtwist/primes.hpp"

namespace sdtwist {

namespace {

const std::vector<std::uint64_t>& cached_primes(std::uint64_t bound) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<std::vector<std::uint64_t>>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[bound];
  if (!slot) slot = std::make_unique<std::vector<std::uint64_t>>(primes_up_to(bound));
  return *slot;
}

// Divides out primes p <= B from |n|; stops early once p^3 exceeds what is
// left, since the rest then has at most two prime factors.
struct TrialResult {
  Integer kernel;
  Integer cofactor;
  bool exhausted_small = false;  // stopped because p^3 > cofactor
};

TrialResult trial_divide(const Integer& n, std::uint64_t bound) {
  TrialResult out;
  out.kernel = sign(n);
  out.cofactor = abs(n);
  Integer p_cubed;
  for (std::uint64_t p : cached_primes(bound)) {
    if (out.cofactor == 1) break;
    p_cubed = from_u64(p);
    p_cubed = p_cubed * p_cubed * p_cubed;
    if (p_cubed > out.cofactor) {
      out.exhausted_small = true;
      break;
    }
    if (!mpz_divisible_ui_p(out.cofactor.get_mpz_t(), p)) continue;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(out.cofactor.get_mpz_t(), p)) {
      mpz_divexact_ui(out.cofactor.get_mpz_t(), out.cofactor.get_mpz_t(), p);
      ++e;
    }
    if (e & 1) out.kernel *= from_u64(p);
  }
  return out;
}

// Whether a cofactor free of primes <= B is known squarefree-or-square.
bool cofactor_resolved(const TrialResult& t, std::uint64_t bound) {
  if (t.cofactor == 1 || t.exhausted_small) return true;
  Integer limit = from_u64(bound) + 1;
  limit = limit * limit * limit;
  return t.cofactor < limit;
}

// Brent's variant of Pollard rho. Returns a proper factor or 0.
Integer pollard_rho(const Integer& n, std::uint64_t iterations) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c <= 3; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys, tmp;
    std::uint64_t r = 1, steps = 0;
    const std::uint64_t m = 64;
    auto f = [&](Integer& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    while (g == 1 && steps < iterations) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) f(y);
      std::uint64_t k = 0;
      while (k < r && g == 1 && steps < iterations) {
        ys = y;
        const std::uint64_t run = std::min(m, r - k);
        for (std::uint64_t i = 0; i < run; ++i) {
          f(y);
          tmp = abs(x - y);
          q *= tmp;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        steps += run;
        g = gcd(q, n);
        k += run;
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time from the saved point.
      do {
        f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != 1 && g != n) return g;
    if (g == 1) return 0;  // out of iterations; a new constant will not help
  }
  return 0;
}

}  // namespace

SquarefreeKernel squarefree_kernel(const Integer& n, std::uint64_t trial_bound) {
  if (n == 0) throw DomainError("squarefree kernel of zero");
  TrialResult t = trial_divide(n, trial_bound);
  SquarefreeKernel out;
  out.trial_bound = trial_bound;
  if (t.cofactor == 1 || is_perfect_square(t.cofactor)) {
    out.kernel = t.kernel;
    out.complete = true;
    return out;
  }
  if (cofactor_resolved(t, trial_bound)) {
    out.kernel = t.kernel * t.cofactor;
    out.complete = true;
    return out;
  }
  out.kernel = t.kernel;
  out.cofactor = t.cofactor;
  return out;
}

SquarefreeKernel squarefree_kernel_split(const Integer& n, std::uint64_t trial_bound,
                                         std::uint64_t rho_iterations) {
  SquarefreeKernel out = squarefree_kernel(n, trial_bound);
  if (out.complete || rho_iterations == 0) return out;

  // Factor the cofactor into primes; a piece that resists stays unresolved.
  std::map<Integer, int> primes;
  Integer unresolved = 1;
  std::vector<Integer> stack{out.cofactor};
  while (!stack.empty()) {
    Integer q = stack.back();
    stack.pop_back();
    if (q == 1) continue;
    if (is_perfect_square(q)) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), q.get_mpz_t());
      stack.push_back(s);
      stack.push_back(s);
      continue;
    }
    if (is_prime(q)) {
      ++primes[q];
      continue;
    }
    const Integer g = pollard_rho(q, rho_iterations);
    if (g == 0) {
      unresolved *= q;
      continue;
    }
    stack.push_back(g);
    stack.push_back(q / g);
  }
  Integer extra = 1;
  for (const auto& [p, e] : primes)
    if (e & 1) extra *= p;
  if (unresolved == 1) {
    out.kernel *= extra;
    out.complete = true;
    out.cofactor = 1;
  } else {
    out.cofactor = unresolved;
  }
  return out;
}

}  // namespace sdtwist
