#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "sdtwist/enumerate.hpp"
#include "sdtwist/polyarith.hpp"
#include "sdtwist/primes.hpp"

using namespace sdtwist;

namespace {

const Curve kCurve{Integer(0), Integer(-2)};

// Kernel by full trial division up to sqrt(|n|).
Integer kernel_oracle(long long n) {
  Integer k = n < 0 ? -1 : 1;
  unsigned long long m = static_cast<unsigned long long>(n < 0 ? -n : n);
  for (unsigned long long p = 2; p * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e & 1) k *= static_cast<unsigned long>(p);
  }
  if (m > 1) k *= static_cast<unsigned long>(m);
  return k;
}

// rho(p^2) by counting every residue pair.
std::uint64_t brute_rho(const BinaryForm& f, std::uint64_t p) {
  const std::uint64_t m = p * p;
  std::uint64_t count = 0;
  for (std::uint64_t u = 0; u < m; ++u)
    for (std::uint64_t v = 0; v < m; ++v) {
      Integer val = f(from_u64(u), from_u64(v));
      if (mod_u64(val, m) == 0) ++count;
    }
  return count;
}

std::string fingerprint(const SweepResult& r) {
  std::ostringstream os;
  for (const auto& c : r.candidates)
    os << c.u << ',' << c.v << ',' << to_string(c.poly) << ',' << c.disc << ',' << c.kernel.kernel << ','
       << c.kernel.complete << ',' << to_string(c.certificate.status) << ',' << c.certificate.route << ','
       << c.point_verified << ',' << c.failure << ';';
  for (const auto& [u, v] : r.degenerate) os << 'D' << u << ',' << v;
  return os.str();
}

FieldCandidate counted(long disc) {
  FieldCandidate c;
  c.disc = disc;
  c.disc_sign = disc < 0 ? -1 : 1;
  c.kernel = squarefree_kernel(disc, 1000);
  c.certificate.status = SdStatus::certified_Sd;
  c.point_verified = true;
  return c;
}

}  // namespace

TEST_CASE("squarefree kernel examples") {
  auto a = squarefree_kernel(360, 100);
  CHECK(a.kernel == 10);
  CHECK(a.complete);
  auto b = squarefree_kernel(-48, 100);
  CHECK(b.kernel == -3);
  CHECK(b.complete);
  auto c = squarefree_kernel(4 * 10007, 10);
  CHECK_FALSE(c.complete);
  CHECK(c.kernel == 1);
  CHECK(c.cofactor == 10007);
  auto split = squarefree_kernel_split(4 * 10007, 10, 1000);
  CHECK(split.complete);
  CHECK(split.kernel == 10007);
  CHECK_THROWS_AS(squarefree_kernel(0, 10), DomainError);

  // Two large primes, and a large square times 3.
  const Integer p = 1000003, q = 1000033;
  CHECK_FALSE(squarefree_kernel(p * q, 100).complete);
  auto pq = squarefree_kernel_split(p * q, 100, 100000);
  CHECK(pq.complete);
  CHECK(pq.kernel == p * q);
  auto sq = squarefree_kernel(3 * p * p, 100);
  CHECK(sq.complete);
  CHECK(sq.kernel == 3);
  auto shared = squarefree_kernel_split(-7 * p * p * q * q * q, 100, 100000);
  CHECK(shared.complete);
  CHECK(shared.kernel == -7 * q);
}

TEST_CASE("complete kernels agree with full factorization") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> dist(-1000000000000L, 1000000000000L);
  int complete = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const long n = dist(rng);
    if (n == 0) continue;
    const auto k = squarefree_kernel(n, 1000);
    if (k.complete) {
      ++complete;
      CHECK(k.kernel == kernel_oracle(n));
      const Integer ratio = Integer(n) / k.kernel;
      CHECK(Integer(n) % k.kernel == 0);
      CHECK(is_perfect_square(ratio));
    }
    const auto s = squarefree_kernel_split(n, 1000, 100000);
    REQUIRE(s.complete);
    CHECK(s.kernel == kernel_oracle(n));
  }
  CHECK(complete > 0);
}

TEST_CASE("sweep over the cubic family") {
  const auto built = build_family(kCurve, 3);
  SweepConfig cfg;
  cfg.U = 25;
  cfg.budget = {20, 2000, {}};
  const auto res = sweep(built.family, cfg);
  int good = 0;
  for (const auto& c : res.candidates) {
    CHECK(gcd(c.u, c.v) == 1);
    CHECK(c.v >= 1);
    CHECK(c.poly.degree() == 3);
    CHECK(c.point_verified);
    if (c.certificate.status == SdStatus::certified_Sd && c.point_verified) ++good;
    if (c.disc != 0 && c.kernel.complete) {
      CHECK(c.disc % c.kernel.kernel == 0);
      CHECK(is_perfect_square(c.disc / c.kernel.kernel));
    }
  }
  CHECK(good >= 100);
  CHECK(res.degenerate.empty());
  for (std::size_t i = 1; i < res.candidates.size(); ++i) {
    const auto& a = res.candidates[i - 1];
    const auto& b = res.candidates[i];
    CHECK((a.u < b.u || (a.u == b.u && a.v < b.v)));
  }

  SweepConfig pos = cfg;
  pos.region = SignRegion::positive;
  const auto rp = sweep(built.family, pos);
  CHECK_FALSE(rp.candidates.empty());
  for (const auto& c : rp.candidates) CHECK(c.disc_sign == 1);
  CHECK(rp.region_rejected + rp.candidates.size() == res.candidates.size());

  SweepConfig cong = cfg;
  cong.congruence = Congruence{1, 1, 5};
  const auto rc = sweep(built.family, cong);
  CHECK_FALSE(rc.candidates.empty());
  for (const auto& c : rc.candidates) {
    CHECK(mod_u64(c.u, 5) == 1);
    CHECK(mod_u64(c.v, 5) == 1);
    CHECK(c.residue_u == 1);
    CHECK(c.residue_v == 1);
  }
  SweepConfig bad = cfg;
  bad.congruence = Congruence{5, 10, 5};
  CHECK_THROWS_AS(sweep(built.family, bad), DomainError);
}

TEST_CASE("sweep is deterministic across runs and worker counts") {
  const auto built = build_family(kCurve, 4);
  SweepConfig cfg;
  cfg.U = 8;
  cfg.budget = {15, 2000, {}};
  const std::string one = fingerprint(sweep(built.family, cfg));
  CHECK(one == fingerprint(sweep(built.family, cfg)));
  cfg.workers = 3;
  CHECK(one == fingerprint(sweep(built.family, cfg)));
  // u = 0 drops the degree for even d and is set aside.
  const auto r = sweep(built.family, cfg);
  REQUIRE(r.degenerate.size() == 1);
  CHECK(r.degenerate[0].first == 0);

  cfg.sample = 20;
  cfg.seed = 99;
  const auto s1 = sweep(built.family, cfg);
  CHECK(s1.candidates.size() == 20);
  CHECK(fingerprint(s1) == fingerprint(sweep(built.family, cfg)));
}

TEST_CASE("dedup_classes examples") {
  const auto same = dedup_classes({counted(8), counted(2)}, 3);
  CHECK(same.distinct == 1);
  CHECK(same.classes[0].kernel == 2);
  CHECK(same.classes[0].x == 2);
  CHECK(same.multiplicity_histogram.at(2) == 1);
  CHECK(dedup_classes({counted(2), counted(3)}, 3).distinct == 2);

  FieldCandidate partial = counted(1);
  partial.disc = 4 * 10007;
  partial.kernel = squarefree_kernel(partial.disc, 10);
  REQUIRE_FALSE(partial.kernel.complete);
  const auto q = dedup_classes({counted(5), partial}, 3);
  CHECK(q.distinct == 1);
  REQUIRE(q.quarantine.size() == 1);
  CHECK(q.quarantine[0] == 1);

  FieldCandidate weak = counted(7);
  weak.certificate.status = SdStatus::inconclusive;
  CHECK(dedup_classes({weak}, 3).distinct == 0);
  CHECK(dedup_classes({}, 3).x_grid.empty());
}

TEST_CASE("count report on a d=3 sweep") {
  // Integral model of 37a1 keeps the discriminants small enough to factor.
  const auto family = twist_polynomial(parse_poly("x^3-16*x+16"), 3);
  SweepConfig cfg;
  cfg.U = 50;
  cfg.budget = {15, 2000, {}};
  const auto res = sweep(family, cfg);
  const auto rep = dedup_classes(res.candidates, 3);
  CHECK(rep.target_c == Rational(1, 3));
  for (std::size_t i = 1; i < rep.n_of_x.size(); ++i) CHECK(rep.n_of_x[i - 1] <= rep.n_of_x[i]);
  CHECK(rep.n_of_x.back() == rep.distinct);
  CHECK(rep.sign_histogram.count(1) == 1);
  CHECK(rep.sign_histogram.count(-1) == 1);
  CHECK(rep.slope.has_value());
  std::set<Integer> kernels;
  for (const auto& e : rep.classes) CHECK(kernels.insert(e.kernel).second);
  std::size_t total = 0;
  for (const auto& [m, n] : rep.multiplicity_histogram) total += m * n;
  CHECK(total == rep.counted_candidates);
}

TEST_CASE("local root counts match exhaustive residue counting") {
  const std::vector<BinaryForm> forms{
      {{1, 0}}, {{0, 1, 0}}, {{1, 0, 1}}, {{1, 0, 0, 2}}, {{4, 4, 1}}, {{1, -1, 0, 3, 2}}, {{3, 5}}, {{7}}};
  for (const auto& f : forms)
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK_MESSAGE(local_root_count(f, p) == brute_rho(f, p), f.str());
  // rho(p^2) for u v is 3p^2 - 2p.
  for (std::uint64_t p : {11, 13, 29}) CHECK(local_root_count(BinaryForm{{0, 1, 0}}, p) == 3 * p * p - 2 * p);
}

TEST_CASE("greaves density") {
  DensityConfig cfg;
  cfg.U = 10000;
  const auto u = greaves_density(BinaryForm{{1, 0}}, cfg);
  const double six_over_pi2 = 6.0 / (M_PI * M_PI);
  CHECK(std::abs(u.empirical - six_over_pi2) / six_over_pi2 < 0.02);
  CHECK(std::abs(u.local_product - six_over_pi2) / six_over_pi2 < 0.01);
  CHECK(u.partial == 0);

  for (const BinaryForm& f : {BinaryForm{{0, 1, 0}}, BinaryForm{{1, 0, 1}}, BinaryForm{{1, 0, 0, 2}}}) {
    const auto r = greaves_density(f, cfg);
    CHECK_MESSAGE(std::abs(r.empirical - r.local_product) / r.local_product < 0.05, f.str());
    CHECK(r.warnings.empty());
  }

  DensityConfig small = cfg;
  small.U = 200;
  const auto sq = greaves_density(BinaryForm{{4, 4, 1}}, small);  // (2u + v)^2
  CHECK(sq.empirical < 0.01);
  CHECK_FALSE(sq.warnings.empty());
  CHECK(sq.exhaustive);

  DensityConfig tiny = cfg;
  tiny.U = 20;
  const auto ex = greaves_density(BinaryForm{{1, 0}}, tiny);
  CHECK(ex.exhaustive);
  CHECK(ex.points == 41 * 41);
  // exact count: squarefree u in [-20, 20], times 41 choices of v
  int sf = 0;
  for (int x = -20; x <= 20; ++x)
    if (x != 0 && kernel_oracle(x) == x) ++sf;
  CHECK(ex.squarefree == static_cast<std::size_t>(sf * 41));

  CHECK_THROWS_AS(greaves_density(BinaryForm{std::vector<Integer>(8, 1)}, cfg), DomainError);
}

TEST_CASE("ev boxes and instances") {
  const auto [fb, gb] = ev_boxes(6, 1);
  CHECK(fb == std::vector<Integer>{1, 1, 1});
  CHECK(gb == std::vector<Integer>{1, 1});
  const auto [fb7, gb7] = ev_boxes(7, 4);
  CHECK(fb7 == std::vector<Integer>{2, 8, 32, 128});  // floor 4^(k + 1/2)
  CHECK(gb7 == std::vector<Integer>{4, 16});
  const auto [fb8, gb8] = ev_boxes(8, Rational(3, 2));
  CHECK(fb8 == std::vector<Integer>{1, 2, 3, 5});
  CHECK(gb8 == std::vector<Integer>{1, 1, 2});  // floor (3/2)^(1/2), ^(3/2), ^(5/2)
  CHECK_THROWS_AS(ev_boxes(3, 1), DomainError);
  CHECK_THROWS_AS(ev_boxes(6, Rational(1, 2)), DomainError);

  const ExactPoly f = parse_poly("x^3-2");
  // F = x^(d/2), G = t gives x^d - t^2 f.
  for (int d : {4, 6, 8}) {
    std::vector<Integer> fc(static_cast<std::size_t>(d / 2), 0), gc(static_cast<std::size_t>(d / 2 - 1), 0);
    gc.back() = 3;
    const auto [F, G] = ev_polys(d, fc, gc);
    CHECK(F == ExactPoly::monomial(Rational(1), static_cast<std::size_t>(d / 2)));
    CHECK(G == ExactPoly::constant(Rational(3)));
    CHECK(F * F - f * G * G == ExactPoly::monomial(Rational(1), static_cast<std::size_t>(d)) - f * ExactPoly::constant(Rational(9)));
  }

  const auto run = ev_generate(f, 6, 1);
  CHECK(run.exhaustive);
  CHECK(run.instances.size() == 243);
  int certified = 0;
  for (const auto& inst : run.instances) {
    CHECK(inst.identity_ok);
    CHECK(inst.bounds_ok);
    CHECK(inst.H.degree() == 6);
    if (inst.status == SdStatus::certified_Sd) ++certified;
    else CHECK_FALSE(inst.flag.empty());
  }
  CHECK(certified > 0);
}

TEST_CASE("ev coefficient bounds hold across degrees and scales") {
  const ExactPoly f = build_model(kCurve, 1, 1, Rational(1, 10), 5).cubic();
  for (int d = 4; d <= 9; ++d) {
    for (const Rational& Y : {Rational(1), Rational(3, 2), Rational(5)}) {
      EVConfig cfg;
      cfg.certify = false;
      cfg.max_instances = 60;
      cfg.exhaustive_limit = 500;
      const auto run = ev_generate(f, d, Y, cfg);
      for (const auto& inst : run.instances) {
        CHECK(inst.identity_ok);
        CHECK(inst.bounds_ok);
        // independent recheck of the box
        const auto& F = inst.F;
        const auto& G = inst.G;
        if (d % 2 == 0) {
          CHECK(F.leading() == 1);
          CHECK(F.degree() == d / 2);
        } else {
          CHECK(G.leading() == 1);
          CHECK(G.degree() == (d - 3) / 2);
        }
      }
    }
  }
  EVConfig cfg;
  cfg.exhaustive_limit = 10;
  cfg.max_instances = 25;
  cfg.certify = false;
  const auto a = ev_generate(parse_poly("x^3+x+1"), 7, 2, cfg);
  const auto b = ev_generate(parse_poly("x^3+x+1"), 7, 2, cfg);
  CHECK_FALSE(a.exhaustive);
  REQUIRE(a.instances.size() == 25);
  for (std::size_t i = 0; i < 25; ++i) CHECK(a.instances[i].H == b.instances[i].H);
}

TEST_CASE("ev exponent") {
  CHECK(ev_exponent(6) == 8);
  CHECK(ev_exponent(4) == Rational(7, 2));
  CHECK(ev_exponent(7) == 11);
  for (int d = 4; d <= 40; ++d) CHECK(ev_exponent(d) == ev_exponent_direct(d));
  CHECK_THROWS_AS(ev_exponent(3), DomainError);
}

TEST_CASE("c exponents") {
  CHECK(c_exponent(3, ExponentMode::theorem_general) == Rational(1, 3));
  const std::vector<Rational> expected{Rational(1, 3), Rational(1, 4), Rational(1, 5),
                                       Rational(1, 5), Rational(1, 6), Rational(1, 6)};
  for (int d = 3; d <= 8; ++d) CHECK(c_exponent(d, ExponentMode::theorem_general) == expected[static_cast<std::size_t>(d - 3)]);
  CHECK(c_exponent(7, ExponentMode::small_degree) == Rational(1, 6));
  CHECK(c_exponent(9, ExponentMode::large_degree) == Rational(1, 4) - Rational(115, 1296));
  Rational prev = c_exponent(9, ExponentMode::large_degree);
  for (int d = 10; d <= 200; ++d) {
    const Rational cur = c_exponent(d, ExponentMode::large_degree);
    CHECK(cur > prev);
    CHECK(cur < Rational(1, 4));
    prev = cur;
  }
  for (int d = 4; d <= 300; ++d) CHECK(c_exponent(d, ExponentMode::conditional) > Rational(1, 4));
  CHECK(c_exponent(10, ExponentMode::field_improvement) == Rational(1, 4) - Rational(1, 20));
  CHECK_THROWS_AS(c_exponent(4, ExponentMode::large_degree), DomainError);
  CHECK_THROWS_AS(c_exponent(6, ExponentMode::field_improvement), DomainError);
  CHECK_THROWS_AS(c_exponent(2, ExponentMode::small_degree), DomainError);
  CHECK(parse_exponent_mode("large_degree") == ExponentMode::large_degree);
  CHECK_THROWS_AS(parse_exponent_mode("huge"), DomainError);
}

TEST_CASE("Schmidt and Ellenberg-Venkatesh alpha") {
  const auto ten = schmidt_ev_alpha(10);
  CHECK(ten.alpha == 3);
  CHECK_FALSE(ten.witness.has_value());

  // k = ceil(sqrt(d) - 1) = 130 at d = 17000: C(132, 2) = 8646 > 8500.
  CHECK(ev_constraint(17000, 2, 130));
  CHECK_FALSE(ev_constraint(17000, 2, 128));
  const Rational target = Rational(17000, 4) - Rational(3, 4) + Rational(1, 34000);
  CHECK(ev_alpha(17000, 2, 130) <= target);
  CHECK(ev_alpha(17000, 2, 130) == make_rational(520, 16998) * 135981);  // C(522, 2)

  const auto big = schmidt_ev_alpha(16052);
  CHECK(big.r2_k == 126);
  CHECK(big.r2_reaches_target);
  CHECK(big.witness.has_value());
  CHECK(big.alpha <= big.target);
  for (int d = 16052; d <= 16100; ++d) CHECK(schmidt_ev_alpha(d).r2_reaches_target);
  CHECK_FALSE(schmidt_ev_alpha(1000).r2_reaches_target);
  CHECK_THROWS_AS(schmidt_ev_alpha(2), DomainError);
}
