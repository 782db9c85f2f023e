#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sdtwist/galois.hpp"
#include "sdtwist/polyarith.hpp"

using namespace sdtwist;

namespace {

GaloisEvidence evidence_with(int d, std::initializer_list<std::vector<int>> types, bool transposition) {
  GaloisEvidence ev;
  ev.degree = d;
  ev.irreducibility = Irreducibility::certified;
  for (const auto& t : types) ev.observed_cycle_types.insert(CycleType(t));
  if (transposition) ev.transposition_prime = Integer(101);
  return ev;
}

ExactPoly cyclotomic(int n) {
  // x^n - 1 divided by every cyclotomic factor of a proper divisor.
  ExactPoly out = ExactPoly::monomial(Rational(1), static_cast<std::size_t>(n)) - ExactPoly::constant(Rational(1));
  for (int k = 1; k < n; ++k)
    if (n % k == 0) out = exact_divide(out, cyclotomic(k));
  return out;
}

}  // namespace

TEST_CASE("irreducibility certificate examples") {
  const auto a = irreducibility_certificate(parse_poly("x^3-x^2-2*x-1"), 5);
  CHECK(a.status == Irreducibility::certified);
  CHECK(a.route == "mod_p");
  CHECK(*a.prime == 2);
  CHECK(irreducibility_certificate(parse_poly("x^2+1") * parse_poly("x^2+2"), 20).status ==
        Irreducibility::inconclusive);
  // x^4 + 1 splits mod every prime; the lattice route does not apply either,
  // but an Eisenstein shift would. Inconclusive is the honest answer here.
  CHECK(irreducibility_certificate(parse_poly("x^4+1"), 3).status == Irreducibility::inconclusive);
  // Eisenstein at 2, caught by the polygon route.
  const auto e = irreducibility_certificate(parse_poly("x^4+2*x+2"), 1);
  CHECK(e.status == Irreducibility::certified);
}

TEST_CASE("degree lattice route") {
  // patterns [1,3] and [2,2] together leave only {0,4}
  const ExactPoly f = parse_poly("x^4-x-1");
  const auto c = irreducibility_certificate(f, 200);
  CHECK(c.status == Irreducibility::certified);
}

TEST_CASE("transposition witness examples") {
  const auto w = transposition_witness(parse_poly("x^3-x^2-2*x-1"), 100);
  REQUIRE(w.has_value());
  CHECK(*w == 31);
  CHECK_THROWS_AS(transposition_witness(parse_poly("x^2-4*x+4"), 100), DomainError);
  CHECK_FALSE(transposition_witness(parse_poly("x^3-2"), 1000).has_value());
  // 31 beyond the trial bound is still found through the extra primes.
  CHECK(*transposition_witness(parse_poly("x^3-x^2-2*x-1"), 10, {Integer(31)}) == 31);
  CHECK_FALSE(transposition_witness(parse_poly("x^3-x^2-2*x-1"), 10).has_value());
}

TEST_CASE("power_is_cycle") {
  CHECK(power_is_cycle(CycleType({2, 3}), 2));
  CHECK(power_is_cycle(CycleType({2, 3}), 3));
  CHECK_FALSE(power_is_cycle(CycleType({2, 4}), 2));
  CHECK_FALSE(power_is_cycle(CycleType({2, 2, 1}), 2));
  CHECK(power_is_cycle(CycleType({5, 2}), 5));
  CHECK(power_is_cycle(CycleType({6}), 6));
}

TEST_CASE("certify_sd examples") {
  CHECK(certify_sd(evidence_with(6, {{6}, {5, 1}}, true)).status == SdStatus::certified_Sd);
  const auto odd = certify_sd(evidence_with(7, {{7}, {5, 1, 1}}, true));
  CHECK(odd.status == SdStatus::certified_Sd);
  CHECK(odd.route == "cycles_odd");
  CHECK(certify_sd(evidence_with(4, {{4}}, false)).status == SdStatus::inconclusive);
  // (d-2)-cycle route is only for odd d.
  CHECK(certify_sd(evidence_with(6, {{6}, {4, 1, 1}}, true)).status == SdStatus::inconclusive);
  // transposition from a cycle-type power
  CHECK(certify_sd(evidence_with(5, {{5}, {4, 1}, {2, 3}}, false)).status == SdStatus::certified_Sd);
  auto bad = evidence_with(4, {{3}}, false);
  CHECK_THROWS_AS(certify_sd(bad), DomainError);
  auto reducible = evidence_with(6, {{6}, {5, 1}}, true);
  reducible.irreducibility = Irreducibility::inconclusive;
  CHECK(certify_sd(reducible).status == SdStatus::inconclusive);
}

TEST_CASE("collect_evidence examples") {
  const auto ev = collect_evidence(parse_poly("x^3-x^2-2*x-1"), 3, {20, 1000, {}});
  CHECK(ev.observed_cycle_types.count(CycleType({3})) == 1);
  REQUIRE(ev.transposition_prime.has_value());
  CHECK(*ev.transposition_prime == 31);
  CHECK(certify_sd(ev).status == SdStatus::certified_Sd);

  const auto quad = collect_evidence(parse_poly("x^2+1"), 2, {10, 1000, {}});
  CHECK(quad.observed_cycle_types.count(CycleType({2})) == 1);
  CHECK(certify_sd(quad).status == SdStatus::certified_Sd);

  const auto red = collect_evidence(parse_poly("x^2+1") * parse_poly("x-3"), 3, {30, 1000, {}});
  CHECK(red.irreducibility == Irreducibility::inconclusive);
  CHECK(certify_sd(red).status == SdStatus::inconclusive);

  // Deterministic in its inputs.
  const auto again = collect_evidence(parse_poly("x^3-x^2-2*x-1"), 3, {20, 1000, {}});
  CHECK(again.observed_cycle_types == ev.observed_cycle_types);
  CHECK(again.provenance.size() == ev.provenance.size());
  CHECK_THROWS_AS(collect_evidence(parse_poly("x^2+1"), 3, {}), DomainError);
}

TEST_CASE("transposition witnesses are exact") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const ExactPoly f = oracle::random_poly(rng, 2 + trial % 5, 30);
    const ExactPoly g = primitive_part(f).primitive;
    if (discriminant(g) == 0) continue;
    const auto w = transposition_witness(f, 5000);
    if (!w) continue;
    CHECK(valuation_int(discriminant(g).get_num(), *w) == 1);
    CHECK(g.leading().get_num() % *w != 0);
  }
}

TEST_CASE("certificate never fires on reducible or non-symmetric fixtures") {
  std::vector<ExactPoly> fixtures;
  fixtures.push_back(parse_poly("x^4+1"));
  fixtures.push_back(parse_poly("x^3-3*x+1"));  // cyclic cubic
  for (int n = 5; n <= 40 && fixtures.size() < 30; ++n) {
    const ExactPoly c = cyclotomic(n);
    if (c.degree() >= 3) fixtures.push_back(c);
  }
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> deg(1, 4);
  while (fixtures.size() < 70) {
    const ExactPoly a = oracle::random_poly(rng, deg(rng), 9);
    const ExactPoly b = oracle::random_poly(rng, deg(rng), 9);
    fixtures.push_back(a * b);
  }
  // g(x^2): imprimitive, Galois group inside C2 wr S_k.
  while (fixtures.size() < 100) {
    const ExactPoly g = oracle::random_poly(rng, 2 + static_cast<int>(fixtures.size() % 3), 9);
    fixtures.push_back(g.compose(ExactPoly::monomial(Rational(1), 2)));
  }
  int checked = 0;
  for (const auto& f : fixtures) {
    if (f.degree() < 2) continue;
    const auto ev = collect_evidence(f, f.degree(), {60, 2000, {Integer(2), Integer(3)}});
    CHECK_MESSAGE(certify_sd(ev).status == SdStatus::inconclusive, to_string(f));
    ++checked;
  }
  CHECK(checked >= 95);
}

TEST_CASE("generic polynomials are certified") {
  CHECK(certify_sd(collect_evidence(parse_poly("x^5-x-1"), 5, {})).status == SdStatus::certified_Sd);
  CHECK(certify_sd(collect_evidence(parse_poly("x^6+x+1"), 6, {})).status == SdStatus::certified_Sd);
  CHECK(certify_sd(collect_evidence(parse_poly("x^3-2"), 3, {})).status == SdStatus::certified_Sd);
}
