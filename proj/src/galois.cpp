#include "sdtwist/galois.hpp"

#include <numeric>

#include "sdtwist/polyarith.hpp"
#include "sdtwist/primes.hpp"

namespace sdtwist {

std::string to_string(Irreducibility status) {
  return status == Irreducibility::certified ? "certified" : "inconclusive";
}

std::string to_string(SdStatus status) {
  return status == SdStatus::certified_Sd ? "certified_Sd" : "inconclusive";
}

bool power_is_cycle(const CycleType& type, int n) {
  if (n < 1) return false;
  int occurrences = 0;
  for (int part : type.parts) {
    if (part == n) ++occurrences;
    else if (std::gcd(part, n) != 1) return false;
  }
  return occurrences == 1;
}

bool GaloisEvidence::has_cycle(int n) const {
  for (const auto& t : observed_cycle_types)
    if (power_is_cycle(t, n)) return true;
  return false;
}

namespace {

// Attainable degrees of factors built from the parts of a degree pattern.
std::vector<char> subset_sums(const CycleType& t, int d) {
  std::vector<char> reach(static_cast<std::size_t>(d) + 1, 0);
  reach[0] = 1;
  for (int part : t.parts)
    for (int s = d; s >= part; --s)
      if (reach[static_cast<std::size_t>(s - part)]) reach[static_cast<std::size_t>(s)] = 1;
  return reach;
}

bool divides(std::uint64_t p, const Rational& integral) {
  return mpz_divisible_ui_p(integral.get_num_mpz_t(), p) != 0;
}

// Walks primes in increasing order, feeding every good prime's cycle type and
// every visited prime's Newton polygon into the callbacks, until `budget` good
// primes have been seen or `stop` returns true.
template <class OnType, class OnPolygon, class Stop>
void walk_primes(const ExactPoly& g, int budget, const Rational& disc, OnType on_type, OnPolygon on_polygon,
                 Stop stop) {
  const int visit_cap = 50 * budget + 200;
  int good = 0;
  std::uint64_t p = 2;
  for (int visited = 0; good < budget && visited < visit_cap && !stop(); ++visited, p = next_prime(p)) {
    const Integer pz = from_u64(p);
    if (divides(p, g.leading()) || divides(p, g.coeff(0))) on_polygon(pz);
    if (divides(p, g.leading())) continue;
    if (disc != 0 && divides(p, disc)) continue;
    const auto t = frobenius_cycle_type(g, pz);
    if (!t) continue;
    ++good;
    on_type(pz, *t);
  }
}

}  // namespace

IrreducibilityCertificate irreducibility_certificate(const ExactPoly& f, int prime_budget,
                                                     const std::vector<Integer>& polygon_primes) {
  if (f.degree() < 1) throw DomainError("irreducibility of a constant polynomial");
  const ExactPoly g = primitive_part(f).primitive;
  const int d = g.degree();
  IrreducibilityCertificate out;
  if (d == 1) {
    out.status = Irreducibility::certified;
    out.route = "linear";
    return out;
  }
  const Rational disc = discriminant(g);
  if (disc == 0) return out;  // repeated factor
  std::vector<char> lattice(static_cast<std::size_t>(d) + 1, 1);
  auto certify = [&](const char* route, const Integer& p) {
    out.status = Irreducibility::certified;
    out.route = route;
    out.prime = p;
  };
  auto polygon = [&](const Integer& p) {
    if (out.status == Irreducibility::certified) return;
    const auto cycles = cycle_certificate(newton_polygon(g, p));
    for (int n : cycles)
      if (n == d) certify("newton_polygon", p);
  };
  walk_primes(
      g, prime_budget, disc,
      [&](const Integer& p, const CycleType& t) {
        if (t.parts.size() == 1) return certify("mod_p", p);
        const auto sums = subset_sums(t, d);
        int nontrivial = 0;
        for (int s = 1; s < d; ++s) {
          lattice[static_cast<std::size_t>(s)] &= sums[static_cast<std::size_t>(s)];
          nontrivial += lattice[static_cast<std::size_t>(s)];
        }
        if (nontrivial == 0) certify("degree_lattice", p);
      },
      polygon, [&] { return out.status == Irreducibility::certified; });
  for (const auto& p : polygon_primes) polygon(p);
  return out;
}

std::optional<Integer> transposition_witness(const ExactPoly& f, std::uint64_t trial_bound,
                                             const std::vector<Integer>& extra_primes) {
  const ExactPoly g = primitive_part(f).primitive;
  const Rational disc = discriminant(g);
  if (disc == 0) throw DomainError("transposition witness needs a nonzero discriminant");
  const Integer lead = g.leading().get_num();
  Integer rest = abs(disc.get_num());
  for (std::uint64_t p : primes_up_to(trial_bound)) {
    if (rest == 1) break;
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    const Integer pz = from_u64(p);
    const auto v = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), pz.get_mpz_t());
    if (v == 1 && !mpz_divisible_ui_p(lead.get_mpz_t(), p)) return pz;
  }
  for (const auto& p : extra_primes) {
    if (!is_prime(p)) continue;
    if (valuation_int(disc.get_num(), p) == 1 && lead % p != 0) return p;
  }
  return std::nullopt;
}

SdCertificate certify_sd(const GaloisEvidence& evidence) {
  const int d = evidence.degree;
  if (d < 2) throw DomainError("S_d certificate needs degree at least 2");
  for (const auto& t : evidence.observed_cycle_types)
    if (t.degree() != d) throw DomainError("cycle type " + t.str() + " does not sum to the degree");
  SdCertificate out;
  out.evidence = evidence;
  if (evidence.irreducibility != Irreducibility::certified) return out;
  auto certify = [&](const char* route) {
    out.status = SdStatus::certified_Sd;
    out.route = route;
    return out;
  };
  if (d == 2) return certify("quadratic");
  const bool transposition = evidence.transposition_prime.has_value() || evidence.has_cycle(2);
  if (transposition && evidence.has_cycle(d)) {
    if (evidence.has_cycle(d - 1)) return certify("cycles");
    if (d >= 5 && (d & 1) && evidence.has_cycle(d - 2)) return certify("cycles_odd");
  }
  if (d == 3 && evidence.discriminant_is_square == false) return certify("cubic_discriminant");
  return out;
}

GaloisEvidence collect_evidence(const ExactPoly& f, int d, const EvidenceBudget& budget) {
  if (f.degree() != d) throw DomainError("polynomial degree does not match d");
  const ExactPoly g = primitive_part(f).primitive;
  GaloisEvidence ev;
  ev.degree = d;
  const Rational disc = discriminant(g);
  if (disc == 0) return ev;
  ev.discriminant_is_square = is_perfect_square(disc.get_num());

  std::vector<char> lattice(static_cast<std::size_t>(d) + 1, 1);
  auto record_irreducible = [&](const char* route, const Integer& p) {
    if (ev.irreducibility == Irreducibility::certified) return;
    ev.irreducibility = Irreducibility::certified;
    ev.irreducibility_route = route;
    ev.provenance.push_back({"irreducibility", p, route});
  };
  auto polygon = [&](const Integer& p) {
    for (int n : cycle_certificate(newton_polygon(g, p))) {
      std::vector<int> parts(static_cast<std::size_t>(d - n), 1);
      parts.push_back(n);
      if (ev.observed_cycle_types.insert(CycleType(parts)).second)
        ev.provenance.push_back({"cycle_certificate", p, std::to_string(n) + "-cycle"});
      if (n == d) record_irreducible("newton_polygon", p);
    }
  };
  walk_primes(
      g, budget.prime_budget, disc,
      [&](const Integer& p, const CycleType& t) {
        if (ev.observed_cycle_types.insert(t).second) ev.provenance.push_back({"frobenius_cycle_type", p, t.str()});
        if (t.parts.size() == 1) return record_irreducible("mod_p", p);
        const auto sums = subset_sums(t, d);
        int nontrivial = 0;
        for (int s = 1; s < d; ++s) {
          lattice[static_cast<std::size_t>(s)] &= sums[static_cast<std::size_t>(s)];
          nontrivial += lattice[static_cast<std::size_t>(s)];
        }
        if (nontrivial == 0) record_irreducible("degree_lattice", p);
      },
      polygon, [] { return false; });
  for (const auto& p : budget.polygon_primes) polygon(p);

  ev.transposition_prime = transposition_witness(g, budget.trial_bound, budget.polygon_primes);
  if (ev.transposition_prime) ev.provenance.push_back({"transposition_witness", *ev.transposition_prime, "v_p(Disc)=1"});
  return ev;
}

}  // namespace sdtwist
