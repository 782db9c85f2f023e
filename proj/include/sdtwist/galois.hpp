#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdtwist/padic.hpp"
#include "sdtwist/polynomial.hpp"

namespace sdtwist {

enum class Irreducibility { certified, inconclusive };

std::string to_string(Irreducibility status);

struct IrreducibilityCertificate {
  Irreducibility status = Irreducibility::inconclusive;
  // "mod_p" (irreducible reduction), "degree_lattice", "newton_polygon", or empty.
  std::string route;
  std::optional<Integer> prime;
};

/// Irreducibility over Q without factoring: (a) an irreducible reduction at a
/// good prime, (b) the subset-sum sets of factor degrees over the sampled good
/// primes intersect in {0, d}, or (c) a Newton polygon with one segment of
/// slope denominator d. Samples up to prime_budget good primes in increasing
/// order; polygon_primes are examined in addition to every prime visited.
IrreducibilityCertificate irreducibility_certificate(const ExactPoly& f, int prime_budget,
                                                     const std::vector<Integer>& polygon_primes = {});

/// A prime p not dividing the leading coefficient with v_p(Disc F) = 1 exactly.
/// F is first made primitive integral. Primes up to trial_bound are tried in
/// increasing order, then extra_primes. Throws when Disc F = 0.
std::optional<Integer> transposition_witness(const ExactPoly& f, std::uint64_t trial_bound,
                                             const std::vector<Integer>& extra_primes = {});

/// True when some power of a permutation of this type is an n-cycle: n occurs
/// exactly once among the parts and every other part is coprime to n.
bool power_is_cycle(const CycleType& type, int n);

struct EvidenceSource {
  std::string op;
  Integer prime;
  std::string detail;
};

struct GaloisEvidence {
  int degree = 0;
  std::set<CycleType> observed_cycle_types;
  std::optional<Integer> transposition_prime;
  Irreducibility irreducibility = Irreducibility::inconclusive;
  std::string irreducibility_route;
  // Only needed for the cubic shortcut; unset when not computed.
  std::optional<bool> discriminant_is_square;
  std::vector<EvidenceSource> provenance;

  /// Some observed type has a power that is an n-cycle.
  bool has_cycle(int n) const;
};

enum class SdStatus { certified_Sd, inconclusive };

std::string to_string(SdStatus status);

struct SdCertificate {
  SdStatus status = SdStatus::inconclusive;
  // "cycles", "cycles_odd" ((d-2)-cycle variant), "cubic_discriminant", "quadratic".
  std::string route;
  GaloisEvidence evidence;
};

/// S_d when irreducible with a d-cycle, a transposition (discriminant witness
/// or a cycle-type power), and a (d-1)-cycle, or for odd d >= 5 a
/// (d-2)-cycle. Irreducible quadratics and irreducible cubics with nonsquare
/// discriminant are accepted directly.
SdCertificate certify_sd(const GaloisEvidence& evidence);

struct EvidenceBudget {
  int prime_budget = 60;
  std::uint64_t trial_bound = 10000;
  std::vector<Integer> polygon_primes;
};

/// Samples Frobenius cycle types at the first prime_budget good primes
/// (skipping primes dividing the leading coefficient or the discriminant),
/// Newton-polygon cycles at polygon_primes, and a discriminant transposition
/// witness. Deterministic in its inputs.
GaloisEvidence collect_evidence(const ExactPoly& f, int d, const EvidenceBudget& budget);

}  // namespace sdtwist
