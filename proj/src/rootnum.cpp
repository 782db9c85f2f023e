#include "sdtwist/rootnum.hpp"

#include <map>
#include <utility>

#include "sdtwist/primes.hpp"

namespace sdtwist {

int kronecker(const Integer& a, const Integer& n) {
  if (a == 0 && n == 0) throw DomainError("kronecker symbol (0/0) is undefined");
  return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

RootReport relative_root_number(const CurveArithData& data, int d, const Integer& disc) {
  if (disc == 0) throw DomainError("relative root number needs a nonzero discriminant");
  if (data.conductor < 1) throw DomainError("conductor must be positive");
  if (data.w != 1 && data.w != -1) throw DomainError("root number must be +1 or -1");
  RootReport out;
  out.d = d;
  out.disc = disc;
  out.gcd = gcd(disc, data.conductor);
  out.gcd_ok = out.gcd == 1;
  out.kronecker_value = kronecker(disc, data.conductor);
  if (out.gcd_ok) {
    const int w_pow = ((d - 1) % 2 == 0) ? 1 : data.w;
    out.w_rel = w_pow * sign(disc) * out.kronecker_value;
  }
  return out;
}

Congruence cubic_sign_preset(const Integer& conductor, int target) {
  if (conductor < 2) throw DomainError("preset needs a conductor of at least 2");
  for (Integer u = 1; u < conductor; ++u) {
    const Integer value = -u * u * u * (27 * u + 4);
    if (kronecker(value, conductor) == target) return {u, 1, conductor};
  }
  throw DomainError("no residue class reaches the requested symbol");
}

namespace {

bool is_power_of(Integer m, const Integer& n) {
  if (m < 1 || n < 1) return false;
  if (n == 1) return m == 1;
  if (m == 1) return false;  // positive powers only
  while (m % n == 0) m /= n;
  return m == 1;
}

Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

std::vector<SignPair> sign_pairing(const std::vector<FieldCandidate>& candidates, const Integer& modulus,
                                   const CurveArithData& data) {
  if (!is_power_of(modulus, data.conductor)) throw DomainError("pairing modulus must be a positive power of N_E");
  // Residue class -> (negative indices, positive indices), in input order.
  std::map<std::pair<Integer, Integer>, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (c.disc == 0) continue;
    auto& g = groups[{mod_pos(c.u, modulus), mod_pos(c.v, modulus)}];
    (c.disc < 0 ? g.first : g.second).push_back(i);
  }
  std::vector<SignPair> out;
  for (const auto& [key, group] : groups) {
    const auto& [neg, pos] = group;
    std::vector<char> used(pos.size(), 0);
    for (std::size_t i : neg) {
      const RootReport a = relative_root_number(data, candidates[i].poly.degree(), candidates[i].disc);
      if (!a.w_rel) continue;
      for (std::size_t j = 0; j < pos.size(); ++j) {
        if (used[j]) continue;
        const RootReport b =
            relative_root_number(data, candidates[pos[j]].poly.degree(), candidates[pos[j]].disc);
        if (!b.w_rel || *b.w_rel != -*a.w_rel) continue;
        used[j] = 1;
        out.push_back({i, pos[j], a, b});
        break;
      }
    }
  }
  return out;
}

}  // namespace sdtwist
