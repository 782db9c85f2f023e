#include "sdtwist/padic.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "sdtwist/primes.hpp"

namespace sdtwist {

long valuation(const Rational& r, const Integer& p) {
  require_prime(p);
  if (r == 0) return kInfiniteValuation;
  long v = 0;
  Integer n = r.get_num();
  Integer d = r.get_den();
  v += static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  v -= static_cast<long>(mpz_remove(d.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()));
  return v;
}

int NewtonPolygon::total_length() const {
  int n = 0;
  for (const auto& s : segments) n += s.length;
  return n;
}

std::vector<Rational> NewtonPolygon::root_valuations() const {
  std::vector<Rational> out;
  for (const auto& s : segments)
    for (int i = 0; i < s.length; ++i) out.push_back(-s.slope);
  return out;
}

NewtonPolygon newton_polygon(const ExactPoly& f, const Integer& p) {
  require_prime(p);
  if (f.is_zero()) throw DomainError("Newton polygon of the zero polynomial");
  NewtonPolygon out;
  out.prime = p;
  for (int i = 0; i <= f.degree(); ++i) {
    const Rational& c = f.coefficients()[static_cast<std::size_t>(i)];
    if (c != 0) out.points.emplace_back(i, valuation(c, p));
  }
  // Monotone chain; drops collinear middle points so each segment has one slope.
  std::vector<std::pair<int, long>> hull;
  for (const auto& pt : out.points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // (b - a) x (pt - a) <= 0 means b is not strictly below the chord.
      const Integer cross = Integer(b.first - a.first) * Integer(pt.second - a.second) -
                            Integer(b.second - a.second) * Integer(pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const int len = hull[k].first - hull[k - 1].first;
    out.segments.push_back({make_rational(Integer(hull[k].second - hull[k - 1].second), Integer(len)), len});
  }
  return out;
}

std::vector<int> cycle_certificate(const NewtonPolygon& polygon) {
  std::vector<int> out;
  for (std::size_t i = 0; i < polygon.segments.size(); ++i) {
    const auto& seg = polygon.segments[i];
    const Integer n = seg.slope.get_den();
    if (n < 2 || n != seg.length) continue;
    bool coprime = true;
    for (std::size_t j = 0; j < polygon.segments.size() && coprime; ++j)
      if (j != i && gcd(polygon.segments[j].slope.get_den(), n) != 1) coprime = false;
    if (coprime) out.push_back(seg.length);
  }
  return out;
}

CycleType::CycleType(std::vector<int> p) : parts(std::move(p)) {
  for (int x : parts)
    if (x < 1) throw DomainError("cycle lengths must be positive");
  std::sort(parts.begin(), parts.end());
}

int CycleType::degree() const {
  int n = 0;
  for (int x : parts) n += x;
  return n;
}

bool CycleType::contains_cycle(int n) const { return std::find(parts.begin(), parts.end(), n) != parts.end(); }

std::string CycleType::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << "]";
  return os.str();
}

namespace {

// Dense polynomials over F_p, coefficient i at index i, no trailing zeros.
using u64 = std::uint64_t;
using PolyP = std::vector<u64>;

struct Fp {
  u64 p;
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

void trim(PolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

PolyP mod(PolyP a, const PolyP& b, const Fp& F) {
  const u64 inv_lead = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    const u64 q = F.mul(a.back(), inv_lead);
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(q, b[j]));
    trim(a);
  }
  return a;
}

PolyP divide(PolyP a, const PolyP& b, const Fp& F) {
  const u64 inv_lead = F.inv(b.back());
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  PolyP q(a.size() - db, 0);
  while (a.size() > db) {
    const u64 c = F.mul(a.back(), inv_lead);
    const std::size_t shift = a.size() - 1 - db;
    q[shift] = c;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] = F.sub(a[shift + j], F.mul(c, b[j]));
    a.pop_back();
    trim(a);
  }
  trim(q);
  return q;
}

PolyP mulmod(const PolyP& a, const PolyP& b, const PolyP& m, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  PolyP out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  trim(out);
  return mod(std::move(out), m, F);
}

PolyP powmod(PolyP base, u64 e, const PolyP& m, const Fp& F) {
  PolyP r{1};
  r = mod(r, m, F);
  base = mod(std::move(base), m, F);
  while (e) {
    if (e & 1) r = mulmod(r, base, m, F);
    e >>= 1;
    if (e) base = mulmod(base, base, m, F);
  }
  return r;
}

PolyP gcd(PolyP a, PolyP b, const Fp& F) {
  while (!b.empty()) {
    PolyP r = mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

PolyP derivative(const PolyP& a, const Fp& F) {
  PolyP out;
  for (std::size_t i = 1; i < a.size(); ++i) out.push_back(F.mul(a[i], i % F.p));
  trim(out);
  return out;
}

}  // namespace

std::optional<CycleType> frobenius_cycle_type(const ExactPoly& f, const Integer& p) {
  require_prime(p);
  if (f.degree() < 1) throw DomainError("cycle type of a constant polynomial");
  if (!fits_u64(p) || mpz_sizeinbase(p.get_mpz_t(), 2) > 62) throw DomainError("prime too large for word arithmetic");
  const Fp F{to_u64(p)};
  PolyP a;
  for (const auto& c : f.coefficients()) {
    const u64 den = mod_u64(c.get_den(), F.p);
    if (den == 0) throw DomainError("prime divides a coefficient denominator");
    a.push_back(F.mul(mod_u64(c.get_num(), F.p), F.inv(den)));
  }
  trim(a);
  if (static_cast<int>(a.size()) - 1 != f.degree()) return std::nullopt;
  if (gcd(a, derivative(a, F), F).size() != 1) return std::nullopt;

  std::vector<int> parts;
  PolyP rest = a;
  const PolyP x{0, 1};
  PolyP h = mod(x, rest, F);
  for (int i = 1; 2 * i <= static_cast<int>(rest.size()) - 1; ++i) {
    h = powmod(h, F.p, rest, F);
    PolyP hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = F.sub(hx[1], 1);
    trim(hx);
    PolyP g = gcd(hx, rest, F);
    if (g.size() > 1) {
      for (std::size_t k = 0; k < (g.size() - 1) / static_cast<std::size_t>(i); ++k) parts.push_back(i);
      rest = divide(rest, g, F);
      h = mod(h, rest, F);
    }
  }
  if (rest.size() > 1) parts.push_back(static_cast<int>(rest.size()) - 1);
  return CycleType(std::move(parts));
}

}  // namespace sdtwist
