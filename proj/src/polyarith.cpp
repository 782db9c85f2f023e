#include "sdtwist/polyarith.hpp"

#include <cctype>
#include <initializer_list>
#include <sstream>

namespace sdtwist {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  std::erase_if(s, [](unsigned char c) { return std::isspace(c); });
  if (s.empty()) throw DomainError("empty rational literal");
  auto valid_int = [](const std::string& part) {
    std::size_t i = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid_int(num) || !valid_int(den)) throw DomainError("malformed rational: " + std::string(text));
  return make_rational(Integer(num), Integer(den));
}

Rational resultant(const ExactPoly& f, const ExactPoly& g) { return resultant<Rational>(f, g); }

Rational discriminant(const ExactPoly& f) { return discriminant<Rational>(f); }

ExactPoly discriminant_in_t(const BivarPoly& p) {
  if (p.is_zero() || p.leading().is_zero()) throw DomainError("degenerate leading coefficient in x");
  if (p.degree() < 1) throw DomainError("discriminant of a polynomial constant in x");
  return discriminant<ExactPoly>(p);
}

ExactPoly monic(const ExactPoly& f) {
  if (f.is_zero()) return f;
  return f * (Rational(1) / f.leading());
}

ExactPoly gcd(ExactPoly a, ExactPoly b) {
  while (!b.is_zero()) {
    ExactPoly r = divrem(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

ContentSplit primitive_part(const ExactPoly& f) {
  if (f.is_zero()) throw DomainError("primitive part of the zero polynomial");
  Integer den_lcm = 1;
  for (const auto& c : f.coefficients()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  std::vector<Integer> ints;
  ints.reserve(f.size());
  for (const auto& c : f.coefficients()) {
    Integer v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (sgn(f.leading()) < 0) num_gcd = -num_gcd;
  std::vector<Rational> out;
  out.reserve(ints.size());
  for (auto& v : ints) out.emplace_back(Integer(v / num_gcd));
  return {make_rational(num_gcd, den_lcm), ExactPoly(std::move(out))};
}

std::vector<Integer> integer_coefficients(const ExactPoly& f) {
  std::vector<Integer> out;
  out.reserve(f.size());
  for (const auto& c : f.coefficients()) {
    if (!is_integral(c)) throw DomainError("polynomial is not integral");
    out.push_back(c.get_num());
  }
  return out;
}

ExactPoly from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return ExactPoly(std::move(v));
}

ExactPoly from_longs(std::initializer_list<long> coeffs) {
  std::vector<Rational> v;
  for (long c : coeffs) v.emplace_back(c);
  return ExactPoly(std::move(v));
}

bool SquarefreeDecomposition::non_squarefull() const {
  for (const auto& f : factors)
    if (f.multiplicity == 1 && f.factor.degree() >= 1) return true;
  return false;
}

ExactPoly SquarefreeDecomposition::expand() const {
  ExactPoly acc = ExactPoly::constant(content);
  for (const auto& f : factors) acc = acc * ring_pow(f.factor, f.multiplicity);
  return acc;
}

SquarefreeDecomposition squarefree_decompose(const ExactPoly& h) {
  if (h.is_zero()) throw DomainError("squarefree decomposition of the zero polynomial");
  SquarefreeDecomposition out;
  if (h.degree() == 0) {
    out.content = h.leading();
    return out;
  }
  const ExactPoly f = monic(h);
  const ExactPoly df = f.derivative();
  ExactPoly a = gcd(f, df);
  ExactPoly b = divrem(f, a).first;
  ExactPoly c = divrem(df, a).first;
  ExactPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    ExactPoly ai = gcd(b, d);
    b = divrem(b, ai).first;
    c = divrem(d, ai).first;
    d = c - b.derivative();
    if (ai.degree() > 0) out.factors.push_back({primitive_part(ai).primitive, i});
    ++i;
  }
  Rational lead_product = 1;
  for (const auto& fac : out.factors) lead_product *= pow_rat(fac.factor.leading(), fac.multiplicity);
  out.content = h.leading() / lead_product;
  return out;
}

bool is_squarefree(const ExactPoly& f) {
  if (f.is_zero()) return false;
  if (f.degree() <= 0) return true;
  return gcd(f, f.derivative()).degree() == 0;
}

namespace {

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_real_roots(const ExactPoly& f) {
  if (f.degree() < 1) throw DomainError("real root count of a constant polynomial");
  if (!is_squarefree(f)) throw DomainError("Sturm count requires a squarefree polynomial");
  std::vector<ExactPoly> seq{f, f.derivative()};
  while (!seq.back().is_zero()) {
    ExactPoly r = divrem(seq[seq.size() - 2], seq.back()).second;
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  std::vector<int> at_pos, at_neg;
  for (const auto& p : seq) {
    const int s = sign(p.leading());
    at_pos.push_back(s);
    at_neg.push_back((p.degree() & 1) ? -s : s);
  }
  return sign_changes(at_neg) - sign_changes(at_pos);
}

int descartes_sign_changes(const ExactPoly& f) {
  std::vector<int> signs;
  for (const auto& c : f.coefficients()) signs.push_back(sign(c));
  return sign_changes(signs);
}

ExactPoly negate_variable(const ExactPoly& f) {
  std::vector<Rational> v = f.coefficients();
  for (std::size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return ExactPoly(std::move(v));
}

ExactPoly reduce_mod(const ExactPoly& f, const ExactPoly& p) {
  if (p.degree() < 1) throw DomainError("reduction modulo a constant polynomial");
  return divrem(f, p).second;
}

ExactPoly specialize_t(const BivarPoly& p, const Rational& t0) {
  std::vector<Rational> v;
  v.reserve(p.size());
  for (const auto& c : p.coefficients()) v.push_back(c.evaluate(t0));
  return ExactPoly(std::move(v));
}

std::string to_string(const ExactPoly& f, std::string_view var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = f.degree(); i >= 0; --i) {
    const Rational& c = f.coefficients()[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

ExactPoly parse_poly(std::string_view text, char var) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("empty polynomial");
  std::vector<Rational> coeffs;
  auto add = [&](std::size_t power, const Rational& c) {
    if (coeffs.size() <= power) coeffs.resize(power + 1, Rational(0));
    coeffs[power] += c;
  };
  std::size_t pos = 0;
  while (pos < s.size()) {
    int term_sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      term_sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && s[end] != '+' && s[end] != '-') {
      if (s[end] == '^') {
        ++end;
        if (end < s.size() && (s[end] == '+' || s[end] == '-')) throw DomainError("signed exponent");
      }
      ++end;
    }
    const std::string term = s.substr(pos, end - pos);
    if (term.empty()) throw DomainError("malformed polynomial: " + std::string(text));
    pos = end;
    const auto xpos = term.find(var);
    Rational c = 1;
    std::size_t power = 0;
    if (xpos == std::string::npos) {
      c = parse_rational(term);
    } else {
      std::string head = term.substr(0, xpos);
      if (!head.empty()) {
        if (head.back() != '*') throw DomainError("expected '*' before variable in: " + term);
        head.pop_back();
        c = parse_rational(head);
      }
      std::string tail = term.substr(xpos + 1);
      power = 1;
      if (!tail.empty()) {
        if (tail[0] != '^') throw DomainError("unexpected text after variable in: " + term);
        const std::string e = tail.substr(1);
        if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
          throw DomainError("malformed exponent in: " + term);
        power = std::stoul(e);
      }
    }
    add(power, term_sign < 0 ? Rational(-c) : c);
  }
  return ExactPoly(std::move(coeffs));
}

}  // namespace sdtwist
