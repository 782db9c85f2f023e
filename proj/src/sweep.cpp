#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "parallel.hpp"
#include "sdtwist/enumerate.hpp"
#include "sdtwist/primes.hpp"

namespace sdtwist {

std::string to_string(SignRegion region) {
  switch (region) {
    case SignRegion::positive: return "positive";
    case SignRegion::negative: return "negative";
    default: return "any";
  }
}

SignRegion parse_sign_region(const std::string& text) {
  if (text == "any") return SignRegion::any;
  if (text == "positive" || text == "+") return SignRegion::positive;
  if (text == "negative" || text == "-") return SignRegion::negative;
  throw DomainError("unknown sign region '" + text + "' (expected any, positive, negative)");
}

namespace {

Integer mod_pos(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool region_accepts(SignRegion region, int s) {
  if (region == SignRegion::positive) return s > 0;
  if (region == SignRegion::negative) return s < 0;
  return true;
}

struct Slot {
  FieldCandidate candidate;
  bool rejected = false;
};

}  // namespace

SweepResult sweep(const TwistFamily& family, const SweepConfig& config) {
  const Integer Uu = config.U;
  const Integer Uv = config.U_v.value_or(config.U);
  if (Uu < 1 || Uv < 1) throw DomainError("sweep box bounds must be at least 1");
  Integer modulus = config.residue_modulus;
  if (config.congruence) {
    const auto& c = *config.congruence;
    if (c.modulus < 1) throw DomainError("congruence modulus must be positive");
    if (gcd(gcd(c.u0, c.v0), c.modulus) != 1) throw DomainError("congruence class has no coprime points");
    modulus = c.modulus;
  }
  if (modulus < 1) throw DomainError("residue modulus must be positive");
  if (!Uu.fits_slong_p() || !Uv.fits_slong_p()) throw DomainError("sweep box too large");

  // Leading x^d coefficient of P as a polynomial in t.
  const ExactPoly lead_t = family.P.coeff(static_cast<std::size_t>(family.d));

  SweepResult result;
  std::vector<std::pair<Integer, Integer>> points;
  const long U = Uu.get_si(), V = Uv.get_si();
  for (long u = -U; u <= U; ++u) {
    for (long v = 1; v <= V; ++v) {
      const Integer uz(u), vz(v);
      if (gcd(uz, vz) != 1) continue;
      if (config.congruence) {
        const auto& c = *config.congruence;
        if (mod_pos(uz - c.u0, c.modulus) != 0 || mod_pos(vz - c.v0, c.modulus) != 0) continue;
      }
      if (lead_t.evaluate(make_rational(uz, vz)) == 0) {
        result.degenerate.emplace_back(uz, vz);
        continue;
      }
      points.emplace_back(uz, vz);
    }
  }

  if (config.sample && *config.sample < points.size()) {
    // Partial Fisher-Yates with a fixed generator; plain modulo keeps the
    // draw identical across standard libraries.
    std::mt19937_64 rng(config.seed);
    const std::size_t n = points.size(), k = *config.sample;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
      std::swap(points[i], points[j]);
    }
    points.resize(k);
    std::sort(points.begin(), points.end());
  }

  EvidenceBudget budget = config.budget;
  if (family.model) {
    for (const auto& p : {family.model->p1, family.model->p2, family.model->p3})
      if (std::find(budget.polygon_primes.begin(), budget.polygon_primes.end(), p) == budget.polygon_primes.end())
        budget.polygon_primes.push_back(p);
  }

  std::vector<Slot> slots(points.size());
  detail::parallel_for(points.size(), config.workers, [&](std::size_t i) {
    Slot& slot = slots[i];
    FieldCandidate& c = slot.candidate;
    c.u = points[i].first;
    c.v = points[i].second;
    c.modulus = modulus;
    c.residue_u = mod_pos(c.u, modulus);
    c.residue_v = mod_pos(c.v, modulus);
    try {
      c.poly = specialize(family, c.u, c.v);
      c.disc = discriminant(c.poly).get_num();
      c.disc_sign = sign(c.disc);
      if (!region_accepts(config.region, c.disc_sign)) {
        slot.rejected = true;
        return;
      }
      c.point_verified = verify_new_point(c.poly, family, c.u, c.v);
      if (c.disc == 0) {
        c.failure = "zero_discriminant";
        return;
      }
      c.certificate = certify_sd(collect_evidence(c.poly, family.d, budget));
      c.kernel = squarefree_kernel_split(c.disc, config.trial_bound, config.rho_iterations);
      if (c.certificate.status != SdStatus::certified_Sd) c.failure = "not_certified_Sd";
      else if (!c.point_verified) c.failure = "point_not_verified";
    } catch (const std::exception& e) {
      c.failure = std::string("error: ") + e.what();
    }
  });

  result.candidates.reserve(slots.size());
  for (auto& s : slots) {
    if (s.rejected) ++result.region_rejected;
    else result.candidates.push_back(std::move(s.candidate));
  }
  return result;
}

CountReport dedup_classes(const std::vector<FieldCandidate>& candidates, int d) {
  CountReport out;
  out.d = d;
  out.target_c = c_exponent(d, ExponentMode::theorem_general);
  std::map<Integer, ClassEntry> classes;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    if (c.disc == 0 || c.certificate.status != SdStatus::certified_Sd || !c.point_verified) {
      ++out.uncertified;
      continue;
    }
    if (!c.kernel.complete) {
      out.quarantine.push_back(i);
      continue;
    }
    ++out.counted_candidates;
    const Integer x = abs(c.disc);
    auto [it, fresh] = classes.try_emplace(c.kernel.kernel);
    ClassEntry& e = it->second;
    if (fresh) {
      e.kernel = c.kernel.kernel;
      e.x = x;
      e.first_index = i;
    } else if (x < e.x) {
      e.x = x;
    }
    ++e.multiplicity;
  }
  out.distinct = classes.size();
  std::vector<Integer> xs;
  for (auto& [k, e] : classes) {
    ++out.sign_histogram[sign(e.kernel)];
    ++out.multiplicity_histogram[e.multiplicity];
    xs.push_back(e.x);
    out.classes.push_back(e);
  }
  if (xs.empty()) return out;
  std::sort(xs.begin(), xs.end());

  // Dyadic grid 2^k from the first power of two >= min X to the first >= max X.
  auto ceil_log2 = [](const Integer& x) {
    const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
    return (mpz_scan1(x.get_mpz_t(), 0) == bits - 1) ? bits - 1 : bits;  // exact power of two
  };
  const std::size_t lo = ceil_log2(xs.front()), hi = ceil_log2(xs.back());
  std::vector<double> lx, ln;
  std::size_t idx = 0;
  for (std::size_t k = lo; k <= hi; ++k) {
    Integer X;
    mpz_ui_pow_ui(X.get_mpz_t(), 2, k);
    while (idx < xs.size() && xs[idx] <= X) ++idx;
    out.x_grid.push_back(X);
    out.n_of_x.push_back(idx);
    if (idx > 0) {
      lx.push_back(static_cast<double>(k) * std::log(2.0));
      ln.push_back(std::log(static_cast<double>(idx)));
    }
  }
  if (lx.size() >= 2) {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      sx += lx[i];
      sy += ln[i];
      sxx += lx[i] * lx[i];
      sxy += lx[i] * ln[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom != 0) out.slope = (n * sxy - sx * sy) / denom;
  }
  return out;
}

}  // namespace sdtwist
