#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdtwist/candidate.hpp"
#include "sdtwist/family.hpp"
#include "sdtwist/galois.hpp"

namespace sdtwist {

// ---- square classes ----------------------------------------------------

/// sign(n) * prod of the primes p <= B with v_p(n) odd. The leftover
/// cofactor c is accepted as complete when it is 1 or a perfect square, or
/// when c < (B+1)^3 (then c is a product of at most two primes above B and
/// squarefree unless square). Otherwise the kernel is partial and c is kept
/// aside. Throws on n = 0.
SquarefreeKernel squarefree_kernel(const Integer& n, std::uint64_t trial_bound);

/// Same, but an unresolved cofactor is further split by probable-prime tests
/// and Pollard rho (at most rho_iterations steps per split) before giving up.
SquarefreeKernel squarefree_kernel_split(const Integer& n, std::uint64_t trial_bound,
                                         std::uint64_t rho_iterations);

// ---- sweeps -------------------------------------------------------------

enum class SignRegion { any, positive, negative };

std::string to_string(SignRegion region);
SignRegion parse_sign_region(const std::string& text);

struct SweepConfig {
  Integer U = 25;
  std::optional<Integer> U_v;  // skew box; defaults to U
  std::optional<Congruence> congruence;
  SignRegion region = SignRegion::any;
  EvidenceBudget budget;
  std::uint64_t trial_bound = 10000;
  std::uint64_t rho_iterations = 20000;  // 0 disables cofactor splitting
  std::optional<std::size_t> sample;     // seeded subset of the eligible points
  std::uint64_t seed = 1;
  Integer residue_modulus = 1;  // for the residue_class field; congruence modulus when set
  unsigned workers = 1;
};

struct SweepResult {
  std::vector<FieldCandidate> candidates;  // sorted by (u, v)
  // Coprime points where P(x, u/v) drops degree; not specializations of degree d.
  std::vector<std::pair<Integer, Integer>> degenerate;
  std::size_t region_rejected = 0;
};

/// Coprime (u, v) with |u| <= U and 1 <= v <= U_v ((u, v) and (-u, -v) give
/// the same t), filtered by the congruence, specialized, certified, checked
/// against the carried point, and reduced to a square class.
SweepResult sweep(const TwistFamily& family, const SweepConfig& config);

// ---- counting -----------------------------------------------------------

struct ClassEntry {
  Integer kernel;
  Integer x;  // smallest |disc| among members
  std::size_t multiplicity = 0;
  std::size_t first_index = 0;
};

struct CountReport {
  int d = 0;
  std::vector<Integer> x_grid;   // dyadic
  std::vector<std::size_t> n_of_x;
  std::optional<double> slope;  // least squares of log N against log X
  Rational target_c;
  std::size_t distinct = 0;
  std::size_t counted_candidates = 0;
  std::vector<std::size_t> quarantine;  // indices with partial kernels
  std::size_t uncertified = 0;          // not certified_Sd or point not verified
  std::map<int, std::size_t> sign_histogram;          // over distinct classes
  std::map<std::size_t, std::size_t> multiplicity_histogram;
  std::vector<ClassEntry> classes;  // ordered by kernel
};

/// Groups counted candidates (complete kernel, certified_Sd, point verified)
/// by kernel. Partial kernels are listed in the quarantine and never counted.
CountReport dedup_classes(const std::vector<FieldCandidate>& candidates, int d);

// ---- squarefree values of binary forms ---------------------------------

/// F(u, v) = sum_i coeffs[i] u^(n-i) v^i with n = coeffs.size() - 1.
struct BinaryForm {
  std::vector<Integer> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Integer operator()(const Integer& u, const Integer& v) const;
  std::string str() const;
};

struct DensityConfig {
  Integer U = 10000;
  std::optional<Integer> U_v;
  std::optional<Congruence> congruence;
  std::size_t samples = 200000;  // exhaustive when the box is no larger
  std::uint64_t seed = 1;
  std::uint64_t trial_bound = 100000;
  std::uint64_t local_bound = 100;  // P0
  unsigned workers = 1;
};

struct DensityReport {
  double empirical = 0;
  double local_product = 0;
  std::size_t points = 0;
  std::size_t squarefree = 0;
  std::size_t partial = 0;  // unresolved; excluded from the empirical ratio
  bool exhaustive = false;
  std::vector<std::string> warnings;
};

/// rho_F(p^2) = #{(u, v) mod p^2 : F(u, v) = 0 mod p^2}.
std::uint64_t local_root_count(const BinaryForm& form, std::uint64_t p);

/// Empirical squarefree density of F over the box (all points, F = 0 counts
/// as not squarefree) and prod_{p <= P0} (1 - rho_F(p^2) / p^4).
DensityReport greaves_density(const BinaryForm& form, const DensityConfig& config);

// ---- Ellenberg-Venkatesh boxes ------------------------------------------

struct EVConfig {
  std::size_t max_instances = 1000;      // sample size when not exhaustive
  std::size_t exhaustive_limit = 1000000;
  std::uint64_t seed = 20240501;
  bool certify = true;
  EvidenceBudget budget{20, 2000, {}};
  unsigned workers = 1;
};

struct EVInstance {
  int d = 0;
  Rational Y;
  ExactPoly F, G, H;
  bool identity_ok = false;
  bool bounds_ok = false;
  std::optional<SdStatus> status;
  std::string flag;  // empty, "not_certified_Sd", or "zero_discriminant"
};

struct EVRun {
  int d = 0;
  Rational Y;
  std::vector<Integer> f_bounds;  // per free coefficient of F
  std::vector<Integer> g_bounds;
  Integer box_points;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  Rational C;  // |c_k| <= C Y^k
  std::vector<EVInstance> instances;
};

/// Integer coefficient boxes for (F, G): even d has F monic of degree d/2
/// with |a_k| <= Y^k and G = sum_{k=2}^{d/2} b_k x^(d/2-k), |b_k| <= Y^(k-3/2);
/// odd d has G monic of degree (d-3)/2 with |b_k| <= Y^k and
/// F = sum_{k=0}^{(d-1)/2} a_k x^((d-1)/2-k), |a_k| <= Y^(k+1/2). Bounds are
/// floored.
std::pair<std::vector<Integer>, std::vector<Integer>> ev_boxes(int d, const Rational& Y);

/// (d + 1)(1 + sum |f_m|).
Rational ev_bound_constant(const ExactPoly& f, int d);

/// Assembles F and G from box coordinates (F coefficients then G's).
std::pair<ExactPoly, ExactPoly> ev_polys(int d, const std::vector<Integer>& f_coeffs,
                                         const std::vector<Integer>& g_coeffs);

EVRun ev_generate(const ExactPoly& f, int d, const Rational& Y, const EVConfig& config = {});

// ---- exponents ----------------------------------------------------------

/// d^2/4 - d/4 + 1/2, cross-checked against the direct box sum.
Rational ev_exponent(int d);
/// Sum of the box exponents for the parity of d.
Rational ev_exponent_direct(int d);

enum class ExponentMode { theorem_general, small_degree, large_degree, field_improvement, conditional };

std::string to_string(ExponentMode mode);
ExponentMode parse_exponent_mode(const std::string& text);
/// Smallest d for which the mode's formula is stated.
int exponent_mode_min_degree(ExponentMode mode);

Rational c_exponent(int d, ExponentMode mode);

struct AlphaBound {
  Rational alpha;    // min(schmidt, ev_best)
  Rational schmidt;  // (d + 2) / 4
  Rational ev_best;
  std::pair<int, int> ev_rk;                   // (r, k) attaining ev_best
  std::optional<std::pair<int, int>> witness;  // ev_rk when it beats Schmidt
  // r = 2 with the smallest feasible k, compared with d/4 - 3/4 + 1/(2d).
  int r2_k = 0;
  Rational r2_alpha;
  Rational target;
  bool r2_reaches_target = false;
};

/// alpha = 4k/(d-2) * C(r+4k, r) subject to C(r+k, r) > d/2, searched over
/// 1 <= r <= max_r with the smallest feasible k per r (the bound grows in k).
AlphaBound schmidt_ev_alpha(int d, int max_r = 8);

/// 4k/(d-2) * C(r+4k, r).
Rational ev_alpha(int d, int r, int k);
/// C(r+k, r) > d/2.
bool ev_constraint(int d, int r, int k);

}  // namespace sdtwist
