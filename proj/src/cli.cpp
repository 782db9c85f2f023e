#include "sdtwist/cli.hpp"

#include <chrono>
#include <sstream>

#include "sdtwist/family.hpp"
#include "sdtwist/galois.hpp"
#include "sdtwist/polyarith.hpp"
#include "sdtwist/primes.hpp"
#include "sdtwist/rootnum.hpp"

namespace sdtwist {

using json = nlohmann::ordered_json;

namespace {

const std::vector<std::pair<Command, std::string>> kCommandNames{
    {Command::exponents, "exponents"}, {Command::model, "model"},     {Command::family, "family"},
    {Command::certify, "certify"},     {Command::sweep, "sweep"},     {Command::ev, "ev"},
    {Command::density, "density"},     {Command::pair_signs, "pair-signs"}};

json jrat(const Rational& r) { return r.get_str(); }
json jpoly(const ExactPoly& f, const char* var = "x") { return to_string(f, var); }

json jopt_int(const std::optional<Integer>& n) { return n ? json_integer(*n) : json(nullptr); }

json jints(const std::vector<Integer>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(json_integer(x));
  return out;
}

// "(t^2)*x^6 + (-1)*x^3 + ..." with coefficients in t.
std::string bivar_string(const BivarPoly& p) {
  std::string out;
  for (int i = p.degree(); i >= 0; --i) {
    const ExactPoly& c = p.coeff(static_cast<std::size_t>(i));
    if (c.is_zero()) continue;
    if (!out.empty()) out += " + ";
    out += "(" + to_string(c, "t") + ")";
    if (i > 0) out += i == 1 ? "*x" : "*x^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

json cycle_types(const GaloisEvidence& ev) {
  json out = json::array();
  for (const auto& t : ev.observed_cycle_types) out.push_back(t.str());
  return out;
}

json provenance(const GaloisEvidence& ev) {
  json out = json::array();
  for (const auto& s : ev.provenance)
    out.push_back(json{{"op", s.op}, {"prime", json_integer(s.prime)}, {"detail", s.detail}});
  return out;
}

json model_json(const WeierstrassModel& m) {
  return json{{"B", jrat(m.B)},
              {"C", jrat(m.C)},
              {"D", jrat(m.D)},
              {"cubic", jpoly(m.cubic())},
              {"p1", json_integer(m.p1)},
              {"p2", json_integer(m.p2)},
              {"p3", json_integer(m.p3)},
              {"shift_a", json_integer(m.target_shift)},
              {"alpha", jrat(m.target_alpha)},
              {"epsilon", jrat(m.epsilon)},
              {"shift_r", json_integer(m.shift_r)},
              {"f_r", jpoly(m.f_r)},
              {"f_tilde", jpoly(m.f_tilde)},
              {"u", jrat(m.u)},
              {"k", m.k},
              // conductor support is not computed; Disc(curve) stands in for it
              {"excluded_support", "curve_discriminant"}};
}

json config_echo(const RunConfig& c) {
  json cong = nullptr;
  if (c.congruence)
    cong = json{{"u0", json_integer(c.congruence->u0)},
                {"v0", json_integer(c.congruence->v0)},
                {"modulus", json_integer(c.congruence->modulus)}};
  return json{{"command", to_string(c.command)},
              {"a", json_integer(c.a)},
              {"b", json_integer(c.b)},
              {"d", c.d},
              {"d_min", c.d_min},
              {"d_max", c.d_max},
              {"model_kind", c.model_kind},
              {"epsilon", jrat(c.epsilon)},
              {"max_retries", c.max_retries},
              {"shift_a", jopt_int(c.shift_a)},
              {"alpha", c.alpha ? jrat(*c.alpha) : json(nullptr)},
              {"U", json_integer(c.U)},
              {"U_v", jopt_int(c.U_v)},
              {"Y", jrat(c.Y)},
              {"congruence", cong},
              {"region", to_string(c.region)},
              {"sample", c.sample ? json(*c.sample) : json(nullptr)},
              {"seed", json_integer(from_u64(c.seed))},
              {"prime_budget", c.prime_budget},
              {"trial_bound", json_integer(from_u64(c.trial_bound))},
              {"polygon_primes", jints(c.polygon_primes)},
              {"kernel_bound", json_integer(from_u64(c.kernel_bound))},
              {"rho_iterations", json_integer(from_u64(c.rho_iterations))},
              {"polynomial", c.polynomial},
              {"max_instances", c.max_instances},
              {"exhaustive_limit", c.exhaustive_limit},
              {"certify_instances", c.certify_instances},
              {"form", jints(c.form)},
              {"samples", c.samples},
              {"local_bound", json_integer(from_u64(c.local_bound))},
              {"conductor", json_integer(c.conductor)},
              {"root_number", c.root_number},
              {"pair_modulus", jopt_int(c.pair_modulus)},
              {"format", c.format}};
}

// Model primes and budgets travel with every record so it can be re-derived alone.
json candidate_json(const FieldCandidate& c, const json& provenance) {
  const auto& ev = c.certificate.evidence;
  return json{{"u", json_integer(c.u)},
              {"v", json_integer(c.v)},
              {"poly", jpoly(c.poly)},
              {"disc", json_integer(c.disc)},
              {"disc_sign", c.disc_sign},
              {"kernel", json_integer(c.kernel.kernel)},
              {"kernel_complete", c.kernel.complete},
              {"kernel_cofactor", json_integer(c.kernel.cofactor)},
              {"residue_u", json_integer(c.residue_u)},
              {"residue_v", json_integer(c.residue_v)},
              {"status", to_string(c.certificate.status)},
              {"route", c.certificate.route},
              {"irreducibility_route", ev.irreducibility_route},
              {"transposition_prime", jopt_int(ev.transposition_prime)},
              {"cycle_types", cycle_types(ev)},
              {"point_verified", c.point_verified},
              {"failure", c.failure},
              {"provenance", provenance}};
}

json sweep_provenance(const TwistFamily& family, const RunConfig& c) {
  json primes = json::array();
  if (family.model) primes = json::array({json_integer(family.model->p1), json_integer(family.model->p2),
                                          json_integer(family.model->p3)});
  return json{{"d", family.d},
              {"f", jpoly(family.f)},
              {"model_primes", primes},
              {"prime_budget", c.prime_budget},
              {"trial_bound", json_integer(from_u64(c.trial_bound))},
              {"polygon_primes", jints(c.polygon_primes)},
              {"kernel_bound", json_integer(from_u64(c.kernel_bound))},
              {"rho_iterations", json_integer(from_u64(c.rho_iterations))}};
}

json count_json(const CountReport& r) {
  json grid = json::array();
  for (std::size_t i = 0; i < r.x_grid.size(); ++i)
    grid.push_back(json{{"X", json_integer(r.x_grid[i])}, {"N", r.n_of_x[i]}});
  json signs = json::object();
  signs["negative"] = r.sign_histogram.count(-1) ? r.sign_histogram.at(-1) : 0;
  signs["positive"] = r.sign_histogram.count(1) ? r.sign_histogram.at(1) : 0;
  json mult = json::array();
  for (const auto& [m, n] : r.multiplicity_histogram) mult.push_back(json{{"multiplicity", m}, {"classes", n}});
  json quarantine = json::array();
  for (auto i : r.quarantine) quarantine.push_back(i);
  return json{{"d", r.d},
              {"distinct", r.distinct},
              {"counted_candidates", r.counted_candidates},
              {"uncertified", r.uncertified},
              {"quarantine", quarantine},
              {"grid", grid},
              {"slope", r.slope ? json(*r.slope) : json(nullptr)},
              {"target_c", jrat(r.target_c)},
              {"sign_histogram", signs},
              {"multiplicity_histogram", mult}};
}

json root_json(const RootReport& r) {
  return json{{"d", r.d},
              {"disc", json_integer(r.disc)},
              {"gcd_ok", r.gcd_ok},
              {"gcd", json_integer(r.gcd)},
              {"kronecker", r.kronecker_value},
              {"w_rel", r.w_rel ? json(*r.w_rel) : json(nullptr)}};
}

Curve curve_of(const RunConfig& c) { return Curve{c.a, c.b}; }

struct FamilyBuild {
  TwistFamily family;
  std::optional<DiscriminantForm> form;
  int retries = 0;
  std::optional<CongruenceModel> congruence;
};

FamilyBuild make_family(const RunConfig& c, bool want_form) {
  FamilyBuild out;
  const Curve curve = curve_of(c);
  if (c.model_kind == "epsilon") {
    FamilyOptions o;
    o.epsilon = c.epsilon;
    o.max_retries = c.max_retries;
    o.shift_a = c.shift_a;
    o.alpha = c.alpha;
    auto built = build_family(curve, c.d, o);
    out.family = std::move(built.family);
    out.form = std::move(built.form);
    out.retries = built.retries;
    return out;
  }
  if (c.model_kind == "integral") {
    out.family = twist_polynomial(curve.cubic(), c.d);
  } else {
    out.congruence = congruence_model(curve, c.conductor, c.epsilon);
    out.family = twist_polynomial(out.congruence->f, c.d);
  }
  if (want_form) out.form = disc_form(out.family);
  return out;
}

json family_meta(const FamilyBuild& fb) {
  json out{{"d", fb.family.d},
           {"parity", to_string(fb.family.parity)},
           {"f", jpoly(fb.family.f)},
           {"model", fb.family.model ? model_json(*fb.family.model) : json(nullptr)},
           {"congruence_model", nullptr},
           {"retries", fb.retries}};
  if (fb.congruence)
    out["congruence_model"] = json{{"modulus", json_integer(fb.congruence->modulus)},
                                   {"p1", json_integer(fb.congruence->p1)},
                                   {"k", fb.congruence->k}};
  return out;
}

SweepConfig sweep_config(const RunConfig& c) {
  SweepConfig s;
  s.U = c.U;
  s.U_v = c.U_v;
  s.congruence = c.congruence;
  s.region = c.region;
  s.budget = EvidenceBudget{c.prime_budget, c.trial_bound, c.polygon_primes};
  s.trial_bound = c.kernel_bound;
  s.rho_iterations = c.rho_iterations;
  s.sample = c.sample;
  s.seed = c.seed;
  s.workers = c.workers;
  if (c.command == Command::pair_signs) s.residue_modulus = c.pair_modulus.value_or(c.conductor);
  return s;
}

// ---- commands -----------------------------------------------------------

void run_exponents(const RunConfig& c, json& records, json& summary) {
  const ExponentMode modes[] = {ExponentMode::small_degree, ExponentMode::large_degree,
                                ExponentMode::field_improvement, ExponentMode::conditional,
                                ExponentMode::theorem_general};
  for (int d = c.d_min; d <= c.d_max; ++d) {
    json rec{{"d", d}};
    for (auto m : modes)
      rec[to_string(m)] = d >= exponent_mode_min_degree(m) ? jrat(c_exponent(d, m)) : json(nullptr);
    rec["ev_exponent"] = d >= 4 ? jrat(ev_exponent(d)) : json(nullptr);
    const auto alpha = schmidt_ev_alpha(d);
    rec["alpha"] = jrat(alpha.alpha);
    rec["alpha_witness"] = alpha.witness ? json::array({alpha.witness->first, alpha.witness->second}) : json(nullptr);
    rec["alpha_r2_k"] = alpha.r2_k;
    rec["alpha_r2_reaches_target"] = alpha.r2_reaches_target;
    records.push_back(rec);
  }
  summary["rows"] = records.size();
}

void run_model(const RunConfig& c, json& records, json& summary) {
  const Integer a = c.shift_a.value_or(c.d == 3 ? 0 : (c.d % 2 ? 1 : -1));
  const Rational alpha = c.alpha.value_or(Rational(a));
  const auto m = build_model(curve_of(c), a, alpha, c.epsilon, c.d);
  const auto check = verify_model(m);
  json rec = model_json(m);
  rec["denominators_ok"] = check.denominators;
  rec["p2_condition"] = check.p2_condition;
  rec["p3_congruence"] = check.p3_congruence;
  rec["close_to_target"] = check.close_to_target;
  rec["nonsingular"] = check.nonsingular;
  records.push_back(rec);
  summary["verified"] = check.all();
}

void run_family(const RunConfig& c, json& records, json& summary) {
  const FamilyBuild fb = make_family(c, true);
  const auto& form = *fb.form;
  json decomposition = json::array();
  for (const auto& f : form.decomposition.factors)
    decomposition.push_back(json{{"factor", jpoly(f.factor, "t")}, {"multiplicity", f.multiplicity}});
  json rec{{"P", bivar_string(fb.family.P)},
           {"F", bivar_string(fb.family.F)},
           {"G", bivar_string(fb.family.G)},
           {"identity_sign", fb.family.identity_sign},
           {"identity_holds", fb.family.identity_holds()},
           {"disc", jpoly(form.full, "t")},
           {"t_power", form.t_power},
           {"unit", jrat(form.unit)},
           {"h", jpoly(form.h, "t")},
           {"degree_h", form.degree_h},
           {"decomposition", decomposition},
           {"non_squarefull", form.non_squarefull()},
           {"simple_factor", form.simple_factor ? jpoly(*form.simple_factor, "t") : json(nullptr)},
           {"positive_at", form.positive_at ? jrat(*form.positive_at) : json(nullptr)},
           {"negative_at", form.negative_at ? jrat(*form.negative_at) : json(nullptr)}};
  records.push_back(rec);
  summary["family"] = family_meta(fb);
  summary["both_signs"] = form.both_signs();
}

void run_certify(const RunConfig& c, json& records, json& summary) {
  const ExactPoly f = parse_poly(c.polynomial);
  if (f.degree() < 2) throw DomainError("certify needs a polynomial of degree at least 2");
  const auto ev = collect_evidence(f, f.degree(), EvidenceBudget{c.prime_budget, c.trial_bound, c.polygon_primes});
  const auto cert = certify_sd(ev);
  records.push_back(json{{"poly", jpoly(f)},
                         {"degree", f.degree()},
                         {"status", to_string(cert.status)},
                         {"route", cert.route},
                         {"irreducibility", to_string(ev.irreducibility)},
                         {"irreducibility_route", ev.irreducibility_route},
                         {"transposition_prime", jopt_int(ev.transposition_prime)},
                         {"discriminant_is_square",
                          ev.discriminant_is_square ? json(*ev.discriminant_is_square) : json(nullptr)},
                         {"cycle_types", cycle_types(ev)},
                         {"provenance", provenance(ev)}});
  summary["certified"] = cert.status == SdStatus::certified_Sd;
}

void run_sweep(const RunConfig& c, json& records, json& summary) {
  const FamilyBuild fb = make_family(c, false);
  const auto res = sweep(fb.family, sweep_config(c));
  const json prov = sweep_provenance(fb.family, c);
  for (const auto& cand : res.candidates) records.push_back(candidate_json(cand, prov));
  json degenerate = json::array();
  for (const auto& [u, v] : res.degenerate) degenerate.push_back(json::array({json_integer(u), json_integer(v)}));
  summary["family"] = family_meta(fb);
  summary["candidates"] = res.candidates.size();
  summary["degenerate"] = degenerate;
  summary["region_rejected"] = res.region_rejected;
  summary["count"] = count_json(dedup_classes(res.candidates, c.d));
}

void run_ev(const RunConfig& c, json& records, json& summary) {
  ExactPoly f;
  std::optional<WeierstrassModel> model;
  if (c.model_kind == "integral") {
    f = curve_of(c).cubic();
  } else if (c.model_kind == "congruence") {
    f = congruence_model(curve_of(c), c.conductor, c.epsilon).f;
  } else {
    const Integer a = c.shift_a.value_or(c.d % 2 ? 1 : -1);
    model = build_model(curve_of(c), a, c.alpha.value_or(Rational(a)), c.epsilon, c.d);
    f = model->cubic();
  }
  EVConfig e;
  e.max_instances = c.max_instances;
  e.exhaustive_limit = c.exhaustive_limit;
  e.seed = c.seed;
  e.certify = c.certify_instances;
  e.budget = EvidenceBudget{c.prime_budget, c.trial_bound, c.polygon_primes};
  e.workers = c.workers;
  const auto run = ev_generate(f, c.d, c.Y, e);
  std::size_t identity = 0, bounds = 0, certified = 0, flagged = 0;
  for (const auto& inst : run.instances) {
    identity += inst.identity_ok;
    bounds += inst.bounds_ok;
    certified += inst.status == SdStatus::certified_Sd;
    flagged += !inst.flag.empty();
    records.push_back(json{{"F", jpoly(inst.F)},
                           {"G", jpoly(inst.G)},
                           {"H", jpoly(inst.H)},
                           {"identity_ok", inst.identity_ok},
                           {"bounds_ok", inst.bounds_ok},
                           {"status", inst.status ? json(to_string(*inst.status)) : json(nullptr)},
                           {"flag", inst.flag}});
  }
  summary["f"] = jpoly(f);
  summary["model"] = model ? model_json(*model) : json(nullptr);
  summary["f_bounds"] = jints(run.f_bounds);
  summary["g_bounds"] = jints(run.g_bounds);
  summary["box_points"] = json_integer(run.box_points);
  summary["exhaustive"] = run.exhaustive;
  summary["seed"] = json_integer(from_u64(run.seed));
  summary["C"] = jrat(run.C);
  summary["ev_exponent"] = jrat(ev_exponent(c.d));
  summary["instances"] = run.instances.size();
  summary["identity_ok"] = identity;
  summary["bounds_ok"] = bounds;
  summary["certified"] = certified;
  summary["flagged"] = flagged;
}

void run_density(const RunConfig& c, json& records, json& summary) {
  const BinaryForm form{c.form};
  DensityConfig d;
  d.U = c.U;
  d.U_v = c.U_v;
  d.congruence = c.congruence;
  d.samples = c.samples;
  d.seed = c.seed;
  d.trial_bound = c.kernel_bound;
  d.local_bound = c.local_bound;
  d.workers = c.workers;
  const auto r = greaves_density(form, d);
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back(w);
  records.push_back(json{{"form", form.str()},
                         {"empirical", r.empirical},
                         {"local_product", r.local_product},
                         {"points", r.points},
                         {"squarefree", r.squarefree},
                         {"partial", r.partial},
                         {"exhaustive", r.exhaustive},
                         {"warnings", warnings}});
  summary["relative_gap"] = r.local_product > 0 ? (r.empirical - r.local_product) / r.local_product : 0.0;
}

void run_pair_signs(const RunConfig& c, json& records, json& summary) {
  RunConfig cc = c;
  if (!cc.congruence && c.d == 3) cc.congruence = cubic_sign_preset(c.conductor);
  const FamilyBuild fb = make_family(cc, false);
  const Integer modulus = c.pair_modulus.value_or(c.conductor);
  const auto res = sweep(fb.family, sweep_config(cc));
  const CurveArithData data{c.conductor, c.root_number};
  const auto pairs = sign_pairing(res.candidates, modulus, data);
  std::size_t opposite = 0;
  for (const auto& p : pairs) {
    const auto& a = res.candidates[p.first];
    const auto& b = res.candidates[p.second];
    const bool ok = p.first_report.w_rel && p.second_report.w_rel && *p.first_report.w_rel == -*p.second_report.w_rel;
    opposite += ok;
    records.push_back(json{{"u1", json_integer(a.u)},
                           {"v1", json_integer(a.v)},
                           {"disc1", json_integer(a.disc)},
                           {"w_rel1", p.first_report.w_rel ? json(*p.first_report.w_rel) : json(nullptr)},
                           {"u2", json_integer(b.u)},
                           {"v2", json_integer(b.v)},
                           {"disc2", json_integer(b.disc)},
                           {"w_rel2", p.second_report.w_rel ? json(*p.second_report.w_rel) : json(nullptr)},
                           {"residue_u", json_integer(a.residue_u)},
                           {"residue_v", json_integer(a.residue_v)},
                           {"opposite", ok}});
  }
  json roots = json::array();
  for (const auto& cand : res.candidates)
    if (cand.disc != 0) roots.push_back(root_json(relative_root_number(data, c.d, cand.disc)));
  json cong = nullptr;
  if (cc.congruence)
    cong = json{{"u0", json_integer(cc.congruence->u0)},
                {"v0", json_integer(cc.congruence->v0)},
                {"modulus", json_integer(cc.congruence->modulus)}};
  summary["family"] = family_meta(fb);
  summary["congruence_used"] = cong;
  summary["pair_modulus"] = json_integer(modulus);
  summary["candidates"] = res.candidates.size();
  summary["pairs"] = pairs.size();
  summary["all_opposite"] = opposite == pairs.size();
  summary["root_reports"] = roots;
}

std::string csv_cell(const json& v) {
  std::string s;
  if (v.is_string()) s = v.get<std::string>();
  else if (v.is_null()) s = "";
  else s = v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

}  // namespace

std::string to_string(Command c) {
  for (const auto& [cmd, name] : kCommandNames)
    if (cmd == c) return name;
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (const auto& [cmd, n] : kCommandNames)
    if (n == name) return cmd;
  throw UsageError("unknown command '" + name + "'");
}

json json_integer(const Integer& n) {
  static const Integer limit = Integer("9007199254740991");  // 2^53 - 1
  if (abs(n) <= limit) return json(n.get_si());
  return json(n.get_str());
}

std::vector<std::string> record_columns(Command c) {
  switch (c) {
    case Command::exponents:
      return {"d", "small_degree", "large_degree", "field_improvement", "conditional", "theorem_general",
              "ev_exponent", "alpha", "alpha_witness", "alpha_r2_k", "alpha_r2_reaches_target"};
    case Command::model:
      return {"B", "C", "D", "cubic", "p1", "p2", "p3", "shift_a", "alpha", "epsilon", "shift_r", "f_r", "f_tilde",
              "u", "k", "denominators_ok", "p2_condition", "p3_congruence", "close_to_target", "nonsingular"};
    case Command::family:
      return {"P", "F", "G", "identity_sign", "identity_holds", "disc", "t_power", "unit", "h", "degree_h",
              "decomposition", "non_squarefull", "simple_factor", "positive_at", "negative_at"};
    case Command::certify:
      return {"poly", "degree", "status", "route", "irreducibility", "irreducibility_route", "transposition_prime",
              "discriminant_is_square", "cycle_types", "provenance"};
    case Command::sweep:
      return {"u", "v", "poly", "disc", "disc_sign", "kernel", "kernel_complete", "kernel_cofactor", "residue_u",
              "residue_v", "status", "route", "irreducibility_route", "transposition_prime", "cycle_types",
              "point_verified", "failure", "provenance"};
    case Command::ev: return {"F", "G", "H", "identity_ok", "bounds_ok", "status", "flag"};
    case Command::density:
      return {"form", "empirical", "local_product", "points", "squarefree", "partial", "exhaustive", "warnings"};
    case Command::pair_signs:
      return {"u1", "v1", "disc1", "w_rel1", "u2", "v2", "disc2", "w_rel2", "residue_u", "residue_v", "opposite"};
  }
  return {};
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> errs;
  auto need = [&](bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
  };
  const Command cmd = c.command;
  const bool uses_curve = cmd == Command::model || cmd == Command::family || cmd == Command::sweep ||
                          cmd == Command::ev || cmd == Command::pair_signs;
  if (uses_curve) {
    need(4 * c.a * c.a * c.a + 27 * c.b * c.b != 0, "a, b: curve y^2 = x^3 + a x + b is singular");
    need(c.d >= (cmd == Command::ev ? 4 : 3), cmd == Command::ev ? "d: must be at least 4" : "d: must be at least 3");
    need(c.d <= 40, "d: must be at most 40");
    need(c.model_kind == "epsilon" || c.model_kind == "integral" || c.model_kind == "congruence",
         "model: must be epsilon, integral or congruence");
    need(c.epsilon > 0, "epsilon: must be positive");
    need(c.max_retries >= 0, "max-retries: must be non-negative");
    if (c.model_kind == "congruence") need(c.conductor >= 2, "conductor: required (>= 2) for the congruence model");
  }
  if (cmd == Command::exponents) {
    need(c.d_min >= 3, "d-min: must be at least 3");
    need(c.d_max >= c.d_min, "d-max: must be at least d-min");
    need(c.d_max <= 100000, "d-max: must be at most 100000");
  }
  if (cmd == Command::sweep || cmd == Command::pair_signs || cmd == Command::density) {
    need(c.U >= 1, "U: must be at least 1");
    need(c.U <= 100000, "U: must be at most 100000");
    if (c.U_v) need(*c.U_v >= 1 && *c.U_v <= 100000, "U-v: must be in [1, 100000]");
    if (c.congruence) need(c.congruence->modulus >= 1, "congruence: modulus must be positive");
    if (c.sample) need(*c.sample >= 1, "sample: must be at least 1");
  }
  if (cmd == Command::sweep || cmd == Command::pair_signs || cmd == Command::certify || cmd == Command::ev) {
    need(c.prime_budget >= 1, "prime-budget: must be at least 1");
    need(c.trial_bound >= 2, "trial-bound: must be at least 2");
    for (const auto& p : c.polygon_primes) need(is_prime(p), "polygon-primes: " + p.get_str() + " is not prime");
  }
  if (cmd == Command::sweep || cmd == Command::pair_signs || cmd == Command::density)
    need(c.kernel_bound >= 2, "kernel-bound: must be at least 2");
  if (cmd == Command::certify) need(!c.polynomial.empty(), "poly: required");
  if (cmd == Command::ev) {
    need(c.Y >= 1, "Y: must be at least 1");
    need(c.max_instances >= 1, "max-instances: must be at least 1");
  }
  if (cmd == Command::density) {
    need(!c.form.empty(), "form: required");
    need(c.form.size() <= 7, "form: degree must be at most 6");
    need(c.samples >= 1, "samples: must be at least 1");
    need(c.local_bound >= 2, "local-bound: must be at least 2");
  }
  if (cmd == Command::pair_signs) {
    need(c.conductor >= 2, "conductor: required (>= 2)");
    need(c.root_number == 1 || c.root_number == -1, "root-number: required, +1 or -1");
    if (c.pair_modulus) need(*c.pair_modulus >= 2, "pair-modulus: must be a power of the conductor");
  }
  need(c.format == "json" || c.format == "csv", "format: must be json or csv");
  return errs;
}

Report run(const RunConfig& config) {
  const auto errs = validate(config);
  if (!errs.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& e : errs) msg += "\n  " + e;
    throw UsageError(msg);
  }
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.columns = record_columns(config.command);
  json records = json::array();
  json summary = json::object();
  switch (config.command) {
    case Command::exponents: run_exponents(config, records, summary); break;
    case Command::model: run_model(config, records, summary); break;
    case Command::family: run_family(config, records, summary); break;
    case Command::certify: run_certify(config, records, summary); break;
    case Command::sweep: run_sweep(config, records, summary); break;
    case Command::ev: run_ev(config, records, summary); break;
    case Command::density: run_density(config, records, summary); break;
    case Command::pair_signs: run_pair_signs(config, records, summary); break;
  }
  report.body = json{{"schema", kSchemaVersion},
                     {"command", to_string(config.command)},
                     {"config", config_echo(config)},
                     {"records", records},
                     {"summary", summary}};
  if (config.timing)
    report.body["timing"] = json{
        {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()},
        {"workers", config.workers}};
  return report;
}

std::string emit(const Report& report, const std::string& format) {
  if (format == "json") return report.body.dump(2) + "\n";
  if (format != "csv") throw UsageError("format: must be json or csv");
  std::ostringstream os;
  for (std::size_t i = 0; i < report.columns.size(); ++i) os << (i ? "," : "") << report.columns[i];
  os << "\n";
  const json& records = report.body.at("records");
  for (const auto& rec : records) {
    for (std::size_t i = 0; i < report.columns.size(); ++i) {
      const auto it = rec.find(report.columns[i]);
      os << (i ? "," : "") << (it == rec.end() ? std::string() : csv_cell(*it));
    }
    os << "\n";
  }
  return os.str();
}

Report parse_report(std::string_view json_text) {
  Report r;
  r.body = json::parse(json_text.begin(), json_text.end());
  if (!r.body.is_object() || !r.body.contains("schema") || !r.body.contains("records"))
    throw std::runtime_error("not an sdtwist report");
  if (r.body.contains("command")) r.columns = record_columns(parse_command(r.body.at("command").get<std::string>()));
  return r;
}

}  // namespace sdtwist
