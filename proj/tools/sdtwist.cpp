// sdtwist command-line driver.
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sdtwist/cli.hpp"
#include "sdtwist/polyarith.hpp"

using namespace sdtwist;

namespace {

Integer parse_integer(const std::string& text, const std::string& field) {
  Integer n;
  if (text.empty() || n.set_str(text, 10) != 0) throw UsageError(field + ": not an integer: '" + text + "'");
  return n;
}

Rational parse_rational(const std::string& text, const std::string& field) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0) throw UsageError(field + ": not a rational: '" + text + "'");
  r.canonicalize();
  return r;
}

std::vector<Integer> parse_integer_list(const std::string& text, const std::string& field) {
  std::vector<Integer> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) out.push_back(parse_integer(item, field));
  return out;
}

// Raw option text, converted after parsing so errors name the field.
struct RawOptions {
  std::string a, b, U, U_v, Y, epsilon, shift_a, alpha, congruence, region, polygon_primes, form, conductor,
      pair_modulus;
  std::optional<std::size_t> sample;
  int root_number = 0;
};

void add_options(CLI::App* sub, Command cmd, RunConfig& cfg, RawOptions& raw) {
  sub->add_option("--format", cfg.format, "json or csv")->capture_default_str();
  sub->add_option("--output,-o", cfg.output, "write the report to a file");
  sub->add_flag("--timing", cfg.timing, "append wall-clock timing");
  const bool curve = cmd == Command::model || cmd == Command::family || cmd == Command::sweep ||
                     cmd == Command::ev || cmd == Command::pair_signs;
  if (curve) {
    sub->add_option("-a", raw.a, "curve coefficient a");
    sub->add_option("-b", raw.b, "curve coefficient b");
    sub->add_option("-d", cfg.d, "twist degree")->capture_default_str();
    sub->add_option("--model", cfg.model_kind, "epsilon, integral or congruence")->capture_default_str();
    sub->add_option("--epsilon", raw.epsilon, "approximation tolerance (rational)");
    sub->add_option("--max-retries", cfg.max_retries)->capture_default_str();
    sub->add_option("--shift-a", raw.shift_a, "target shift a");
    sub->add_option("--alpha", raw.alpha, "target alpha (rational)");
  }
  if (cmd == Command::exponents) {
    sub->add_option("--d-min", cfg.d_min)->capture_default_str();
    sub->add_option("--d-max", cfg.d_max)->capture_default_str();
  }
  const bool box = cmd == Command::sweep || cmd == Command::pair_signs || cmd == Command::density;
  if (box) {
    sub->add_option("-U", raw.U, "box half-width for u (and v unless --U-v)");
    sub->add_option("--U-v", raw.U_v, "box bound for v");
    sub->add_option("--congruence", raw.congruence, "u0,v0,modulus");
    sub->add_option("--kernel-bound", cfg.kernel_bound, "trial division bound")->capture_default_str();
  }
  if (cmd == Command::sweep || cmd == Command::pair_signs) {
    sub->add_option("--region", raw.region, "any, positive or negative");
    sub->add_option("--sample", raw.sample, "random sample size");
    sub->add_option("--rho-iterations", cfg.rho_iterations)->capture_default_str();
  }
  if (box || cmd == Command::ev) sub->add_option("--seed", cfg.seed)->capture_default_str();
  if (cmd == Command::sweep || cmd == Command::pair_signs || cmd == Command::certify || cmd == Command::ev) {
    sub->add_option("--prime-budget", cfg.prime_budget)->capture_default_str();
    sub->add_option("--trial-bound", cfg.trial_bound, "transposition search bound")->capture_default_str();
    sub->add_option("--polygon-primes", raw.polygon_primes, "comma-separated primes");
  }
  if (cmd == Command::certify) sub->add_option("--poly", cfg.polynomial, "polynomial in x");
  if (cmd == Command::ev) {
    sub->add_option("-Y", raw.Y, "height parameter (rational)");
    sub->add_option("--max-instances", cfg.max_instances)->capture_default_str();
    sub->add_option("--exhaustive-limit", cfg.exhaustive_limit)->capture_default_str();
    sub->add_option("--certify", cfg.certify_instances)->capture_default_str();
  }
  if (cmd == Command::density) {
    sub->add_option("--form", raw.form, "coefficients, u^n first");
    sub->add_option("--samples", cfg.samples)->capture_default_str();
    sub->add_option("--local-bound", cfg.local_bound)->capture_default_str();
  }
  if (cmd == Command::pair_signs || cmd == Command::sweep || cmd == Command::ev || cmd == Command::family ||
      cmd == Command::model)
    sub->add_option("--conductor", raw.conductor, "conductor N");
  if (cmd == Command::pair_signs) {
    sub->add_option("--root-number", raw.root_number, "global root number, +1 or -1");
    sub->add_option("--pair-modulus", raw.pair_modulus, "residue modulus M (a power of N)");
  }
}

void finish_config(RunConfig& cfg, const RawOptions& raw) {
  if (!raw.a.empty()) cfg.a = parse_integer(raw.a, "a");
  if (!raw.b.empty()) cfg.b = parse_integer(raw.b, "b");
  if (!raw.U.empty()) cfg.U = parse_integer(raw.U, "U");
  if (!raw.U_v.empty()) cfg.U_v = parse_integer(raw.U_v, "U-v");
  if (!raw.Y.empty()) cfg.Y = parse_rational(raw.Y, "Y");
  if (!raw.epsilon.empty()) cfg.epsilon = parse_rational(raw.epsilon, "epsilon");
  if (!raw.shift_a.empty()) cfg.shift_a = parse_integer(raw.shift_a, "shift-a");
  if (!raw.alpha.empty()) cfg.alpha = parse_rational(raw.alpha, "alpha");
  if (!raw.congruence.empty()) {
    const auto v = parse_integer_list(raw.congruence, "congruence");
    if (v.size() != 3) throw UsageError("congruence: expected u0,v0,modulus");
    cfg.congruence = Congruence{v[0], v[1], v[2]};
  }
  if (!raw.region.empty()) {
    try {
      cfg.region = parse_sign_region(raw.region);
    } catch (const DomainError& e) {
      throw UsageError(std::string("region: ") + e.what());
    }
  }
  cfg.sample = raw.sample;
  if (!raw.polygon_primes.empty()) cfg.polygon_primes = parse_integer_list(raw.polygon_primes, "polygon-primes");
  if (!raw.form.empty()) cfg.form = parse_integer_list(raw.form, "form");
  if (!raw.conductor.empty()) cfg.conductor = parse_integer(raw.conductor, "conductor");
  if (!raw.pair_modulus.empty()) cfg.pair_modulus = parse_integer(raw.pair_modulus, "pair-modulus");
  cfg.root_number = raw.root_number;
  if (cfg.command == Command::certify && !cfg.polynomial.empty()) {
    try {
      (void)parse_poly(cfg.polynomial);
    } catch (const DomainError& e) {
      throw UsageError(std::string("poly: ") + e.what());
    }
  }
}

unsigned workers_from_env() {
  const char* env = std::getenv("SDTWIST_WORKERS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 1024) throw UsageError("SDTWIST_WORKERS: expected an integer in [1, 1024]");
  return static_cast<unsigned>(n);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit S_d fields from twists of elliptic curves"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config; [section] names match subcommands");
  app.allow_config_extras(false);

  const Command commands[] = {Command::exponents, Command::model, Command::family, Command::certify,
                              Command::sweep,     Command::ev,    Command::density, Command::pair_signs};
  const char* help[] = {"exponent tables",       "Weierstrass model construction", "twist family and discriminant",
                        "certify an S_d Galois group", "enumerate and count fields",   "EV-style polynomial generation",
                        "squarefree density of a binary form", "pair opposite-sign fields by root number"};
  std::vector<RunConfig> cfgs(std::size(commands));
  std::vector<RawOptions> raws(std::size(commands));
  std::vector<CLI::App*> subs;
  for (std::size_t i = 0; i < std::size(commands); ++i) {
    cfgs[i].command = commands[i];
    if (commands[i] == Command::pair_signs) cfgs[i].model_kind = "congruence";
    auto* sub = app.add_subcommand(to_string(commands[i]), help[i]);
    add_options(sub, commands[i], cfgs[i], raws[i]);
    subs.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::size_t idx = 0;
  while (idx < subs.size() && !subs[idx]->parsed()) ++idx;
  RunConfig& cfg = cfgs[idx];
  try {
    finish_config(cfg, raws[idx]);
    cfg.workers = workers_from_env();
    const Report report = run(cfg);
    const std::string text = emit(report, cfg.format);
    if (cfg.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(cfg.output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + cfg.output);
      out << text;
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
