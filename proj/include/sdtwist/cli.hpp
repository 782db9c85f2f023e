#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sdtwist/candidate.hpp"
#include "sdtwist/enumerate.hpp"

namespace sdtwist {

inline constexpr const char* kSchemaVersion = "sdtwist-report/1";

/// Invalid configuration; the message lists every offending field.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { exponents, model, family, certify, sweep, ev, density, pair_signs };

std::string to_string(Command c);
Command parse_command(const std::string& name);

struct RunConfig {
  Command command = Command::exponents;

  // curve y^2 = x^3 + a x + b
  Integer a = 0;
  Integer b = -2;
  int d = 3;
  int d_min = 3, d_max = 12;  // exponents table

  // model
  std::string model_kind = "epsilon";  // epsilon | integral | congruence
  Rational epsilon = Rational(1, 10);
  int max_retries = 8;
  std::optional<Integer> shift_a;
  std::optional<Rational> alpha;

  // boxes
  Integer U = 25;
  std::optional<Integer> U_v;
  Rational Y = 1;
  std::optional<Congruence> congruence;
  SignRegion region = SignRegion::any;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 1;

  // budgets
  int prime_budget = 60;
  std::uint64_t trial_bound = 10000;  // transposition witness search
  std::vector<Integer> polygon_primes;
  std::uint64_t kernel_bound = 10000;
  std::uint64_t rho_iterations = 20000;

  // certify
  std::string polynomial;

  // ev
  std::size_t max_instances = 1000;
  std::size_t exhaustive_limit = 1000000;
  bool certify_instances = true;

  // density
  std::vector<Integer> form;  // u^n first
  std::size_t samples = 200000;
  std::uint64_t local_bound = 100;

  // root numbers
  Integer conductor = 0;  // 0 = not given
  int root_number = 0;    // 0 = not given
  std::optional<Integer> pair_modulus;

  std::string format = "json";  // json | csv
  std::string output;           // empty = stdout
  bool timing = false;
  unsigned workers = 1;  // not echoed; results do not depend on it
};

/// Field-level diagnostics; empty when the configuration is usable.
std::vector<std::string> validate(const RunConfig& config);

struct Report {
  nlohmann::ordered_json body;
  std::vector<std::string> columns;  // CSV header for the records array
};

/// Validates (throwing UsageError) and dispatches to the module pipeline.
Report run(const RunConfig& config);

/// JSON: one object, fixed key order. CSV: header plus one row per record.
std::string emit(const Report& report, const std::string& format);

/// Inverse of the JSON emitter.
Report parse_report(std::string_view json_text);

/// Record columns of a command, fixed per schema version.
std::vector<std::string> record_columns(Command c);

/// Integers within 53 bits as JSON numbers, larger ones as decimal strings.
nlohmann::ordered_json json_integer(const Integer& n);

}  // namespace sdtwist
