#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sdtwist/cli.hpp"

using namespace sdtwist;

namespace {

RunConfig sweep_cfg() {
  RunConfig c;
  c.command = Command::sweep;
  c.model_kind = "integral";
  c.a = -1;
  c.b = 0;
  c.d = 3;
  c.U = 25;
  return c;
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

struct Proc {
  int status;
  std::string out;
};

Proc run_binary(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " SDTWIST_BIN " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

}  // namespace

TEST_CASE("json integers switch to strings past 53 bits") {
  CHECK(json_integer(Integer("9007199254740991")).is_number());
  CHECK(json_integer(Integer("-9007199254740991")).is_number());
  CHECK(json_integer(Integer("9007199254740992")).is_string());
  CHECK(json_integer(Integer("-123456789012345678901234567890")).get<std::string>() ==
        "-123456789012345678901234567890");
}

TEST_CASE("exponent table") {
  RunConfig c;
  c.command = Command::exponents;
  c.d_min = 3;
  c.d_max = 12;
  const auto r = run(c);
  const auto& recs = r.body.at("records");
  REQUIRE(recs.size() == 10);
  CHECK(recs[0].at("d") == 3);
  CHECK(recs[0].at("theorem_general") == "1/3");
  CHECK(recs[0].at("large_degree").is_null());
  CHECK(recs[1].at("ev_exponent") == "7/2");
  CHECK(recs[4].at("ev_exponent") == "11");
}

TEST_CASE("certify a cubic") {
  RunConfig c;
  c.command = Command::certify;
  c.polynomial = "x^3 - x^2 - 2*x - 1";
  const auto r = run(c);
  const auto& rec = r.body.at("records").at(0);
  CHECK(rec.at("status") == "certified_Sd");
  CHECK(rec.at("transposition_prime") == 31);
  CHECK(r.body.at("summary").at("certified") == true);
}

TEST_CASE("sweep report carries counts and provenance") {
  const auto r = run(sweep_cfg());
  const auto& body = r.body;
  std::vector<std::string> keys;
  for (auto it = body.begin(); it != body.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"schema", "command", "config", "records", "summary"});
  CHECK(body.at("schema") == kSchemaVersion);
  const auto& count = body.at("summary").at("count");
  CHECK(count.at("sign_histogram").at("negative").get<int>() > 0);
  CHECK(count.at("sign_histogram").at("positive").get<int>() > 0);
  CHECK(count.at("target_c") == "1/3");
  const auto& rec = body.at("records").at(0);
  CHECK(rec.contains("provenance"));
  CHECK(rec.at("provenance").at("prime_budget") == 60);
  CHECK(rec.at("route").is_string());
}

TEST_CASE("model discriminants are emitted as decimal strings") {
  RunConfig c;
  c.command = Command::sweep;
  c.U = 3;
  const auto r = run(c);
  REQUIRE(!r.body.at("records").empty());
  for (const auto& x : r.body.at("records")) {
    CHECK(x.at("disc").is_string());
    CHECK(x.at("provenance").at("model_primes").size() == 3);
  }
}

TEST_CASE("empty sweep is still a valid report") {
  RunConfig c = sweep_cfg();
  c.b = -2;
  c.a = 0;
  c.U = 5;
  c.region = SignRegion::positive;  // x^3 - 2 twists are all negative
  const auto r = run(c);
  const std::string text = emit(r, "json");
  const auto back = parse_report(text);
  CHECK(back.body.at("records").is_array());
  CHECK(back.body.at("records").empty());
  CHECK(line_count(emit(r, "csv")) == 1);
}

TEST_CASE("round trip and csv shape") {
  std::vector<RunConfig> cfgs;
  cfgs.push_back(sweep_cfg());
  RunConfig e;
  e.command = Command::exponents;
  e.d_max = 20;
  cfgs.push_back(e);
  RunConfig ev;
  ev.command = Command::ev;
  ev.d = 6;
  ev.model_kind = "integral";
  cfgs.push_back(ev);
  RunConfig dens;
  dens.command = Command::density;
  dens.form = {1, 0, 0, 2};
  dens.U = 60;
  cfgs.push_back(dens);
  RunConfig fam;
  fam.command = Command::family;
  fam.d = 4;
  cfgs.push_back(fam);
  RunConfig mdl;
  mdl.command = Command::model;
  mdl.d = 5;
  cfgs.push_back(mdl);
  for (const auto& c : cfgs) {
    CAPTURE(to_string(c.command));
    const auto r = run(c);
    const std::string once = emit(r, "json");
    const auto parsed = parse_report(once);
    CHECK(emit(parsed, "json") == once);
    CHECK(emit(parsed, "csv") == emit(r, "csv"));
    CHECK(line_count(emit(r, "csv")) == r.body.at("records").size() + 1);
  }
}

TEST_CASE("csv quoting") {
  Report r;
  r.columns = {"a", "b"};
  r.body = nlohmann::ordered_json{{"schema", kSchemaVersion},
                                  {"records", nlohmann::ordered_json::array({{{"a", "x,y"}, {"b", "say \"hi\""}}})}};
  CHECK(emit(r, "csv") == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n");
}

TEST_CASE("worker count does not change the bytes") {
  RunConfig c = sweep_cfg();
  c.U = 30;
  const std::string one = emit(run(c), "json");
  c.workers = 4;
  CHECK(emit(run(c), "json") == one);
  CHECK(emit(run(c), "json") == one);
}

TEST_CASE("validation names fields") {
  RunConfig c = sweep_cfg();
  c.d = 2;
  c.U = 0;
  c.a = 0;
  c.b = 0;
  const auto errs = validate(c);
  REQUIRE(errs.size() == 3);
  CHECK(errs[0].rfind("a, b:", 0) == 0);
  CHECK(errs[1].rfind("d:", 0) == 0);
  CHECK(errs[2].rfind("U:", 0) == 0);
  CHECK_THROWS_AS(run(c), UsageError);

  RunConfig p;
  p.command = Command::pair_signs;
  p.model_kind = "congruence";
  CHECK(validate(p).size() == 3);  // conductor (model and pairing), root number
  RunConfig d;
  d.command = Command::density;
  d.form = {1, 0, 0, 0, 0, 0, 0, 1};
  CHECK(validate(d) == std::vector<std::string>{"form: degree must be at most 6"});
  RunConfig cert;
  cert.command = Command::certify;
  CHECK(validate(cert) == std::vector<std::string>{"poly: required"});
}

TEST_CASE("pair-signs pairs opposite root numbers") {
  RunConfig c;
  c.command = Command::pair_signs;
  c.model_kind = "congruence";
  c.a = -16;
  c.b = 16;
  c.conductor = 37;
  c.root_number = 1;
  c.U = 1000;
  c.rho_iterations = 0;
  const auto r = run(c);
  const auto& recs = r.body.at("records");
  CHECK(!recs.empty());
  CHECK(r.body.at("summary").at("all_opposite") == true);
  for (const auto& p : recs) CHECK(p.at("w_rel1").get<int>() == -p.at("w_rel2").get<int>());
}

TEST_CASE("binary exit codes and config files") {
  CHECK(run_binary("exponents --d-max 4").status == 0);
  CHECK(run_binary("--help").status == 0);
  CHECK(run_binary("").status == 2);
  CHECK(run_binary("nosuch").status == 2);
  CHECK(run_binary("sweep -d 2").status == 2);
  CHECK(run_binary("sweep -a x").status == 2);
  CHECK(run_binary("density --form 1,0 -U 10 --format xml").status == 2);
  CHECK(run_binary("exponents", "SDTWIST_WORKERS=zero").status == 2);

  const auto a = run_binary("sweep --model integral -a -1 -b 0 -U 12", "SDTWIST_WORKERS=1");
  const auto b = run_binary("sweep --model integral -a -1 -b 0 -U 12", "SDTWIST_WORKERS=3");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);

  const std::string ini = "test_cli_config.ini";
  {
    std::ofstream f(ini);
    f << "[sweep]\nmodel=integral\na=-1\nb=0\nU=12\n";
  }
  const auto c = run_binary("--config " + ini + " sweep");
  CHECK(c.status == 0);
  CHECK(c.out == a.out);
  // flags override the file
  const auto d = run_binary("--config " + ini + " sweep -U 5");
  CHECK(d.status == 0);
  CHECK(parse_report(d.out).body.at("config").at("U") == 5);

  const auto csv = run_binary("sweep --model integral -a -1 -b 0 -U 12 --format csv");
  CHECK(line_count(csv.out) == parse_report(a.out).body.at("records").size() + 1);
  std::remove(ini.c_str());
}
