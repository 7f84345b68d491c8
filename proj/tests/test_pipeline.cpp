#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"
#include "otcalc/error.hpp"
#include "otcalc/pipeline.hpp"

#include <array>
#include <cstdio>
#include <memory>

using namespace otcalc;

namespace {

ErrorKind config_kind(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error for " << text);
  return ErrorKind::InternalInconsistency;
}

struct Run {
  int status;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(OTCALC_BINARY) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), n);
  const int raw = pclose(pipe.release());
  return {WEXITSTATUS(raw), out};
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(R"({"field":{"polynomial":["-1",-1,0,1]},"units":[[0,1,0]],"precision_bits":96,
                                      "compute":["betti"],"output":"json"})");
  CHECK(c.field.size() == 4);
  CHECK(c.field[0] == -1);
  CHECK(c.precision_bits == 96);
  CHECK(c.compute == std::set<std::string>{"betti"});
  CHECK(c.format == OutputFormat::json);
  const RunConfig big = parse_config(R"({"field":{"polynomial":["-123456789012345678901234567890",0,0,1]},"units":[[1,0,0]]})");
  CHECK(big.field[0] == Integer("-123456789012345678901234567890"));
  const RunConfig basis = parse_config(
      R"({"field":{"polynomial":[-1,-1,0,1]},"units":[[0,1,0]],"integral_basis":[[1,0,0],[0,1,0],["1/2",0,"1/2"]]})");
  REQUIRE(basis.integral_basis);
  CHECK((*basis.integral_basis)[2][0] == Rational(1, 2));

  CHECK(config_kind(R"({"field":{"polynomial":[-1,-1,0,1]}})") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"field":{"polynomial":[-1,-1,0,1]},"units":[]})") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"preset":"inoue-cubic","units":[[0,1,0]]})") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"preset":"inoue-cubic","colour":1})") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"field":{"polynomial":[-1.5,-1,0,1]},"units":[[0,1,0]]})") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"field":{"polynomial":["x",-1,0,1]},"units":[[0,1,0]]})") == ErrorKind::ConfigError);
  CHECK(config_kind("{not json") == ErrorKind::ConfigError);
  CHECK(config_kind(R"({"preset":"nope"})") == ErrorKind::UnknownPreset);
}

TEST_CASE("unit coordinates are read in the integral model") {
  RunConfig c = parse_config(R"({"field":{"polynomial":[-1,-1,0,1]},"units":[[0,1,0]],
                                 "integral_basis":[[1,0,0],[1,1,0],[0,0,1]]})");
  // theta = -1 * (1) + 1 * (1 + theta)
  c.units = {{-1, 1, 0}};
  const OTStructure ot = prepare(c);
  CHECK(ot.units[0] == theta(ot.field));
}

TEST_CASE("presets") {
  CHECK(presets().size() == 2);
  CHECK_THROWS_AS(find_preset("nope"), Error);
  try {
    find_preset("nope");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("inoue-cubic") != std::string::npos);
    CHECK(std::string(e.what()).find("quartic-s2") != std::string::npos);
  }
  for (const auto& p : presets()) {
    CAPTURE(p.name);
    const ComputeResult r = run_compute(preset_config(p.name));
    CHECK(r.ot.s == p.s);
    CHECK(r.ot.t == p.t);
    CHECK(r.report.betti == p.expected_betti);
    CHECK(r.report.hodge == p.expected_hodge);
    for (const auto& u : r.ot.units) CHECK(check_unit(r.ot.emb, u) == UnitStatus::unit_totally_positive);
  }
  const auto listed = nlohmann::json::parse(list_presets(OutputFormat::json));
  CHECK(listed.is_array());
  CHECK(listed.size() == 2);
}

TEST_CASE("JSON report round-trips and is deterministic") {
  RunConfig config = preset_config("inoue-cubic");
  config.format = OutputFormat::json;
  const std::string first = render_report(run_compute(config), config);
  const std::string second = render_report(run_compute(config), config);
  CHECK(first == second);
  const auto parsed = nlohmann::ordered_json::parse(first);
  CHECK(parsed.dump(2) + "\n" == first);
  CHECK(parsed["hodge"][0][1] == 1);
  CHECK(parsed["checks"]["at_deficiency"][2] == 2);
  CHECK(parsed["checks"]["frolicher"] == true);
}

TEST_CASE("verify passes on both presets") {
  for (const auto& p : presets()) {
    const VerifyReport report = run_verify(preset_config(p.name));
    for (const auto& c : report.checks) {
      CAPTURE(c.name);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("error records") {
  const Error e(ErrorKind::ConfigError, "cli", "parse_config", "missing 'units'");
  const auto record = nlohmann::json::parse(error_record(e));
  CHECK(record["error"] == "ConfigError");
  CHECK(record["module"] == "cli");
  CHECK(record["exit_code"] == 2);
}

TEST_CASE("command line exit codes") {
  const Run ok = run_cli("compute --preset inoue-cubic --format json");
  CHECK(ok.status == 0);
  CHECK(nlohmann::json::parse(ok.out)["hodge"][0][1] == 1);

  const Run quartic = run_cli("compute --preset quartic-s2 --format json");
  CHECK(quartic.status == 0);
  CHECK(nlohmann::json::parse(quartic.out)["bott_chern"][1][1] == 2);

  const Run missing = run_cli(std::string("compute --config ") + OTCALC_TEST_DATA + "/missing_units.json");
  CHECK(missing.status == 2);
  CHECK(missing.out.find("ConfigError") != std::string::npos);

  const Run truncated = run_cli("verify --preset inoue-cubic --precision 8 --precision-cap 8");
  CHECK(truncated.status == 3);
  CHECK(truncated.out.find("UndecidedCharacter") != std::string::npos);

  CHECK(run_cli("verify --preset quartic-s2").status == 0);
  CHECK(run_cli("compute --preset nope").status == 2);
  CHECK(run_cli("compute").status == 2);
  const Run listed = run_cli("presets --format json");
  CHECK(listed.status == 0);
  CHECK(nlohmann::json::parse(listed.out).size() == 2);
}
