// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the installed command surface: exit codes, JSON
// output, and byte-level determinism, driving the real binary.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  const std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                               "/qpriv_cli_out.txt";
  const std::string cmd = std::string(QPRIV_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CommandResult result;
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(out_path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

double value_of(const nlohmann::json& doc, const std::string& name) {
  for (const auto& row : doc.at("values")) {
    if (row.at("name").get<std::string>() == name) return row.at("value").get<double>();
  }
  FAIL("value row not found: " << name);
  return 0;
}

}  // namespace

TEST_CASE("ip command emits the closed-form values and exits zero") {
  CommandResult r = run_cli("--format json ip --n 2");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(value_of(doc, "n=2 L_B") == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(value_of(doc, "n=2 L_A") == doctest::Approx(1.548794940695398).epsilon(1e-12));
}

TEST_CASE("ip command reports the n=1 averaged-message entropy") {
  CommandResult r = run_cli("--format json ip --n 1 --quantity L");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(value_of(doc, "n=1 L_A") == doctest::Approx(0.811278124459133).epsilon(1e-12));
}

TEST_CASE("width violations exit with the usage code") {
  CHECK(run_cli("ip --n 9").exit_code == 2);
  CHECK(run_cli("pir --scheme cube --n 5 --d 2").exit_code == 2);
  CHECK(run_cli("pir-entangled --ell 3 --database ZZ --index 1").exit_code == 2);
  CHECK(run_cli("pir-entangled --ell 3 --database A6 --index 9").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
}

TEST_CASE("pir command verifies the compiled protocol") {
  CommandResult r = run_cli("--format json pir --scheme two-server --n 2");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(value_of(doc, "L_U") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(value_of(doc, "communication_qubits") == doctest::Approx(12.0));
  for (const auto& check : doc.at("checks")) {
    CHECK(check.at("pass").get<bool>());
  }
}

TEST_CASE("entangled retrieval recovers the worked slicing example") {
  CommandResult r = run_cli("--format json pir-entangled --ell 3 --database A6 --index 1");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(value_of(doc, "recovered_bit") == doctest::Approx(1.0));
  CHECK(value_of(doc, "communication_qubits") == doctest::Approx(13.0));
}

TEST_CASE("identical commands produce byte-identical JSON") {
  CommandResult a = run_cli("--format json ip --n 2");
  CommandResult b = run_cli("--format json ip --n 2");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(!a.output.empty());
}

TEST_CASE("global flags are accepted after the subcommand too") {
  CommandResult r = run_cli("ip --n 1 --quantity L --format json");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  CHECK(value_of(doc, "n=1 L_B") == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("config file supplies measurement-round sweeps, flags still override") {
  const std::string cfg_path =
      std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/qpriv_cfg.json";
  {
    std::ofstream cfg(cfg_path);
    cfg << "{\"measurement_rounds\": [0, null]}\n";
  }
  CommandResult r = run_cli("--format json --config " + cfg_path + " ip --n 1");
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(r.output);
  bool has_m0 = false, has_never = false;
  for (const auto& row : doc.at("values")) {
    const std::string name = row.at("name").get<std::string>();
    if (name.find("SIC_A (m=0)") != std::string::npos) has_m0 = true;
    if (name.find("SIC_A (never measured)") != std::string::npos) has_never = true;
  }
  CHECK(has_m0);
  CHECK(has_never);
}

TEST_CASE("reproduce honors section selectors") {
  CommandResult r = run_cli("reproduce honesty");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("C9") != std::string::npos);
  CHECK(r.output.find("C1 ") == std::string::npos);

  CommandResult bad = run_cli("reproduce nonsense");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("csv output flattens round terms") {
  CommandResult r = run_cli("--format csv ip --n 1 --quantity L");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("round,n=1 L_A,Alice,1,") != std::string::npos);
}
