#include "doctest.h"

#ifdef CQED_CLI_PATH

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "test_helpers.hpp"

using testutil::run_cli;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

std::string line_at(const std::string& text, std::size_t index) {
  std::istringstream in(text);
  std::string line;
  for (std::size_t k = 0; k <= index; ++k)
    if (!std::getline(in, line)) return {};
  return line;
}

}  // namespace

TEST_CASE("readout sweep starts from certainty, byte for byte") {
  auto res = run_cli("figure1");
  REQUIRE(res.exit_code == 0);
  CHECK(line_at(res.out, 0) == "lambda_t,P_eg,P_ge,P_ee,P_gg");
  CHECK(line_at(res.out, 1) == "0,1.000000,0.000000,0.000000,0.000000");
}

TEST_CASE("repeated runs are byte-identical") {
  auto first = run_cli("figure1 --grid-points 64");
  auto second = run_cli("figure1 --grid-points 64");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out == second.out);
}

TEST_CASE("--out writes exactly what stdout would carry") {
  const char* path = "/tmp/cqed_cli_out_test.csv";
  auto piped = run_cli("figure1 --grid-points 16");
  auto filed = run_cli(std::string("figure1 --grid-points 16 --out ") + path);
  REQUIRE(filed.exit_code == 0);
  CHECK(filed.out.empty());

  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == piped.out);
  std::remove(path);
}

TEST_CASE("snapshot report carries the maximal-point figures") {
  auto res = run_cli("w-state");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["config"]["subcommand"] == "w-state");
  CHECK(doc["config"]["n"] == 3);
  CHECK(doc["config"]["seed"] == 12345);
  CHECK(doc["result"]["fidelity_w"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(doc["result"]["fidelity_phase_adjusted"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(doc["result"]["distillation_probability"].get<double>() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  CHECK(doc["result"]["post_measurement"]["probability"].get<double>() ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("snapshot for two atoms has no distillation stage") {
  auto res = run_cli("w-state --n 2 --lambda-t 0.5");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["result"]["distillation_probability"].is_null());
  CHECK(doc["result"]["post_measurement"].is_null());
}

TEST_CASE("snapshot tolerates a zero-probability projection branch") {
  auto res = run_cli("w-state --lambda-t 0");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["result"]["distillation_probability"].get<double>() ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(doc["result"]["post_measurement"].is_null());
}

TEST_CASE("pair-exchange report in both frequency conventions") {
  auto res = run_cli("ghz4");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["config"]["mode"] == "corrected");
  CHECK(doc["result"]["amp_main_abs"].get<double>() == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(doc["result"]["amp_opposite_abs"].get<double>() ==
        doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-9));
  CHECK(doc["result"]["cross_max_abs"].get<double>() < 1e-9);
  CHECK(doc["result"]["fidelity_ghz_class_target"].get<double>() ==
        doctest::Approx(1.0).epsilon(1e-9));

  auto printed = run_cli("ghz4 --mode printed");
  REQUIRE(printed.exit_code == 0);
  auto pdoc = nlohmann::json::parse(printed.out);
  CHECK(pdoc["result"]["amp_opposite_abs"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pdoc["result"]["amp_main_abs"].get<double>() < 1e-9);
}

TEST_CASE("window-error report matches the reference fidelities") {
  auto res = run_cli("timing");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["config"]["phase_mode"] == "paper");
  CHECK(doc["result"]["late_entry_fidelity"].get<double>() ==
        doctest::Approx(0.99028782254835806).epsilon(1e-9));
  CHECK(doc["result"]["early_exit_fidelity"].get<double>() ==
        doctest::Approx(0.99218727096086172).epsilon(1e-9));

  auto model = run_cli("timing --phase-mode model");
  REQUIRE(model.exit_code == 0);
  auto mdoc = nlohmann::json::parse(model.out);
  CHECK(mdoc["result"]["early_exit_fidelity"].get<double>() ==
        doctest::Approx(0.99182164910066459).epsilon(1e-9));
}

TEST_CASE("validity check passes on the default ladder") {
  auto res = run_cli("validate");
  REQUIRE(res.exit_code == 0);
  CHECK(line_at(res.out, 0) == "ratio,infidelity,photon_leakage_max,flagged");

  auto json_res = run_cli("validate --format json");
  REQUIRE(json_res.exit_code == 0);
  auto doc = nlohmann::json::parse(json_res.out);
  CHECK(doc["config"]["properties_passed"] == true);
  CHECK(doc["config"]["spot_checks_passed"] == true);
  CHECK(doc["config"]["spot_checks_run"].get<int>() == 24);
  REQUIRE(doc["rows"].size() == 4);
  CHECK(doc["rows"][0]["ratio"].get<double>() == 10.0);
}

TEST_CASE("scan report lists probability and gap columns") {
  auto res = run_cli("distill-scan --grid-points 50");
  REQUIRE(res.exit_code == 0);
  CHECK(line_at(res.out, 0) == "lambda_t,p_distill,amplitude_gap");
  CHECK(count_occurrences(res.out, "\n") == 51);  // header + 50 rows
}

TEST_CASE("vector drawing carries exactly three curves") {
  auto res = run_cli("figure1 --format svg");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.find("<svg") != std::string::npos);
  CHECK(count_occurrences(res.out, "<polyline") == 3);
}

TEST_CASE("format and argument misuse is rejected") {
  CHECK(run_cli("w-state --format svg").exit_code == 2);
  CHECK(run_cli("figure1 --format yaml").exit_code == 2);
  CHECK(run_cli("no-such-command").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("w-state --n 0").exit_code != 0);
  CHECK(run_cli("ghz4 --mode wrong").exit_code != 0);
  CHECK(run_cli("figure1 --grid-points 1").exit_code != 0);
}

TEST_CASE("seed is plumbed into the report") {
  auto res = run_cli("w-state --seed 777");
  REQUIRE(res.exit_code == 0);
  auto doc = nlohmann::json::parse(res.out);
  CHECK(doc["config"]["seed"] == 777);
}

#endif  // CQED_CLI_PATH
