// Exercises the installed command-line surface: flags, grids, exit codes,
// file outputs, and the determinism contract.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using nlohmann::json;

namespace {

const char* cli_path() { return TAUCERT_CLI_PATH; }

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string command = std::string(cli_path()) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), got);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

}  // namespace

TEST_CASE("dims: payload matches the documented object") {
  const auto r = run_cli("dims --m 2 --d 7 --t 3");
  REQUIRE(r.exit_code == 0);
  const json envelope = json::parse(r.output);
  CHECK(envelope["schema_version"] == 1);
  REQUIRE(envelope["jobs"].size() == 1);
  const json& result = envelope["jobs"][0]["result"];
  CHECK(result["tau_dim"] == 7);
  CHECK(result["sigma_dim"] == 8);
  CHECK(result["expected_tau"] == 7);
  CHECK(result["expected_sigma"] == 8);
}

TEST_CASE("h1 quadruple achieves rank 28 at (2,7)") {
  const auto r = run_cli("h1 --lemma quadruple --m 2 --d 7 --seed 7");
  REQUIRE(r.exit_code == 0);
  const json envelope = json::parse(r.output);
  const json& result = envelope["jobs"][0]["result"];
  CHECK(result["achieved_rank"] == 28);
  CHECK(result["verdict"] == "certified");
}

TEST_CASE("certify fans a grid out to one report per cell with explicit seeds") {
  const auto r = run_cli("certify --grid m=2..3 d=7 t=3..5 --trials 2 --seed 7");
  REQUIRE(r.exit_code == 0);
  const json envelope = json::parse(r.output);
  REQUIRE(envelope["jobs"].size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    const json& job = envelope["jobs"][i];
    CHECK(job["seed"] == 7 + i);
    CHECK(job["result"]["type"] == "drip_report");
    CHECK(job["result"]["verdict"] == "certified");
  }

  // --m/--d/--t spell the same grids.
  const auto r2 = run_cli("certify --m 2..3 --d 7 --t 3..5 --trials 2 --seed 7");
  REQUIRE(r2.exit_code == 0);
  json a = json::parse(r.output), b = json::parse(r2.output);
  a.erase("meta");
  b.erase("meta");
  CHECK(a.dump() == b.dump());
}

TEST_CASE("exit codes: 2 for inconclusive verdicts, 64 for usage errors") {
  // The defective quartic control cannot be certified.
  const auto control = run_cli("h1 --scheme 2Px5 --m 2 --d 4 --trials 2 --seed 3");
  CHECK(control.exit_code == 2);

  const auto usage = run_cli("h1 --lemma nonsense --m 2 --d 7");
  CHECK(usage.exit_code == 64);
  const auto missing = run_cli("dims --m 2 --d 7");
  CHECK(missing.exit_code == 64);

  // Hypothesis-gate violations surface as job errors.
  const auto gate = run_cli("certify --m 2 --d 7 --t 9 --seed 1");
  CHECK(gate.exit_code == 64);
}

TEST_CASE("reports can be written to files, in CSV too") {
  const auto json_path = temp_file("taucert_cli_test.json");
  const auto csv_path = temp_file("taucert_cli_test.csv");
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);

  auto r = run_cli("h1 --lemma quadruple --m 2 --d 7 --seed 7 --out " + json_path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.empty());
  std::ifstream in(json_path);
  REQUIRE(in.good());
  const json envelope = json::parse(in);
  CHECK(envelope["jobs"][0]["result"]["achieved_rank"] == 28);

  r = run_cli("dims --m 2 --d 7 --t 2..4 --format csv --out " + csv_path.string());
  REQUIRE(r.exit_code == 0);
  std::ifstream csv(csv_path);
  std::string line;
  std::getline(csv, line);
  CHECK(line.find("verdict") != std::string::npos);
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  std::filesystem::remove(json_path);
  std::filesystem::remove(csv_path);
}

TEST_CASE("schema subcommand emits the embedded schema") {
  const auto r = run_cli("schema");
  REQUIRE(r.exit_code == 0);
  const json schema = json::parse(r.output);
  CHECK(schema["version"] == 1);
  CHECK(schema["$defs"].contains("envelope"));

  // The published copy in the repo is byte-identical to the embedded text.
  std::ifstream published(std::string(TAUCERT_SOURCE_DIR) + "/schema/report.schema.json",
                          std::ios::binary);
  REQUIRE(published.good());
  std::string bytes((std::istreambuf_iterator<char>(published)),
                    std::istreambuf_iterator<char>());
  CHECK(bytes == r.output);
}

TEST_CASE("emitted reports carry the fields the schema requires") {
  const auto schema_run = run_cli("schema");
  const json schema = json::parse(schema_run.output);
  const auto check_against = [&](const json& report, const std::string& def) {
    const json& spec = schema["$defs"][def];
    REQUIRE(spec.is_object());
    for (const auto& key : spec["required"]) CHECK(report.contains(key.get<std::string>()));
    CHECK(report["type"] == spec["properties"]["type"]["const"]);
  };

  auto envelope = json::parse(run_cli("dims --m 2 --d 7 --t 3").output);
  check_against(envelope["jobs"][0]["result"], "dims_report");
  envelope = json::parse(run_cli("h1 --lemma triples --m 2 --d 6 --trials 2 --seed 4").output);
  check_against(envelope["jobs"][0]["result"], "h1_triples_report");
  for (const auto& c : envelope["jobs"][0]["result"]["cases"]) check_against(c, "certificate");
  envelope = json::parse(run_cli("certify --m 2 --d 7 --t 3 --trials 2 --seed 4").output);
  check_against(envelope["jobs"][0]["result"], "drip_report");
  envelope = json::parse(
      run_cli("certify --target weak3o --m 2 --d 7 --t 4 --trials 2 --seed 4").output);
  check_against(envelope["jobs"][0]["result"], "weak_contact_report");
  envelope = json::parse(run_cli("duality --m 2 --d 7 --t 3 --seed 4").output);
  check_against(envelope["jobs"][0]["result"], "duality_report");
  envelope = json::parse(
      run_cli("unique --m 2 --d 7 --t 3 --instances 1 --restarts 4 --seed 4").output);
  check_against(envelope["jobs"][0]["result"], "unique_report");
}

TEST_CASE("identical seeds reproduce identical scientific content") {
  const auto a = run_cli("certify --m 2 --d 7 --t 3..4 --trials 2 --seed 11");
  const auto b = run_cli("certify --m 2 --d 7 --t 3..4 --trials 2 --seed 11");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  json ja = json::parse(a.output);
  json jb = json::parse(b.output);
  CHECK(ja["jobs"] != nullptr);
  // Timestamps and wall times live only under "meta".
  ja.erase("meta");
  jb.erase("meta");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("job files run end to end") {
  const auto job_path = temp_file("taucert_jobs.json");
  {
    std::ofstream out(job_path);
    out << R"({"jobs": [
      {"command": "dims", "m": 2, "d": 7, "t": 3, "seed": 5},
      {"command": "h1", "lemma": "quadruple", "m": 2, "d": 7, "seed": 7, "trials": 2},
      {"command": "h1", "scheme": "Z23,2P", "m": 2, "d": 7, "seed": 9, "trials": 2}
    ]})";
  }
  const auto r = run_cli("run " + job_path.string());
  REQUIRE(r.exit_code == 0);
  const json envelope = json::parse(r.output);
  REQUIRE(envelope["jobs"].size() == 3);
  CHECK(envelope["jobs"][0]["result"]["type"] == "dims_report");
  CHECK(envelope["jobs"][1]["result"]["achieved_rank"] == 28);
  CHECK(envelope["jobs"][2]["result"]["expected_rank"] == 8);
  std::filesystem::remove(job_path);
}

TEST_CASE("version flag") {
  const auto r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("taucert/1.0.0") != std::string::npos);
}
