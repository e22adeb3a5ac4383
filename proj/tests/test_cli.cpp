#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

using nlohmann::json;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

std::string binary_path() {
  const char* env = std::getenv("OVERLAPX_BIN");
  REQUIRE_MESSAGE(env != nullptr, "OVERLAPX_BIN must point at the CLI binary");
  return env;
}

RunResult run_cli(const std::string& args) {
  std::string command = binary_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  std::array<char, 4096> buffer;
  while (std::size_t got = fread(buffer.data(), 1, buffer.size(), pipe))
    result.output.append(buffer.data(), got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("construct reports the closed-form products") {
  RunResult r = run_cli("construct --n 3 --l 2 --m 1 --json");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["octopus_size"] == "32");
  CHECK(report["asymptotic_value"] == "24");
  CHECK(report["n_S"] == "3");

  RunResult zero = run_cli("construct --n 5 --l 2 --m 0 --json");
  json zero_report = json::parse(zero.output);
  CHECK(zero_report["octopus_size"] == "32");

  RunResult three = run_cli("construct --n 6 --l 3 --m 1 --json");
  json three_report = json::parse(three.output);
  CHECK(three_report["octopus_size"] == "1728");
  CHECK(three_report["n_S"] == "2,2,2");
  CHECK(three_report["optimize_value"] == "27");
}

TEST_CASE("search verbs produce exact reports") {
  RunResult exact = run_cli("search exact --n 4 --l 2 --m 1 --json");
  CHECK(exact.exit_code == 0);
  json exact_report = json::parse(exact.output);
  CHECK(exact_report["optimum"] == "80");
  CHECK(exact_report["exact"] == true);
  CHECK(exact_report["witness"].get<std::string>().starts_with("n=4 m=1 l=2"));
  CHECK(!exact_report.contains("wall_time"));

  RunResult brute = run_cli("search brute --n 3 --l 2 --m 1 --json");
  CHECK(brute.exit_code == 0);
  CHECK(json::parse(brute.output)["optimum"] == "32");

  RunResult local = run_cli("search local --n 6 --l 3 --m 1 --seed 7 --json");
  CHECK(local.exit_code == 0);
  json local_report = json::parse(local.output);
  CHECK(std::stol(local_report["optimum"].get<std::string>()) >= 1728);
  CHECK(local_report["exact"] == false);

  RunResult timed = run_cli("search exact --n 3 --l 2 --m 1 --json --timing");
  CHECK(json::parse(timed.output).contains("wall_time"));
}

TEST_CASE("identical runs are byte-identical") {
  std::string args = "search exact --n 4 --l 3 --m 1 --json";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  CHECK(a.output == b.output);
  RunResult c = run_cli("ineq fuzz --check daykin --trials 50 --n 6 --seed 9 --json");
  RunResult d = run_cli("ineq fuzz --check daykin --trials 50 --n 6 --seed 9 --json");
  CHECK(c.output == d.output);
}

TEST_CASE("bounds table") {
  RunResult r = run_cli("bounds --n 6 --l 3 --m 1 --json");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["octopus_value"] == "1728");
  CHECK(report["asymptotic_value"] == "512");
  CHECK(report["daykin_chain_bound"] == "9856");

  json two = json::parse(run_cli("bounds --n 10 --l 2 --m 1 --json").output);
  CHECK(two["octopus_value"] == "11264");
  CHECK(two["asymptotic_value"] == "10240");
  CHECK(two["daykin_chain_bound"] == "11264");

  json zero = json::parse(run_cli("bounds --n 4 --l 2 --m 0 --json").output);
  CHECK(zero["octopus_value"] == "16");
  CHECK(zero["asymptotic_value"] == "16");
  CHECK(zero["daykin_chain_bound"] == "16");
}

TEST_CASE("verify exits by outcome and files round-trip through construct") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "overlapx_cli_test";
  fs::remove_all(dir);

  RunResult built =
      run_cli("construct --n 6 --l 3 --m 1 --out " + dir.string() + " --json");
  CHECK(built.exit_code == 0);
  CHECK(fs::exists(dir / "family_1.txt"));
  CHECK(fs::exists(dir / "family_3.txt"));
  CHECK(fs::exists(dir / "report.json"));

  std::string files = (dir / "family_1.txt").string() + " " +
                      (dir / "family_2.txt").string() + " " +
                      (dir / "family_3.txt").string();
  RunResult ok = run_cli("verify --families " + files + " --spec \"l=3; m=1\"");
  CHECK(ok.exit_code == 0);

  // tighten the spec so the same families violate it
  RunResult bad = run_cli("verify --families " + files + " --spec \"l=3; m=0\" --json");
  CHECK(bad.exit_code == 1);
  json report = json::parse(bad.output);
  CHECK(report["holds"] == false);
  CHECK(report.contains("set_a"));
  fs::remove_all(dir);
}

TEST_CASE("ineq fuzz summary") {
  RunResult r =
      run_cli("ineq fuzz --check rinott_saks --trials 100 --n 6 --l 3 --seed 5 --json");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["trials"] == 100);
  CHECK(report["failures"] == 0);
  CHECK(!report.contains("first_witness"));

  RunResult biased = run_cli(
      "ineq fuzz --check rinott_saks_biased --trials 60 --n 5 --l 3 --p 1/4,1/3,3/4 "
      "--seed 2 --json");
  CHECK(biased.exit_code == 0);
  CHECK(json::parse(biased.output)["failures"] == 0);
}

TEST_CASE("usage and capacity exit codes") {
  CHECK(run_cli("search exact --n 4").exit_code == 2);          // missing flags
  CHECK(run_cli("nonsense").exit_code == 2);                    // unknown verb
  CHECK(run_cli("search brute --n 9 --l 2 --m 1").exit_code == 3);  // too large
  CHECK(run_cli("construct --n 30 --l 2 --m 1 --out /tmp/overlapx_too_big").exit_code ==
        3);  // materialization cap
  CHECK(run_cli("--help").exit_code == 0);

  // exhausted node budget: best-so-far report, capacity exit
  RunResult budget =
      run_cli("search exact --n 4 --l 2 --m 1 --node-budget 3 --json");
  CHECK(budget.exit_code == 3);
  CHECK(json::parse(budget.output)["exact"] == false);
}

TEST_CASE("ineq fuzz without --check runs every checker") {
  RunResult r = run_cli("ineq fuzz --trials 20 --n 5 --l 3 --seed 4 --json");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["trials"] == 100);  // 20 trials for each of the five checkers
  CHECK(report["failures"] == 0);
}

TEST_CASE("allocation prints in its documented form") {
  RunResult r = run_cli("construct --n 6 --l 3 --m 1");
  CHECK(r.output.find("n_S=2,2,2") != std::string::npos);
}

TEST_CASE("search writes its witness next to the report") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "overlapx_search_out";
  fs::remove_all(dir);
  RunResult r = run_cli("search exact --n 3 --l 2 --m 1 --out " + dir.string());
  CHECK(r.exit_code == 0);
  std::ifstream witness(dir / "witness.txt");
  std::string first_line;
  std::getline(witness, first_line);
  CHECK(first_line == "n=3 m=1 l=2");
  CHECK(fs::exists(dir / "report.json"));
  fs::remove_all(dir);
}

TEST_CASE("brute search accepts non-uniform bounds") {
  RunResult r = run_cli("search brute --n 3 --l 3 --m 1,0,2 --json");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["exact"] == true);
  CHECK(std::stol(report["optimum"].get<std::string>()) >= 8);
}
