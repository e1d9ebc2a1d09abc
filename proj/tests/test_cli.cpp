// End-to-end checks against the installed CLI binary (path injected by the
// build). Each invocation runs in a subprocess; stdout is captured.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "penshrink/adapt.hpp"
#include "penshrink/layout.hpp"

using namespace penshrink;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PENSHRINK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  RunResult result;
  if (!pipe) return result;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) result.out.append(buf, got);
  const int rc = pclose(pipe);
  result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return result;
}

std::string fixture_csv() {
  static std::string path;
  if (path.empty()) {
    path = (std::filesystem::temp_directory_path() / "penshrink_cli_fixture.csv").string();
    std::ofstream out(path);
    out << "level,value\n";
    const double ys[] = {3.1, 2.9, 2.5, 2.0, 1.4, 1.1, 0.9, 1.0, 1.3, 1.8, 2.2, 2.3};
    for (int i = 0; i < 12; ++i) out << (i + 1) << "," << ys[i] << "\n";
  }
  return path;
}

std::string write_csv(const char* name, const std::string& body) {
  const std::string path = (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("every verb is byte deterministic") {
  const std::string csv = fixture_csv();
  const std::string cmds[] = {
      "fit " + csv + " --penalty d2 --json",
      "fit " + csv,
      "compare " + csv + " --alpha 0.3",
      "simulate --scenario smooth --p 30 --sigma 0.5 --seed 17 --penalty d2",
      "simulate --scenario very-wiggly --p 40 --sigma 0.25 --seed 4 --alpha 0.5",
      "economy " + csv + " --penalty d4",
  };
  for (const std::string& cmd : cmds) {
    const RunResult a = run_cli(cmd);
    const RunResult b = run_cli(cmd);
    CHECK(a.status == 0);
    CHECK(b.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("json fit equals the library result exactly") {
  const std::string csv = fixture_csv();
  const RunResult r = run_cli("fit " + csv + " --penalty d3 --q-frac 0.5 --json");
  REQUIRE(r.status == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);

  FitConfig config = default_fit_config();
  config.penalty_set = {parse_penalty_selector("d3")};
  config.q_fraction = 0.5;
  const FitResult want = fit(ingest_csv_file(csv), config);

  CHECK(doc.at("family").get<std::string>() == family_name(want.family));
  CHECK(doc.at("penalty").get<std::string>() == want.penalty);
  if (want.alpha)
    CHECK(doc.at("alpha").get<double>() == *want.alpha);
  else
    CHECK(doc.at("alpha").is_null());
  CHECK(doc.at("estimated_risk").get<double>() == want.estimated_risk);
  CHECK(doc.at("sigma2").get<double>() == want.sigma2.sigma2);
  CHECK(doc.at("q").get<int>() == want.sigma2.q);
  const auto mu = doc.at("mu_hat").get<std::vector<double>>();
  const auto res = doc.at("residuals").get<std::vector<double>>();
  REQUIRE(mu.size() == want.mu_hat.size());
  REQUIRE(res.size() == want.residuals.size());
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(mu[i] == want.mu_hat[i]);
  for (std::size_t i = 0; i < res.size(); ++i) CHECK(res[i] == want.residuals[i]);
}

TEST_CASE("comparison table format and row order") {
  const RunResult r = run_cli("compare " + fixture_csv());
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "family,penalty,alpha,estimated_risk");
  const char* families[] = {"LS,", "PLS,", "MS,", "ST,", "HS,"};
  for (int i = 0; i < 5; ++i) CHECK(lines[static_cast<std::size_t>(i + 1)].rfind(families[i], 0) == 0);
  // only the hybrid row carries a split fraction
  for (int i = 1; i <= 4; ++i) {
    std::istringstream fields(lines[static_cast<std::size_t>(i)]);
    std::string family, penalty, alpha;
    std::getline(fields, family, ',');
    std::getline(fields, penalty, ',');
    std::getline(fields, alpha, ',');
    CHECK(alpha.empty());
  }
}

TEST_CASE("simulation output announces the generator and matches expected noise level") {
  const RunResult r = run_cli("simulate --scenario smooth --p 200 --sigma 0.5 --seed 17");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "# generator: mt19937_64/inverse-normal-cdf-as241");
  CHECK(lines[1] == "family,penalty,alpha,estimated_risk,loss");
  // LS loss concentrates near sigma^2 = 0.25 at p = 200
  std::istringstream fields(lines[2]);
  std::string tok;
  for (int i = 0; i < 5; ++i) std::getline(fields, tok, ',');
  const double ls_loss = std::stod(tok);
  CHECK(ls_loss >= 0.18);
  CHECK(ls_loss <= 0.32);
}

TEST_CASE("economy profile rows") {
  const RunResult r = run_cli("economy " + fixture_csv() + " --penalty d2");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = lines_of(r.out);
  REQUIRE(lines.size() == 12);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::istringstream fields(lines[i]);
    int index = 0;
    double coef = 0.0;
    char tab = 0;
    fields >> index;
    fields.get(tab);
    fields >> coef;
    CHECK(index == static_cast<int>(i) + 1);
    CHECK(tab == '\t');
  }
}

TEST_CASE("exit codes distinguish failure classes") {
  CHECK(run_cli("fit /nonexistent.csv").status == 3);
  CHECK(run_cli("fit " + fixture_csv() + " --no-such-flag").status == 2);
  CHECK(run_cli("fit " + fixture_csv() + " --family bogus").status == 2);
  CHECK(run_cli("fit " + fixture_csv() + " --alpha whatever").status == 2);
  CHECK(run_cli("compare").status == 2);  // missing required input
  CHECK(run_cli("economy " + fixture_csv()).status == 2);  // penalty required

  const std::string bad = write_csv("penshrink_cli_bad.csv", "level,value\n1,abc\n2,1\n");
  CHECK(run_cli("fit " + bad).status == 3);

  const std::string flat = write_csv("penshrink_cli_flat.csv", "level,value\n1,2\n1,3\n");
  CHECK(run_cli("fit " + flat).status == 4);

  CHECK(run_cli("fit " + fixture_csv() + " --q-frac 2.0").status == 5);
  CHECK(run_cli("fit " + fixture_csv() + " --alpha 1.5").status == 5);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").status == 0);
  CHECK(run_cli("fit --help").status == 0);
}

}  // TEST_SUITE
