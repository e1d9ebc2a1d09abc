// Command line front end: fit layouts from CSV, compare estimator families,
// run seeded simulations, print basis economy profiles.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "penshrink/adapt.hpp"
#include "penshrink/errors.hpp"
#include "penshrink/layout.hpp"
#include "penshrink/oracle.hpp"

namespace {

using namespace penshrink;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::malformed_input: return 3;
    case Errc::degenerate_layout: return 4;
    case Errc::invalid_argument: return 5;
    case Errc::numeric_failure: return 6;
  }
  return 1;
}

struct CommonFlags {
  std::string family = "all";
  std::string penalty = "auto";
  std::string alpha = "auto";
  std::optional<double> q_frac;
  bool annihilator = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--family", flags.family, "estimator family")
      ->check(CLI::IsMember({"ls", "pls", "ms", "st", "hs", "all"}));
  cmd->add_option("--penalty", flags.penalty, "penalty selector or 'auto'")
      ->check(CLI::IsMember({"auto", "d1", "d2", "d3", "d4", "d5", "d6", "a1", "a2",
                             "a3", "a4", "a5", "a6"}));
  cmd->add_option("--alpha", flags.alpha, "hybrid split fraction or 'auto'");
  cmd->add_option("--q-frac", flags.q_frac,
                  "variance component fraction, q = floor(q_frac * p)");
  cmd->add_flag("--annihilator", flags.annihilator,
                "automatic penalty set a1..a6 instead of d1..d6");
}

FitConfig build_config(const CommonFlags& flags) {
  FitConfig config = default_fit_config();
  if (flags.annihilator) {
    config.penalty_set.clear();
    for (int d = 1; d <= 6; ++d)
      config.penalty_set.push_back(parse_penalty_selector("a" + std::to_string(d)));
  }
  if (flags.penalty != "auto") config.penalty_set = {parse_penalty_selector(flags.penalty)};
  if (flags.alpha != "auto") {
    std::size_t used = 0;
    double a = 0.0;
    try {
      a = std::stod(flags.alpha, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != flags.alpha.size())
      throw CLI::ValidationError("--alpha", "expected a number or 'auto'");
    config.alpha_set = {a};
  }
  if (flags.family == "ls") config.families = {Family::LS};
  else if (flags.family == "pls") config.families = {Family::PLS};
  else if (flags.family == "ms") config.families = {Family::MS};
  else if (flags.family == "st") config.families = {Family::ST};
  else if (flags.family == "hs") config.families = {Family::HS};
  config.q_fraction = flags.q_frac;
  return config;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::string json_array(const std::vector<double>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += num(xs[i]);
  }
  out += "]";
  return out;
}

int run_fit(const std::string& path, const CommonFlags& flags, bool json) {
  const Layout layout = ingest_csv_file(path);
  const FitResult result = fit(layout, build_config(flags));
  print_warnings(result.warnings);

  std::ostringstream os;
  if (json) {
    os << "{\n";
    os << "  \"family\": \"" << family_name(result.family) << "\",\n";
    os << "  \"penalty\": \"" << result.penalty << "\",\n";
    os << "  \"alpha\": " << (result.alpha ? num(*result.alpha) : "null") << ",\n";
    os << "  \"estimated_risk\": " << num(result.estimated_risk) << ",\n";
    os << "  \"sigma2\": " << num(result.sigma2.sigma2) << ",\n";
    os << "  \"q\": " << result.sigma2.q << ",\n";
    os << "  \"mu_hat\": " << json_array(result.mu_hat) << ",\n";
    os << "  \"residuals\": " << json_array(result.residuals) << "\n";
    os << "}\n";
  } else {
    os << "family: " << family_name(result.family) << "\n";
    os << "penalty: " << result.penalty << "\n";
    if (result.alpha) os << "alpha: " << num(*result.alpha) << "\n";
    os << "estimated_risk: " << num(result.estimated_risk) << "\n";
    os << "sigma2: " << num(result.sigma2.sigma2) << "\n";
    os << "q: " << result.sigma2.q << "\n";
    os << "mu_hat:\n";
    for (std::size_t i = 0; i < result.mu_hat.size(); ++i)
      os << num(layout.levels[i]) << "\t" << num(result.mu_hat[i]) << "\n";
    os << "residuals:\n";
    for (double r : result.residuals) os << num(r) << "\n";
  }
  std::cout << os.str();
  return 0;
}

int run_compare(const std::string& path, const CommonFlags& flags) {
  const Layout layout = ingest_csv_file(path);
  const RiskReport report = compare(layout, build_config(flags));
  print_warnings(report.warnings);

  std::ostringstream os;
  os << "family,penalty,alpha,estimated_risk\n";
  for (const RiskReportRow& row : report.rows) {
    os << family_name(row.family) << "," << row.penalty << ","
       << (row.alpha ? num(*row.alpha) : "") << "," << num(row.estimated_risk) << "\n";
  }
  std::cout << os.str();
  return 0;
}

int run_simulate(const std::string& scenario, int p, double sigma, std::uint64_t seed,
                 const CommonFlags& flags) {
  const std::vector<double> mean =
      scenario == "smooth" ? smooth_mean(p) : very_wiggly_mean(p);
  const SimulationTable table = simulate_experiment(mean, sigma, seed, build_config(flags));
  print_warnings(table.warnings);

  std::ostringstream os;
  os << "# generator: " << table.generator << "\n";
  os << "family,penalty,alpha,estimated_risk,loss\n";
  for (const SimulationRow& row : table.rows) {
    os << family_name(row.family) << "," << row.penalty << ","
       << (row.alpha ? num(*row.alpha) : "") << "," << num(row.estimated_risk) << ","
       << num(row.loss) << "\n";
  }
  std::cout << os.str();
  return 0;
}

int run_economy(const std::string& path, const std::string& penalty) {
  const Layout layout = ingest_csv_file(path);
  const PenaltySelector sel = parse_penalty_selector(penalty);
  const PenaltyBasis basis = build_basis(layout, make_penalty(sel, layout.levels));

  std::ostringstream os;
  for (const auto& [index, coef] : economy_profile(basis))
    os << index << "\t" << num(coef) << "\n";
  std::cout << os.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive shrinkage estimation for one-way layouts with ordered levels"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string input;
  bool json = false;

  CLI::App* fit_cmd = app.add_subcommand("fit", "fit one layout, report the best estimator");
  fit_cmd->add_option("input", input, "two-column CSV: level,value")->required();
  add_common_flags(fit_cmd, flags);
  fit_cmd->add_flag("--json", json, "emit a JSON document instead of text");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "estimated risk of every requested family");
  compare_cmd->add_option("input", input, "two-column CSV: level,value")->required();
  add_common_flags(compare_cmd, flags);

  std::string scenario = "smooth";
  int sim_p = 200;
  double sim_sigma = 0.5;
  std::uint64_t sim_seed = 1;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "one seeded synthetic replicate");
  sim_cmd->add_option("--scenario", scenario, "test mean shape")
      ->check(CLI::IsMember({"smooth", "very-wiggly"}));
  sim_cmd->add_option("--p", sim_p, "number of factor levels")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--sigma", sim_sigma, "noise standard deviation")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim_seed, "generator seed");
  add_common_flags(sim_cmd, flags);

  std::string economy_penalty;
  CLI::App* eco_cmd =
      app.add_subcommand("economy", "signed root canonical coefficients of one basis");
  eco_cmd->add_option("input", input, "two-column CSV: level,value")->required();
  eco_cmd->add_option("--penalty", economy_penalty, "penalty selector")
      ->required()
      ->check(CLI::IsMember(
          {"d1", "d2", "d3", "d4", "d5", "d6", "a1", "a2", "a3", "a4", "a5", "a6"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(input, flags, json);
    if (compare_cmd->parsed()) return run_compare(input, flags);
    if (sim_cmd->parsed()) return run_simulate(scenario, sim_p, sim_sigma, sim_seed, flags);
    if (eco_cmd->parsed()) return run_economy(input, economy_penalty);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const penshrink::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  }
  return 1;
}
