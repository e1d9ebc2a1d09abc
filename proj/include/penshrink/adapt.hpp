#pragma once

#include <optional>
#include <string>
#include <vector>

#include "penshrink/basis.hpp"
#include "penshrink/layout.hpp"
#include "penshrink/penalty.hpp"
#include "penshrink/shrinkage.hpp"

namespace penshrink {

struct FitConfig {
  std::vector<PenaltySelector> penalty_set;  // candidate penalties, in order
  std::vector<double> alpha_set;             // HS split grid
  std::vector<Family> families;
  std::optional<double> q_fraction;          // q = floor(q_fraction * p)
  std::optional<long> seed;                  // simulation use only
};

// d1..d6, alpha in {k/20}, all families, automatic variance rule.
FitConfig default_fit_config();

struct FitResult {
  Family family = Family::LS;
  std::string penalty;
  std::optional<double> alpha;  // HS only
  ShrinkagePlan plan;
  double estimated_risk = 0.0;
  VarianceEstimate sigma2;
  std::vector<double> mu_hat;
  std::vector<double> eta_hat;
  std::vector<double> residuals;                 // y - eta_hat, level-major
  std::vector<std::pair<int, double>> economy;   // of the selected basis
  std::vector<std::string> warnings;
};

struct RiskReportRow {
  Family family = Family::LS;
  std::string penalty;
  std::optional<double> alpha;
  double estimated_risk = 0.0;
  std::vector<double> mu_hat;
};

struct RiskReport {
  std::vector<RiskReportRow> rows;  // fixed order LS, PLS, MS, ST, HS
  std::vector<std::string> warnings;
};

// Variance estimate used by the pipeline: least squares when n > p and no
// fraction is given, otherwise the high-component estimate with
// q = floor(fraction * p) (default fraction 0.75) clamped to [1, min(p,n-1)].
VarianceEstimate choose_variance(const Layout& layout, const PenaltyBasis& basis,
                                 std::optional<double> q_fraction);

// Global minimizer of estimated risk over requested families, candidate
// penalties and (for HS) the alpha grid; earlier candidates win ties, with
// candidates enumerated family-major, then penalty order, then ascending
// alpha. HS always evaluates alpha 0 and 1 in addition to the grid.
FitResult fit(const Layout& layout, const FitConfig& config);

// One row per requested family, each adapted independently.
RiskReport compare(const Layout& layout, const FitConfig& config);

}  // namespace penshrink
