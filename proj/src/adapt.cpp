#include "penshrink/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "penshrink/errors.hpp"

namespace penshrink {

namespace {

constexpr Family kFamilyOrder[] = {Family::LS, Family::PLS, Family::MS, Family::ST,
                                   Family::HS};

struct BasisBundle {
  PenaltySelector sel;
  PenaltyBasis basis;
};

struct Candidate {
  ShrinkagePlan plan;
  double risk = std::numeric_limits<double>::infinity();
  int bundle = -1;
  std::optional<double> alpha;
  bool valid() const { return bundle >= 0; }
};

std::vector<double> hs_alpha_grid(const std::vector<double>& alpha_set) {
  std::vector<double> grid(alpha_set);
  grid.push_back(0.0);  // the hybrid always considers the pure blocks
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// best candidate for one family on one basis; earlier alphas win ties
Candidate family_candidate(Family family, const BasisBundle& bundle, int bundle_idx,
                           const std::vector<double>& alpha_grid) {
  const PenaltyBasis& basis = bundle.basis;
  const double sigma2 = *basis.sigma2;
  Candidate cand;
  cand.bundle = bundle_idx;
  switch (family) {
    case Family::LS: {
      cand.plan.family = Family::LS;
      cand.plan.f = Eigen::VectorXd::Ones(basis.p());
      cand.risk = ms_risk_estimate(cand.plan.f, basis.z, sigma2);
      break;
    }
    case Family::PLS: {
      auto [plan, risk] = pls_adapt(basis.eigenvalues, basis.z, sigma2);
      cand.plan = std::move(plan);
      cand.risk = risk;
      break;
    }
    case Family::MS: {
      cand.plan = ms_adapt(basis.z, sigma2);
      cand.risk = ms_risk_estimate(cand.plan.f, basis.z, sigma2);
      break;
    }
    case Family::ST: {
      cand.plan = st_adapt(basis.z, sigma2);
      cand.risk = st_risk_estimate(cand.plan.threshold, basis.z, sigma2);
      break;
    }
    case Family::HS: {
      for (double alpha : alpha_grid) {
        auto [plan, risk] = hs_adapt(basis.z, sigma2, alpha);
        if (risk.value < cand.risk) {
          cand.plan = std::move(plan);
          cand.risk = risk.value;
          cand.alpha = alpha;
        }
      }
      break;
    }
  }
  return cand;
}

std::vector<Family> requested_families(const FitConfig& config) {
  if (config.families.empty()) fail(Errc::invalid_argument, "no family requested");
  std::vector<Family> out;
  for (Family f : kFamilyOrder)
    if (std::find(config.families.begin(), config.families.end(), f) !=
        config.families.end())
      out.push_back(f);
  return out;
}

void validate_config(const FitConfig& config, bool wants_hs) {
  if (config.penalty_set.empty()) fail(Errc::invalid_argument, "empty penalty set");
  if (wants_hs && config.alpha_set.empty()) fail(Errc::invalid_argument, "empty alpha grid");
  for (double a : config.alpha_set)
    if (!(a >= 0.0 && a <= 1.0)) fail(Errc::invalid_argument, "invalid split");
  if (config.q_fraction && !(*config.q_fraction > 0.0 && *config.q_fraction <= 1.0))
    fail(Errc::invalid_argument, "invalid q");
}

std::vector<std::string> grid_warnings(const FitConfig& config, bool wants_hs, int p) {
  std::vector<std::string> out;
  const double root_p = std::sqrt(static_cast<double>(p));
  auto warn = [&](const char* what, std::size_t count) {
    std::ostringstream os;
    os << what << " grid has " << count << " candidates, more than sqrt(p) = " << root_p
       << "; estimated-risk selection degrades with grid size";
    out.push_back(os.str());
  };
  if (static_cast<double>(config.penalty_set.size()) > root_p)
    warn("penalty", config.penalty_set.size());
  if (wants_hs && static_cast<double>(config.alpha_set.size()) > root_p)
    warn("alpha", config.alpha_set.size());
  return out;
}

std::vector<BasisBundle> build_bundles(const Layout& layout, const FitConfig& config) {
  std::vector<BasisBundle> bundles;
  bundles.reserve(config.penalty_set.size());
  for (const PenaltySelector& sel : config.penalty_set) {
    BasisBundle b;
    b.sel = sel;
    b.basis = build_basis(layout, make_penalty(sel, layout.levels));
    b.basis.sigma2 = choose_variance(layout, b.basis, config.q_fraction).sigma2;
    bundles.push_back(std::move(b));
  }
  return bundles;
}

}  // namespace

FitConfig default_fit_config() {
  FitConfig config;
  for (int d = 1; d <= 6; ++d)
    config.penalty_set.push_back(parse_penalty_selector("d" + std::to_string(d)));
  for (int k = 0; k <= 20; ++k) config.alpha_set.push_back(k / 20.0);
  config.families = {Family::LS, Family::PLS, Family::MS, Family::ST, Family::HS};
  return config;
}

VarianceEstimate choose_variance(const Layout& layout, const PenaltyBasis& basis,
                                 std::optional<double> q_fraction) {
  const int p = layout.p();
  const long n = layout.n;
  if (!q_fraction && n > p) {
    VarianceEstimate out;
    out.sigma2 = *ls_baseline(layout).sigma2_ls;
    out.method = VarianceEstimate::Method::ls;
    out.q = p;
    return out;
  }
  const double frac = q_fraction.value_or(0.75);
  if (!(frac > 0.0 && frac <= 1.0)) fail(Errc::invalid_argument, "invalid q");
  int q = static_cast<int>(std::floor(frac * static_cast<double>(p)));
  const int q_max = static_cast<int>(std::min<long>(p, n - 1));
  q = std::clamp(q, 1, q_max);
  return variance_high_component(basis, n, q);
}

FitResult fit(const Layout& layout, const FitConfig& config) {
  const std::vector<Family> families = requested_families(config);
  const bool wants_hs =
      std::find(families.begin(), families.end(), Family::HS) != families.end();
  validate_config(config, wants_hs);

  const std::vector<double> alpha_grid = hs_alpha_grid(config.alpha_set);
  const std::vector<BasisBundle> bundles = build_bundles(layout, config);

  Family best_family = families.front();
  Candidate best;
  for (Family family : families) {
    for (std::size_t bi = 0; bi < bundles.size(); ++bi) {
      Candidate cand =
          family_candidate(family, bundles[bi], static_cast<int>(bi), alpha_grid);
      if (!best.valid() || cand.risk < best.risk) {
        best = std::move(cand);
        best_family = family;
      }
    }
  }

  const BasisBundle& winner = bundles[static_cast<std::size_t>(best.bundle)];
  FitResult out;
  out.family = best_family;
  out.penalty = winner.sel.name;
  out.alpha = best.alpha;
  out.plan = best.plan;
  out.estimated_risk = best.risk;
  out.sigma2 = choose_variance(layout, winner.basis, config.q_fraction);
  Reconstruction rec = apply_plan(winner.basis, best.plan);
  out.mu_hat = std::move(rec.mu_hat);
  out.eta_hat = std::move(rec.eta_hat);
  out.residuals.reserve(static_cast<std::size_t>(layout.n));
  for (int i = 0; i < layout.p(); ++i)
    for (double y : layout.groups[static_cast<std::size_t>(i)])
      out.residuals.push_back(y - out.mu_hat[static_cast<std::size_t>(i)]);
  out.economy = economy_profile(winner.basis);
  out.warnings = grid_warnings(config, wants_hs, layout.p());
  return out;
}

RiskReport compare(const Layout& layout, const FitConfig& config) {
  const std::vector<Family> families = requested_families(config);
  const bool wants_hs =
      std::find(families.begin(), families.end(), Family::HS) != families.end();
  validate_config(config, wants_hs);

  const std::vector<double> alpha_grid = hs_alpha_grid(config.alpha_set);
  const std::vector<BasisBundle> bundles = build_bundles(layout, config);

  RiskReport report;
  for (Family family : families) {
    Candidate best;
    for (std::size_t bi = 0; bi < bundles.size(); ++bi) {
      Candidate cand =
          family_candidate(family, bundles[bi], static_cast<int>(bi), alpha_grid);
      if (!best.valid() || cand.risk < best.risk) best = std::move(cand);
    }
    const BasisBundle& winner = bundles[static_cast<std::size_t>(best.bundle)];
    RiskReportRow row;
    row.family = family;
    row.penalty = winner.sel.name;
    row.alpha = best.alpha;
    row.estimated_risk = best.risk;
    row.mu_hat = apply_plan(winner.basis, best.plan).mu_hat;
    report.rows.push_back(std::move(row));
  }
  report.warnings = grid_warnings(config, wants_hs, layout.p());
  return report;
}

}  // namespace penshrink
