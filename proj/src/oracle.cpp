#include "penshrink/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "penshrink/errors.hpp"
#include "penshrink/rng.hpp"

namespace penshrink {

double loss(const std::vector<double>& mu_hat, const std::vector<double>& mu,
            const std::vector<int>& counts) {
  const std::size_t p = mu.size();
  if (mu_hat.size() != p || counts.size() != p || p == 0)
    fail(Errc::invalid_argument, "mismatched lengths");
  double sum = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    const double d = mu_hat[i] - mu[i];
    sum += static_cast<double>(counts[i]) * d * d;
  }
  return sum / static_cast<double>(p);
}

namespace {

void validate_ellipsoid(const EllipsoidSpec& spec) {
  const std::size_t p = spec.a.size();
  if (p == 0 || !(spec.r > 0.0) || !(spec.sigma2 > 0.0) ||
      !(spec.b > 0.0 && spec.b <= 1.0))
    fail(Errc::invalid_argument, "invalid ellipsoid");
  if (spec.a.front() != 1.0) fail(Errc::invalid_argument, "invalid ellipsoid");
  const std::size_t ones =
      static_cast<std::size_t>(std::floor(spec.b * static_cast<double>(p)));
  for (std::size_t i = 0; i < p; ++i) {
    if (std::isnan(spec.a[i]) || spec.a[i] < 1.0)
      fail(Errc::invalid_argument, "invalid ellipsoid");
    if (i > 0 && spec.a[i] < spec.a[i - 1]) fail(Errc::invalid_argument, "invalid ellipsoid");
    if (i < ones && spec.a[i] != 1.0) fail(Errc::invalid_argument, "invalid ellipsoid");
  }
}

// ave over i of sigma2 * [(gamma/a_i)^{1/2} - 1]_+ ; infinite a_i contribute 0
double mean_xi0_sq(const EllipsoidSpec& spec, double gamma) {
  double sum = 0.0;
  for (double a : spec.a) {
    if (std::isinf(a)) continue;
    sum += std::max(std::sqrt(gamma / a) - 1.0, 0.0);
  }
  return spec.sigma2 * sum / static_cast<double>(spec.a.size());
}

}  // namespace

double pinsker_bound(const EllipsoidSpec& spec) {
  validate_ellipsoid(spec);
  const double target = spec.sigma2 * spec.r;

  // mean_xi0_sq is continuous and nondecreasing in gamma, zero at gamma <= 1
  double lo = 1.0, hi = 2.0;
  int guard = 0;
  while (mean_xi0_sq(spec, hi) < target) {
    hi *= 2.0;
    if (++guard > 2000 || !std::isfinite(hi))
      fail(Errc::numeric_failure, "bound computation failed");
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mean_xi0_sq(spec, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double gamma = 0.5 * (lo + hi);
  if (std::fabs(mean_xi0_sq(spec, gamma) - target) > 1e-10 * target)
    fail(Errc::numeric_failure, "bound computation failed");

  double sum = 0.0;
  for (double a : spec.a) {
    if (std::isinf(a)) continue;
    const double xi0_sq = spec.sigma2 * std::max(std::sqrt(gamma / a) - 1.0, 0.0);
    sum += xi0_sq / (spec.sigma2 + xi0_sq);
  }
  return spec.sigma2 * sum / static_cast<double>(spec.a.size());
}

std::vector<double> smooth_mean(int p) {
  if (p < 1) fail(Errc::invalid_argument, "empty input");
  std::vector<double> out(static_cast<std::size_t>(p));
  for (int i = 1; i <= p; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(p);
    const double y = (x - 0.25) * (x - 0.75);
    out[static_cast<std::size_t>(i - 1)] = 2.0 - 50.0 * y * y;
  }
  return out;
}

std::vector<double> very_wiggly_mean(int p) {
  std::vector<double> out = smooth_mean(p);
  for (int i = 1; i <= p; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(p);
    out[static_cast<std::size_t>(i - 1)] -= 0.25 * std::sin(100.0 * std::numbers::pi * x);
  }
  return out;
}

SimulationTable simulate_experiment(const std::vector<double>& mean, double sigma,
                                    std::uint64_t seed, const FitConfig& config) {
  const int p = static_cast<int>(mean.size());
  if (p < 2) fail(Errc::degenerate_layout, "degenerate layout");

  NormalSampler rng(seed);
  std::vector<double> levels(static_cast<std::size_t>(p));
  std::vector<std::vector<double>> groups(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) {
    levels[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
    groups[static_cast<std::size_t>(i)] = {mean[static_cast<std::size_t>(i)] + sigma * rng()};
  }
  const Layout layout = make_layout(std::move(levels), std::move(groups));

  const RiskReport report = compare(layout, config);
  SimulationTable table;
  table.generator = NormalSampler::generator_id();
  table.warnings = report.warnings;
  for (const RiskReportRow& row : report.rows) {
    SimulationRow out;
    out.family = row.family;
    out.penalty = row.penalty;
    out.alpha = row.alpha;
    out.estimated_risk = row.estimated_risk;
    out.loss = loss(row.mu_hat, mean, layout.counts);
    table.rows.push_back(std::move(out));
  }
  return table;
}

SureCheckResult sure_check(const std::vector<double>& xi, double sigma2, SurePlanKind kind,
                           double tuning, int reps, std::uint64_t seed) {
  const std::size_t p = xi.size();
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  if (reps < 100) fail(Errc::invalid_argument, "too few replicates");
  if (!(sigma2 > 0.0)) fail(Errc::invalid_argument, "invalid variance");

  const double sigma = std::sqrt(sigma2);
  const double f = std::clamp(tuning, 0.0, 1.0);
  const double t = tuning;
  if (kind == SurePlanKind::st_fixed_t && !(t >= 0.0))
    fail(Errc::invalid_argument, "invalid threshold");

  double sum_r = 0.0, sum_l = 0.0, sum_r2 = 0.0, sum_l2 = 0.0, sum_d2 = 0.0;
  Eigen::VectorXd z(static_cast<Eigen::Index>(p));
  for (int rep = 0; rep < reps; ++rep) {
    NormalSampler rng(mix_seed(seed, static_cast<std::uint64_t>(rep)));
    for (std::size_t i = 0; i < p; ++i)
      z(static_cast<Eigen::Index>(i)) = xi[i] + sigma * rng();

    double risk, lo = 0.0;
    if (kind == SurePlanKind::ms_fixed_f) {
      risk = ms_risk_estimate(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(p), f), z,
                              sigma2);
      for (std::size_t i = 0; i < p; ++i) {
        const double d = f * z(static_cast<Eigen::Index>(i)) - xi[i];
        lo += d * d;
      }
    } else {
      risk = st_risk_estimate(t, z, sigma2);
      for (std::size_t i = 0; i < p; ++i) {
        const double zi = z(static_cast<Eigen::Index>(i));
        const double soft = std::copysign(std::max(std::abs(zi) - t, 0.0), zi);
        const double d = soft - xi[i];
        lo += d * d;
      }
    }
    lo /= static_cast<double>(p);

    sum_r += risk;
    sum_l += lo;
    sum_r2 += risk * risk;
    sum_l2 += lo * lo;
    const double diff = risk - lo;
    sum_d2 += diff * diff;
  }

  const double nr = static_cast<double>(reps);
  SureCheckResult out;
  out.mean_risk_estimate = sum_r / nr;
  out.mean_loss = sum_l / nr;
  const double var_r = std::max(0.0, sum_r2 / nr - out.mean_risk_estimate * out.mean_risk_estimate);
  const double var_l = std::max(0.0, sum_l2 / nr - out.mean_loss * out.mean_loss);
  const double mean_d = out.mean_risk_estimate - out.mean_loss;
  const double var_d = std::max(0.0, sum_d2 / nr - mean_d * mean_d);
  out.se_risk = std::sqrt(var_r / nr);
  out.se_loss = std::sqrt(var_l / nr);
  out.se_diff = std::sqrt(var_d / nr);
  return out;
}

namespace {

struct GridSearch {
  const std::vector<double>* g;
  const std::vector<double>* w;
  std::vector<double> grid;
  std::vector<int> pick;
  std::vector<int> best_pick;
  double best_cost = std::numeric_limits<double>::infinity();

  // value indices are nonincreasing along positions (grid is ascending)
  void recurse(std::size_t pos, int max_idx, double cost) {
    if (cost >= best_cost) return;
    if (pos == g->size()) {
      best_cost = cost;
      best_pick = pick;
      return;
    }
    for (int idx = max_idx; idx >= 0; --idx) {
      const double d = grid[static_cast<std::size_t>(idx)] - (*g)[pos];
      pick[pos] = idx;
      recurse(pos + 1, idx, cost + (*w)[pos] * d * d);
    }
  }
};

}  // namespace

std::vector<double> brute_force_isotonic(const std::vector<double>& g,
                                         const std::vector<double>& w, double grid_step) {
  const std::size_t p = g.size();
  if (p == 0 || w.size() != p) fail(Errc::invalid_argument, "mismatched lengths");
  if (p > 8) fail(Errc::invalid_argument, "instance too large for oracle");
  if (!(grid_step > 0.0)) fail(Errc::invalid_argument, "invalid grid step");

  const double lo = *std::min_element(g.begin(), g.end());
  const double hi = *std::max_element(g.begin(), g.end());
  const int m = static_cast<int>(std::ceil((hi - lo) / grid_step - 1e-12)) + 1;

  GridSearch search;
  search.g = &g;
  search.w = &w;
  search.grid.resize(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) search.grid[static_cast<std::size_t>(k)] = lo + k * grid_step;
  search.pick.assign(p, 0);
  search.recurse(0, m - 1, 0.0);

  std::vector<double> out(p);
  for (std::size_t i = 0; i < p; ++i)
    out[i] = search.grid[static_cast<std::size_t>(search.best_pick[i])];
  return out;
}

}  // namespace penshrink
