#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "penshrink/adapt.hpp"

namespace penshrink {

// Normalized quadratic loss p^{-1} sum_i n_i (mu_hat_i - mu_i)^2.
double loss(const std::vector<double>& mu_hat, const std::vector<double>& mu,
            const std::vector<int>& counts);

// Ellipsoid: ave(a_i xi_i^2) <= sigma2 * r with a_1 = 1, a nondecreasing,
// a_i = 1 for i <= floor(b*p); +inf entries pin coordinates to zero.
struct EllipsoidSpec {
  std::vector<double> a;
  double r = 1.0;
  double b = 1.0;
  double sigma2 = 1.0;
};

// Linear minimax risk over the ellipsoid:
//   nu_p = sigma2 * ave[ xi0_i^2 / (sigma2 + xi0_i^2) ],
//   xi0_i^2 = sigma2 * [ (gamma/a_i)^{1/2} - 1 ]_+,
// with gamma the positive root of ave(xi0^2) = sigma2 * r (bisection).
double pinsker_bound(const EllipsoidSpec& spec);

// Test means on levels i = 1..p, parameterized by x = i/p.
std::vector<double> smooth_mean(int p);       // 2 - 50((x-.25)(x-.75))^2
std::vector<double> very_wiggly_mean(int p);  // smooth - 0.25 sin(100 pi x)

struct SimulationRow {
  Family family = Family::LS;
  std::string penalty;
  std::optional<double> alpha;
  double estimated_risk = 0.0;
  double loss = 0.0;
};

struct SimulationTable {
  std::vector<SimulationRow> rows;
  std::string generator;  // RNG identity, for reproducibility records
  std::vector<std::string> warnings;
};

// One synthetic replicate: y_i = mean_i + sigma * e_i on levels 1..p, then a
// full comparison with true losses attached.
SimulationTable simulate_experiment(const std::vector<double>& mean, double sigma,
                                    std::uint64_t seed, const FitConfig& config);

enum class SurePlanKind { ms_fixed_f, st_fixed_t };

struct SureCheckResult {
  double mean_risk_estimate = 0.0;
  double mean_loss = 0.0;
  double se_risk = 0.0;
  double se_loss = 0.0;
  double se_diff = 0.0;  // paired standard error of (estimate - loss)
};

// Monte Carlo check that the fixed-plan risk estimates are unbiased for the
// true risk: z ~ N(xi, sigma2 I), plan held fixed across replicates.
// ms_fixed_f uses the constant shrinkage vector f_i = clamp(tuning, 0, 1);
// st_fixed_t soft-thresholds at t = tuning.
SureCheckResult sure_check(const std::vector<double>& xi, double sigma2, SurePlanKind kind,
                           double tuning, int reps, std::uint64_t seed);

// Exhaustive nonincreasing fit over the value grid min(g) + k*grid_step,
// for cross-checking the pool-adjacent-violators implementation. p <= 8.
std::vector<double> brute_force_isotonic(const std::vector<double>& g,
                                         const std::vector<double>& w, double grid_step);

}  // namespace penshrink
