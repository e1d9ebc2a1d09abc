#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>

#include "penshrink/basis.hpp"

namespace penshrink {

enum class Family { LS, PLS, MS, ST, HS };

const char* family_name(Family f);

// Componentwise shrinkage vector plus the tuning that produced it.
struct ShrinkagePlan {
  Eigen::VectorXd f;       // entries in [0,1]
  Family family = Family::LS;
  double nu = 0.0;         // PLS penalty weight (may be +inf)
  double threshold = 0.0;  // ST threshold (HS: threshold of the tail block)
  double alpha = 0.0;      // HS split fraction
  int p1 = 0;              // HS head length
};

struct VarianceEstimate {
  enum class Method { ls, high_component };
  double sigma2 = 0.0;
  Method method = Method::ls;
  int q = 0;
};

struct RiskEstimate {
  double value = 0.0;
  Family family = Family::LS;
  // HS only: per-block estimated risks (head, tail)
  std::optional<std::pair<double, double>> components;
};

// sigma2_H = (n-q)^{-1} [ sum_{i>q} z_i^2 + residual_ss ]; with q = p < n this
// is the least squares estimate.
VarianceEstimate variance_high_component(const PenaltyBasis& basis, long n, int q);

// f_i = 1/(1 + nu * lambda_i); nu = +inf keeps only the penalty kernel.
ShrinkagePlan pls_shrinkage(const Eigen::VectorXd& eigenvalues, double nu);

// Unbiased risk estimate for a fixed monotone candidate:
//   ave[ f^2 sigma2 + (1-f)^2 (z^2 - sigma2) ].
double ms_risk_estimate(const Eigen::VectorXd& f, const Eigen::VectorXd& z, double sigma2);

// Weighted least squares fit under a nonincreasing constraint
// (pool-adjacent-violators). Zero-weight entries adopt their block value.
Eigen::VectorXd isotonic_decreasing_fit(const Eigen::VectorXd& g, const Eigen::VectorXd& w);

// Monotone shrinkage: isotonic fit of g_i = (z_i^2 - sigma2)/z_i^2 with
// weights z_i^2, clamped to [0,1].
ShrinkagePlan ms_adapt(const Eigen::VectorXd& z, double sigma2);

// Unbiased risk estimate for soft thresholding at t:
//   sigma2 * ave[1 - 2*1(|z_i| <= t)] + ave[(|z_i| ^ t)^2].
double st_risk_estimate(double t, const Eigen::VectorXd& z, double sigma2);

double default_threshold_cap(int p);  // sqrt(2 log p)

// Soft-threshold adaptation: minimizes the risk estimate over candidate
// thresholds {0} u {|z_i| <= t_cap} u {t_cap}; ties pick the smallest t.
ShrinkagePlan st_adapt(const Eigen::VectorXd& z, double sigma2, double t_cap);
ShrinkagePlan st_adapt(const Eigen::VectorXd& z, double sigma2);

// Hybrid: monotone shrinkage on the first floor(alpha*p) coefficients, soft
// thresholding (cap sqrt(2 log p2)) on the rest; the estimated risk is the
// count-weighted average of the block risks.
std::pair<ShrinkagePlan, RiskEstimate> hs_adapt(const Eigen::VectorXd& z, double sigma2,
                                                double alpha);

// PLS with nu chosen from {0, +inf} and 60 log-spaced values in [1e-6, 1e6]
// by minimizing the monotone-family risk estimate.
std::pair<ShrinkagePlan, double> pls_adapt(const Eigen::VectorXd& eigenvalues,
                                           const Eigen::VectorXd& z, double sigma2);

// Fitted means for xi_hat = f .* z.
Reconstruction apply_plan(const PenaltyBasis& basis, const ShrinkagePlan& plan);

}  // namespace penshrink
