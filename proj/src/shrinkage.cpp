#include "penshrink/shrinkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "penshrink/errors.hpp"

namespace penshrink {

const char* family_name(Family f) {
  switch (f) {
    case Family::LS: return "LS";
    case Family::PLS: return "PLS";
    case Family::MS: return "MS";
    case Family::ST: return "ST";
    case Family::HS: return "HS";
  }
  return "?";
}

VarianceEstimate variance_high_component(const PenaltyBasis& basis, long n, int q) {
  const int p = basis.p();
  if (q < 1 || q > p || static_cast<long>(q) > n - 1) fail(Errc::invalid_argument, "invalid q");
  double tail = 0.0;
  for (int i = q; i < p; ++i) tail += basis.z(i) * basis.z(i);
  VarianceEstimate out;
  out.sigma2 = (tail + basis.residual_ss) / static_cast<double>(n - q);
  out.method = VarianceEstimate::Method::high_component;
  out.q = q;
  return out;
}

ShrinkagePlan pls_shrinkage(const Eigen::VectorXd& eigenvalues, double nu) {
  if (std::isnan(nu) || nu < 0.0) fail(Errc::invalid_argument, "invalid penalty weight");
  const Eigen::Index p = eigenvalues.size();
  ShrinkagePlan plan;
  plan.family = Family::PLS;
  plan.nu = nu;
  plan.f.resize(p);
  if (std::isinf(nu)) {
    for (Eigen::Index i = 0; i < p; ++i) plan.f(i) = eigenvalues(i) <= 1e-9 ? 1.0 : 0.0;
  } else {
    for (Eigen::Index i = 0; i < p; ++i) plan.f(i) = 1.0 / (1.0 + nu * eigenvalues(i));
  }
  return plan;
}

double ms_risk_estimate(const Eigen::VectorXd& f, const Eigen::VectorXd& z, double sigma2) {
  const Eigen::Index p = z.size();
  if (f.size() != p) fail(Errc::invalid_argument, "mismatched lengths");
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  double sum = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double omf = 1.0 - f(i);
    sum += f(i) * f(i) * sigma2 + omf * omf * (z(i) * z(i) - sigma2);
  }
  return sum / static_cast<double>(p);
}

Eigen::VectorXd isotonic_decreasing_fit(const Eigen::VectorXd& g, const Eigen::VectorXd& w) {
  const Eigen::Index p = g.size();
  if (w.size() != p) fail(Errc::invalid_argument, "mismatched lengths");
  for (Eigen::Index i = 0; i < p; ++i)
    if (!(w(i) >= 0.0)) fail(Errc::invalid_argument, "negative weight");
  if (p == 0 || !(w.sum() > 0.0)) fail(Errc::invalid_argument, "vacuous problem");

  // blocks hold (weight, weighted value sum, length); a zero-weight block
  // reports value 0, which any merge replaces by the pooled weighted mean
  struct Block {
    double wsum, vsum;
    Eigen::Index len;
    double value() const { return wsum > 0.0 ? vsum / wsum : 0.0; }
  };
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(p));
  for (Eigen::Index i = 0; i < p; ++i) {
    blocks.push_back({w(i), w(i) * g(i), 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 2].value() < blocks.back().value()) {
      Block top = blocks.back();
      blocks.pop_back();
      blocks.back().wsum += top.wsum;
      blocks.back().vsum += top.vsum;
      blocks.back().len += top.len;
    }
  }

  Eigen::VectorXd out(p);
  Eigen::Index pos = 0;
  for (const Block& b : blocks) {
    out.segment(pos, b.len).setConstant(b.value());
    pos += b.len;
  }
  return out;
}

ShrinkagePlan ms_adapt(const Eigen::VectorXd& z, double sigma2) {
  const Eigen::Index p = z.size();
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  Eigen::VectorXd g(p), w(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double z2 = z(i) * z(i);
    w(i) = z2;
    g(i) = z2 > 0.0 ? (z2 - sigma2) / z2 : 0.0;
  }
  ShrinkagePlan plan;
  plan.family = Family::MS;
  if (w.sum() > 0.0) {
    const Eigen::VectorXd k = isotonic_decreasing_fit(g, w);
    plan.f = k.cwiseMax(0.0).cwiseMin(1.0);
  } else {
    plan.f = Eigen::VectorXd::Zero(p);
  }
  return plan;
}

double st_risk_estimate(double t, const Eigen::VectorXd& z, double sigma2) {
  const Eigen::Index p = z.size();
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  if (!(t >= 0.0)) fail(Errc::invalid_argument, "invalid threshold");
  double ind = 0.0, quad = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const double az = std::abs(z(i));
    ind += az <= t ? -1.0 : 1.0;
    const double m = std::min(az, t);
    quad += m * m;
  }
  return (sigma2 * ind + quad) / static_cast<double>(p);
}

double default_threshold_cap(int p) { return std::sqrt(2.0 * std::log(static_cast<double>(p))); }

ShrinkagePlan st_adapt(const Eigen::VectorXd& z, double sigma2, double t_cap) {
  const Eigen::Index p = z.size();
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  if (!(t_cap >= 0.0)) fail(Errc::invalid_argument, "invalid threshold");

  std::vector<double> cand;
  cand.reserve(static_cast<std::size_t>(p) + 2);
  cand.push_back(0.0);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double az = std::abs(z(i));
    if (az <= t_cap) cand.push_back(az);
  }
  cand.push_back(t_cap);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // ascending scan with strict improvement keeps the smallest tied threshold
  double best_t = cand.front();
  double best_risk = st_risk_estimate(best_t, z, sigma2);
  for (std::size_t k = 1; k < cand.size(); ++k) {
    const double risk = st_risk_estimate(cand[k], z, sigma2);
    if (risk < best_risk) {
      best_risk = risk;
      best_t = cand[k];
    }
  }

  ShrinkagePlan plan;
  plan.family = Family::ST;
  plan.threshold = best_t;
  plan.f.resize(p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double az = std::abs(z(i));
    plan.f(i) = az > 0.0 ? std::max(0.0, 1.0 - best_t / az) : 0.0;
  }
  return plan;
}

ShrinkagePlan st_adapt(const Eigen::VectorXd& z, double sigma2) {
  return st_adapt(z, sigma2, default_threshold_cap(static_cast<int>(z.size())));
}

std::pair<ShrinkagePlan, RiskEstimate> hs_adapt(const Eigen::VectorXd& z, double sigma2,
                                                double alpha) {
  const Eigen::Index p = z.size();
  if (p == 0) fail(Errc::invalid_argument, "empty input");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(Errc::invalid_argument, "invalid split");

  const Eigen::Index p1 =
      static_cast<Eigen::Index>(std::floor(alpha * static_cast<double>(p)));
  const Eigen::Index p2 = p - p1;

  ShrinkagePlan plan;
  plan.family = Family::HS;
  plan.alpha = alpha;
  plan.p1 = static_cast<int>(p1);
  plan.f.resize(p);

  double ms_risk = 0.0, st_risk = 0.0;
  if (p1 > 0) {
    const Eigen::VectorXd z1 = z.head(p1);
    const ShrinkagePlan ms = ms_adapt(z1, sigma2);
    plan.f.head(p1) = ms.f;
    ms_risk = ms_risk_estimate(ms.f, z1, sigma2);
  }
  if (p2 > 0) {
    const Eigen::VectorXd z2 = z.tail(p2);
    const ShrinkagePlan st =
        st_adapt(z2, sigma2, default_threshold_cap(static_cast<int>(p2)));
    plan.f.tail(p2) = st.f;
    plan.threshold = st.threshold;
    st_risk = st_risk_estimate(st.threshold, z2, sigma2);
  }

  RiskEstimate risk;
  risk.family = Family::HS;
  risk.components = {ms_risk, st_risk};
  risk.value = (static_cast<double>(p1) * ms_risk + static_cast<double>(p2) * st_risk) /
               static_cast<double>(p);
  return {plan, risk};
}

std::pair<ShrinkagePlan, double> pls_adapt(const Eigen::VectorXd& eigenvalues,
                                           const Eigen::VectorXd& z, double sigma2) {
  std::vector<double> nus;
  nus.push_back(0.0);
  for (int k = 0; k < 60; ++k) nus.push_back(std::pow(10.0, -6.0 + 12.0 * k / 59.0));
  nus.push_back(std::numeric_limits<double>::infinity());

  ShrinkagePlan best;
  double best_risk = std::numeric_limits<double>::infinity();
  for (double nu : nus) {
    ShrinkagePlan plan = pls_shrinkage(eigenvalues, nu);
    const double risk = ms_risk_estimate(plan.f, z, sigma2);
    if (risk < best_risk) {
      best_risk = risk;
      best = std::move(plan);
    }
  }
  return {best, best_risk};
}

Reconstruction apply_plan(const PenaltyBasis& basis, const ShrinkagePlan& plan) {
  if (plan.f.size() != basis.p()) fail(Errc::invalid_argument, "penalty/layout mismatch");
  return reconstruct(basis, plan.f.cwiseProduct(basis.z));
}

}  // namespace penshrink
