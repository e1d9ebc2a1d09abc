#include "penshrink/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "penshrink/errors.hpp"

namespace penshrink {

namespace {

double offdiag_norm(const Eigen::MatrixXd& a) {
  const Eigen::Index p = a.rows();
  double s = 0.0;
  for (Eigen::Index i = 0; i < p; ++i)
    for (Eigen::Index j = i + 1; j < p; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& m) {
  const Eigen::Index p = m.rows();
  if (p == 0 || m.cols() != p) fail(Errc::invalid_argument, "asymmetric matrix");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    fail(Errc::invalid_argument, "asymmetric matrix");

  Eigen::MatrixXd a = m;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(p, p);
  const double tol = 1e-12 * m.norm();

  int sweep = 0;
  while (offdiag_norm(a) > tol) {
    if (++sweep > 100) fail(Errc::numeric_failure, "eigensolver failed");
    for (Eigen::Index i = 0; i < p - 1; ++i) {
      for (Eigen::Index j = i + 1; j < p; ++j) {
        const double apq = a(i, j);
        if (apq == 0.0) continue;
        const double theta = 0.5 * (a(j, j) - a(i, i)) / apq;
        double t;
        if (std::isfinite(theta)) {
          t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        } else {
          t = 0.0;  // |apq| negligible next to the diagonal gap
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(i, i) -= t * apq;
        a(j, j) += t * apq;
        a(i, j) = 0.0;
        a(j, i) = 0.0;
        for (Eigen::Index k = 0; k < p; ++k) {
          if (k == i || k == j) continue;
          const double aki = a(k, i);
          const double akj = a(k, j);
          a(k, i) = aki - s * (akj + tau * aki);
          a(k, j) = akj + s * (aki - tau * akj);
          a(i, k) = a(k, i);
          a(j, k) = a(k, j);
        }
        for (Eigen::Index k = 0; k < p; ++k) {
          const double vki = v(k, i);
          const double vkj = v(k, j);
          v(k, i) = vki - s * (vkj + tau * vki);
          v(k, j) = vkj + s * (vki - tau * vkj);
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return a(x, x) < a(y, y); });

  EigenDecomposition out;
  out.eigenvalues.resize(p);
  out.rotation.resize(p, p);
  for (Eigen::Index c = 0; c < p; ++c) {
    const int src = order[static_cast<std::size_t>(c)];
    out.eigenvalues(c) = a(src, src);
    out.rotation.col(c) = v.col(src);
    // first entry of largest magnitude made positive
    Eigen::Index lead = 0;
    double best = 0.0;
    for (Eigen::Index k = 0; k < p; ++k) {
      const double mag = std::abs(out.rotation(k, c));
      if (mag > best) {
        best = mag;
        lead = k;
      }
    }
    if (out.rotation(lead, c) < 0.0) out.rotation.col(c) = -out.rotation.col(c);
  }
  return out;
}

PenaltyBasis build_basis(const Layout& layout, const PenaltyMatrix& pm) {
  const int p = layout.p();
  if (pm.cols() != p) fail(Errc::invalid_argument, "penalty/layout mismatch");

  const Eigen::MatrixXd gram = pm.entries.transpose() * pm.entries;
  Eigen::VectorXd winv(p);
  for (int i = 0; i < p; ++i) winv(i) = 1.0 / std::sqrt(static_cast<double>(layout.counts[i]));

  // scale symmetrically so the matrix stays bitwise symmetric
  Eigen::MatrixXd b(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = i; j < p; ++j) {
      const double val = gram(i, j) * (winv(i) * winv(j));
      b(i, j) = val;
      b(j, i) = val;
    }

  EigenDecomposition dec = symmetric_eigen(b);

  PenaltyBasis out;
  out.eigenvalues = dec.eigenvalues.cwiseMax(0.0);  // B is positive semidefinite
  out.rotation = std::move(dec.rotation);
  out.counts = layout.counts;
  out.residual_ss = ls_baseline(layout).residual_ss;
  out.z = coefficients(out, layout);
  return out;
}

Eigen::VectorXd coefficients(const PenaltyBasis& basis, const Layout& layout) {
  const int p = basis.p();
  if (layout.p() != p) fail(Errc::invalid_argument, "penalty/layout mismatch");
  Eigen::VectorXd v(p);
  for (int i = 0; i < p; ++i) {
    double sum = 0.0;
    for (double y : layout.groups[i]) sum += y;
    const double mean = sum / static_cast<double>(layout.groups[i].size());
    v(i) = std::sqrt(static_cast<double>(layout.counts[i])) * mean;
  }
  return basis.rotation.transpose() * v;
}

Reconstruction reconstruct(const PenaltyBasis& basis, const Eigen::VectorXd& xi_hat) {
  const int p = basis.p();
  if (xi_hat.size() != p) fail(Errc::invalid_argument, "penalty/layout mismatch");
  const Eigen::VectorXd u = basis.rotation * xi_hat;
  Reconstruction out;
  out.mu_hat.resize(static_cast<std::size_t>(p));
  long n = 0;
  for (int i = 0; i < p; ++i) {
    out.mu_hat[static_cast<std::size_t>(i)] =
        u(i) / std::sqrt(static_cast<double>(basis.counts[i]));
    n += basis.counts[i];
  }
  out.eta_hat.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < p; ++i)
    out.eta_hat.insert(out.eta_hat.end(), static_cast<std::size_t>(basis.counts[i]),
                       out.mu_hat[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<std::pair<int, double>> economy_profile(const PenaltyBasis& basis) {
  std::vector<std::pair<int, double>> out;
  out.reserve(static_cast<std::size_t>(basis.p()));
  for (int i = 0; i < basis.p(); ++i) {
    const double z = basis.z(i);
    const double root = std::sqrt(std::abs(z));
    out.emplace_back(i + 1, z < 0.0 ? -root : root);
  }
  return out;
}

}  // namespace penshrink
