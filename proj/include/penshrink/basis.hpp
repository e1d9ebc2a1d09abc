#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "penshrink/layout.hpp"
#include "penshrink/penalty.hpp"

namespace penshrink {

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;  // ascending; exact ties keep original order
  Eigen::MatrixXd rotation;     // orthogonal, eigenvectors in columns
};

// Cyclic Jacobi sweeps. Deterministic: fixed sweep order, eigenvalues sorted
// ascending, each eigenvector's first entry of largest magnitude made
// positive. Fails if the off-diagonal mass has not vanished in 100 sweeps.
EigenDecomposition symmetric_eigen(const Eigen::MatrixXd& m);

// Orthonormal penalty basis for a layout: eigendecomposition of
//   B = R^{-1/2} D'D R^{-1/2},  R = diag(counts),
// with eigenvalues ascending (least-penalized directions first) and the
// canonical coefficients z of the observed data.
struct PenaltyBasis {
  Eigen::VectorXd eigenvalues;   // >= 0 after clamping
  Eigen::MatrixXd rotation;      // Gamma
  std::vector<int> counts;
  Eigen::VectorXd z;             // z_j = sum_i Gamma_ij sqrt(n_i) ybar_i
  double residual_ss = 0.0;
  std::optional<double> sigma2;  // attached by the adaptation pipeline

  int p() const { return static_cast<int>(eigenvalues.size()); }
};

PenaltyBasis build_basis(const Layout& layout, const PenaltyMatrix& pm);

// Canonical coefficients of a layout's group means in an existing basis.
Eigen::VectorXd coefficients(const PenaltyBasis& basis, const Layout& layout);

struct Reconstruction {
  std::vector<double> mu_hat;   // per level
  std::vector<double> eta_hat;  // per observation, level-major
};

// Inverse map: mu = R^{-1/2} Gamma xi.
Reconstruction reconstruct(const PenaltyBasis& basis, const Eigen::VectorXd& xi_hat);

// (1-based index, sgn(z_i) |z_i|^{1/2}) pairs for economy plots.
std::vector<std::pair<int, double>> economy_profile(const PenaltyBasis& basis);

}  // namespace penshrink
