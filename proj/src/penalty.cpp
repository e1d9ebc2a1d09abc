#include "penshrink/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "penshrink/errors.hpp"

namespace penshrink {

namespace {

void check_levels(const std::vector<double>& levels) {
  for (std::size_t i = 0; i + 1 < levels.size(); ++i)
    if (!(levels[i] < levels[i + 1])) fail(Errc::invalid_argument, "unordered levels");
}

Eigen::MatrixXd first_difference(int m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m - 1, m);
  for (int i = 0; i < m - 1; ++i) {
    d(i, i) = 1.0;
    d(i, i + 1) = -1.0;
  }
  return d;
}

}  // namespace

std::uint64_t hash_levels(const std::vector<double>& levels) {
  // FNV-1a over the raw doubles
  std::uint64_t h = 1469598103934665603ull;
  for (double s : levels) {
    std::uint64_t bits;
    std::memcpy(&bits, &s, sizeof bits);
    for (int k = 0; k < 8; ++k) {
      h ^= (bits >> (8 * k)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

PenaltyMatrix difference_matrix(int p, int d) {
  if (d < 1 || d >= p) fail(Errc::invalid_argument, "invalid degree");
  Eigen::MatrixXd m = first_difference(p);
  for (int k = 2; k <= d; ++k) m = first_difference(p - k + 1) * m;
  PenaltyMatrix out;
  out.entries = std::move(m);
  out.degree = d;
  out.kind = PenaltyKind::difference;
  return out;
}

PenaltyMatrix local_annihilator(const std::vector<double>& levels, int d) {
  const int p = static_cast<int>(levels.size());
  if (d < 1 || d >= p) fail(Errc::invalid_argument, "invalid degree");
  check_levels(levels);

  const int w = d + 1;
  PenaltyMatrix out;
  out.entries = Eigen::MatrixXd::Zero(p - d, p);
  out.degree = d;
  out.kind = PenaltyKind::annihilator;
  out.levels_hash = hash_levels(levels);

  Eigen::MatrixXd v(w, w), q(w, w);
  for (int i = 0; i < p - d; ++i) {
    // monomials in (x - xbar) on the window, orthonormalized by modified
    // Gram-Schmidt; two passes keep orthogonality at machine precision
    double xbar = 0.0;
    for (int j = 0; j < w; ++j) xbar += levels[i + j];
    xbar /= w;
    for (int j = 0; j < w; ++j) {
      const double x = levels[i + j] - xbar;
      double pw = 1.0;
      for (int k = 0; k < w; ++k) {
        v(j, k) = pw;
        pw *= x;
      }
    }
    for (int k = 0; k < w; ++k) {
      Eigen::VectorXd col = v.col(k);
      for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < k; ++j) col -= q.col(j).dot(col) * q.col(j);
      const double norm = col.norm();
      if (!(norm > 0.0)) fail(Errc::numeric_failure, "degenerate window");
      q.col(k) = col / norm;
    }
    Eigen::VectorXd row = q.col(d);
    for (int j = w - 1; j >= 0; --j) {
      if (std::abs(row(j)) > 1e-12) {
        if (row(j) < 0.0) row = -row;
        break;
      }
    }
    out.entries.row(i).segment(i, w) = row.transpose();
  }
  return out;
}

double annihilation_residual(const PenaltyMatrix& pm, const std::vector<double>& levels) {
  const int p = pm.cols();
  if (static_cast<int>(levels.size()) != p)
    fail(Errc::invalid_argument, "penalty/layout mismatch");
  double worst = 0.0;
  Eigen::VectorXd v = Eigen::VectorXd::Ones(p);
  for (int k = 0; k < pm.degree; ++k) {
    if (k > 0)
      for (int i = 0; i < p; ++i) v(i) *= levels[i];
    const double scale = std::max(1.0, v.norm());
    worst = std::max(worst, (pm.entries * v).norm() / scale);
  }
  return worst;
}

PenaltySelector parse_penalty_selector(const std::string& text) {
  PenaltySelector sel;
  if (text.size() == 2 && (text[0] == 'd' || text[0] == 'a') && text[1] >= '1' &&
      text[1] <= '6') {
    sel.kind = text[0] == 'd' ? PenaltyKind::difference : PenaltyKind::annihilator;
    sel.degree = text[1] - '0';
    sel.name = text;
    return sel;
  }
  fail(Errc::invalid_argument, "invalid penalty selector: " + text);
}

PenaltyMatrix make_penalty(const PenaltySelector& sel, const std::vector<double>& levels) {
  if (sel.kind == PenaltyKind::difference)
    return difference_matrix(static_cast<int>(levels.size()), sel.degree);
  return local_annihilator(levels, sel.degree);
}

}  // namespace penshrink
