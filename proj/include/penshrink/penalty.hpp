#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

namespace penshrink {

enum class PenaltyKind { difference, annihilator };

// Banded (p-d) x p penalty whose rows annihilate polynomials of degree < d
// on the level grid; row i is supported on columns i..i+d.
struct PenaltyMatrix {
  Eigen::MatrixXd entries;
  int degree = 0;
  PenaltyKind kind = PenaltyKind::difference;
  std::uint64_t levels_hash = 0;  // identifies the grid an annihilator was built on

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }
};

// d-th order difference matrix, defined recursively from the first-order
// one; rows carry the alternating binomial pattern.
PenaltyMatrix difference_matrix(int p, int d);

// Rows are degree-d orthonormal polynomials on sliding windows of d+1
// consecutive levels, so unequally spaced grids are handled exactly.
// Sign convention: last nonzero entry of each row is positive.
PenaltyMatrix local_annihilator(const std::vector<double>& levels, int d);

// max_{0<=k<d} ||pm * s^k|| / max(1, ||s^k||), a diagnostic for how well the
// penalty annihilates low-degree polynomials on the given grid.
double annihilation_residual(const PenaltyMatrix& pm, const std::vector<double>& levels);

// Selector grammar: d1..d6 (difference) and a1..a6 (annihilator).
struct PenaltySelector {
  PenaltyKind kind = PenaltyKind::difference;
  int degree = 0;
  std::string name;
};

PenaltySelector parse_penalty_selector(const std::string& text);
PenaltyMatrix make_penalty(const PenaltySelector& sel, const std::vector<double>& levels);

std::uint64_t hash_levels(const std::vector<double>& levels);

}  // namespace penshrink
