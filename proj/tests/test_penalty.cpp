#include <cmath>
#include <random>

#include "doctest.h"
#include "penshrink/errors.hpp"
#include "penshrink/penalty.hpp"

using namespace penshrink;

namespace {

std::vector<double> random_grid(int p, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> step(0.5, 1.5);
  std::vector<double> s(p);
  double x = 0.0;
  for (int i = 0; i < p; ++i) {
    x += step(gen);
    s[i] = x;
  }
  return s;
}

// distance between unit rows up to sign
double row_distance(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return std::min((a - b).cwiseAbs().maxCoeff(), (a + b).cwiseAbs().maxCoeff());
}

}  // namespace

TEST_SUITE("penalty") {

TEST_CASE("first and second difference rows") {
  const PenaltyMatrix d1 = difference_matrix(4, 1);
  REQUIRE(d1.rows() == 3);
  REQUIRE(d1.cols() == 4);
  Eigen::MatrixXd want1(3, 4);
  want1 << 1, -1, 0, 0, 0, 1, -1, 0, 0, 0, 1, -1;
  CHECK((d1.entries - want1).cwiseAbs().maxCoeff() == 0.0);

  const PenaltyMatrix d2 = difference_matrix(4, 2);
  Eigen::MatrixXd want2(2, 4);
  want2 << 1, -2, 1, 0, 0, 1, -2, 1;
  CHECK((d2.entries - want2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("difference degree bounds") {
  CHECK_THROWS_WITH_AS(difference_matrix(3, 3), "invalid degree", Error);
  CHECK_THROWS_WITH_AS(difference_matrix(4, 0), "invalid degree", Error);
  CHECK_THROWS_WITH_AS(difference_matrix(4, 4), "invalid degree", Error);
}

TEST_CASE("difference rows carry alternating binomial coefficients") {
  const PenaltyMatrix d4 = difference_matrix(9, 4);
  const double want[] = {1, -4, 6, -4, 1};
  for (int i = 0; i < d4.rows(); ++i)
    for (int k = 0; k <= 4; ++k) CHECK(d4.entries(i, i + k) == want[k]);
}

TEST_CASE("annihilator on an equally spaced grid, degree one") {
  const PenaltyMatrix a1 = local_annihilator({1.0, 2.0, 3.0}, 1);
  REQUIRE(a1.rows() == 2);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(a1.entries(0, 0) == doctest::Approx(-r).epsilon(1e-14));
  CHECK(a1.entries(0, 1) == doctest::Approx(r).epsilon(1e-14));
  CHECK(a1.entries(0, 2) == 0.0);
  CHECK(a1.entries(1, 1) == doctest::Approx(-r).epsilon(1e-14));
  CHECK(a1.entries(1, 2) == doctest::Approx(r).epsilon(1e-14));
}

TEST_CASE("annihilator rows are unit length with positive trailing entry") {
  std::mt19937_64 gen(11);
  for (int d = 1; d <= 4; ++d) {
    const auto grid = random_grid(12, gen);
    const PenaltyMatrix a = local_annihilator(grid, d);
    for (int i = 0; i < a.rows(); ++i) {
      CHECK(a.entries.row(i).norm() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(a.entries(i, i + d) > 0.0);  // trailing window entry
      // banded support
      for (int j = 0; j < a.cols(); ++j)
        if (j < i || j > i + d) CHECK(a.entries(i, j) == 0.0);
    }
  }
}

TEST_CASE("equal spacing: annihilator rows proportional to difference rows up to sign") {
  for (int d = 1; d <= 4; ++d) {
    std::vector<double> grid;
    for (int i = 0; i < 10; ++i) grid.push_back(3.0 + 0.5 * i);
    const PenaltyMatrix a = local_annihilator(grid, d);
    const PenaltyMatrix diff = difference_matrix(10, d);
    for (int i = 0; i < a.rows(); ++i) {
      const Eigen::VectorXd da = a.entries.row(i).transpose();
      const Eigen::VectorXd dd = diff.entries.row(i).transpose().normalized();
      CHECK(row_distance(da, dd) < 1e-12);
    }
  }
}

TEST_CASE("unequal grid changes the row pattern") {
  const PenaltyMatrix a = local_annihilator({0.0, 1.0, 10.0}, 1);
  // window (0,1) and window (1,10) both give the same normalized first
  // difference, but degree 2 depends on spacing
  const PenaltyMatrix a2 = local_annihilator({0.0, 1.0, 10.0, 11.0}, 2);
  const PenaltyMatrix d2 = difference_matrix(4, 2);
  CHECK(row_distance(a2.entries.row(0).transpose(),
                     d2.entries.row(0).transpose().normalized()) > 1e-3);
  CHECK(a.rows() == 2);
}

TEST_CASE("annihilation residual vanishes on the design polynomials") {
  std::mt19937_64 gen(23);
  const auto grid = random_grid(15, gen);
  for (int d = 1; d <= 4; ++d) {
    const PenaltyMatrix a = local_annihilator(grid, d);
    CHECK(annihilation_residual(a, grid) < 1e-12);
  }

  // difference penalties annihilate polynomials only on equal spacing
  std::vector<double> equal;
  for (int i = 0; i < 9; ++i) equal.push_back(2.0 + 1.0 * i);
  CHECK(annihilation_residual(difference_matrix(9, 2), equal) < 1e-12);
  CHECK(annihilation_residual(difference_matrix(15, 2), grid) > 1e-3);
}

TEST_CASE("annihilator requires ordered levels") {
  CHECK_THROWS_WITH_AS(local_annihilator({1.0, 1.0, 2.0}, 1), "unordered levels", Error);
  CHECK_THROWS_WITH_AS(local_annihilator({3.0, 2.0, 1.0}, 1), "unordered levels", Error);
}

TEST_CASE("selector grammar") {
  const PenaltySelector d4 = parse_penalty_selector("d4");
  CHECK(d4.kind == PenaltyKind::difference);
  CHECK(d4.degree == 4);
  const PenaltySelector a3 = parse_penalty_selector("a3");
  CHECK(a3.kind == PenaltyKind::annihilator);
  CHECK(a3.degree == 3);
  CHECK_THROWS_AS(parse_penalty_selector("d0"), Error);
  CHECK_THROWS_AS(parse_penalty_selector("d7"), Error);
  CHECK_THROWS_AS(parse_penalty_selector("x2"), Error);
  CHECK_THROWS_AS(parse_penalty_selector("d12"), Error);
}

TEST_CASE("levels hash distinguishes grids") {
  CHECK(hash_levels({1.0, 2.0}) != hash_levels({1.0, 3.0}));
  CHECK(hash_levels({1.0, 2.0}) == hash_levels({1.0, 2.0}));
}

}  // TEST_SUITE
