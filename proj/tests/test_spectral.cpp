#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "permgrid/checks/oracles.hpp"
#include "permgrid/spectral.hpp"

using namespace permgrid;

TEST_CASE("toeplitz eigenvalues") {
  const auto one = toeplitz_eigenvalues(ToeplitzSpec<double>{1, 2, 1, 1});
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(2.0));
  const auto two = toeplitz_eigenvalues(ToeplitzSpec<double>{1, 0, 1, 2});
  CHECK(two[0] == doctest::Approx(1.0));
  CHECK(two[1] == doctest::Approx(-1.0));
  const auto three = toeplitz_eigenvalues(ToeplitzSpec<double>{1, 2, 1, 3});
  CHECK(three[0] == doctest::Approx(2 + std::sqrt(2.0)));
  CHECK(three[1] == doctest::Approx(2.0));
  CHECK(three[2] == doctest::Approx(2 - std::sqrt(2.0)));
  CHECK_THROWS_AS(toeplitz_eigenvalues(ToeplitzSpec<double>{-1, 0, 1, 3}), DomainError);
  CHECK_THROWS_AS(toeplitz_eigenvalues(ToeplitzSpec<double>{1, 0, 1, 0}), DomainError);
}

TEST_CASE("property: closed form matches a dense eigensolver") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (std::size_t t = 1; t <= 30; ++t) {
    const ToeplitzSpec<double> spec{u(rng), u(rng) - 1.5, u(rng), t};
    const auto closed = toeplitz_eigenvalues(spec);
    // a and c have equal sign, so the matrix is similar to a symmetric one with off-diagonal sqrt(ac).
    const double s = std::sqrt(spec.sub * spec.super);
    const auto dense = oracle::dense_eigenvalues(toeplitz_matrix(ToeplitzSpec<double>{s, spec.diag, s, t}));
    REQUIRE(dense.size() == t);
    for (std::size_t j = 0; j < t; ++j) CHECK(closed[j] == doctest::Approx(dense[j]).epsilon(1e-9));
  }
}

TEST_CASE("top eigenvalue") {
  Eigen::MatrixXd ones(1, 2);
  ones << 1, 1;
  CHECK(top_eigenvalue(ones) == doctest::Approx(2.0));
  Eigen::MatrixXd single(1, 1);
  single << 3;
  CHECK(top_eigenvalue(single) == doctest::Approx(9.0));
  CHECK_THROWS_AS(top_eigenvalue(Eigen::MatrixXd::Zero(2, 2)), DomainError);
  Eigen::MatrixXd negative(1, 2);
  negative << 1, -1;
  CHECK_THROWS_AS(top_eigenvalue(negative), DomainError);
  Eigen::MatrixXd slow(2, 2);
  slow << 1, 0, 0, 0.99;
  CHECK_THROWS_AS(top_eigenvalue(slow, PowerIterationOptions{1e-12, 1}), ConvergenceError);
}

TEST_CASE("property: top eigenvalue matches the dense solver and ignores row and column order") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::MatrixXd g(4, 3);
    for (Eigen::Index i = 0; i < g.rows(); ++i)
      for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = u(rng);
    const double top = top_eigenvalue(g);
    CHECK(top == doctest::Approx(oracle::dense_top_eigenvalue(g)).epsilon(1e-9));
    Eigen::PermutationMatrix<Eigen::Dynamic> rp(4), cp(3);
    rp.setIdentity();
    cp.setIdentity();
    std::shuffle(rp.indices().data(), rp.indices().data() + 4, rng);
    std::shuffle(cp.indices().data(), cp.indices().data() + 3, rng);
    const Eigen::MatrixXd shuffled = rp * g * cp;
    CHECK(top_eigenvalue(shuffled) == doctest::Approx(top).epsilon(1e-9));
  }
}

TEST_CASE("staircase growth rates") {
  CHECK(t_step_staircase_gr(1.0, 1.0, 1) == 2.0 + 2.0 * std::cos(std::numbers::pi / 2.0));
  CHECK(t_step_staircase_gr(1.0, 1.0, 2) == doctest::Approx(3.0));
  CHECK(t_step_staircase_gr(2.0, 0.0, 5) == 2.0);
  double previous = 0;
  for (std::size_t t = 1; t <= 200; ++t) {
    const double v = t_step_staircase_gr(1.0, 1.0, t);
    CHECK(v > previous);
    previous = v;
  }
  CHECK_THROWS_AS(t_step_staircase_gr(1.0, 1.0, 0), DomainError);
  CHECK_THROWS_AS(t_step_staircase_gr(-1.0, 1.0, 3), DomainError);
}

TEST_CASE("property: staircase gamma reproduces the t-step formula") {
  for (std::size_t t = 1; t <= 20; ++t) {
    for (const auto kind : {StaircaseKind::increasing, StaircaseKind::spiral}) {
      const Eigen::MatrixXd g = staircase_gamma<double>(kind, 2.0, 3.0, t);
      CHECK(top_eigenvalue(g) == doctest::Approx(t_step_staircase_gr(2.0, 3.0, t)).epsilon(1e-9));
    }
  }
}

TEST_CASE("merge growth bound") {
  CHECK(merge_gr_bound(1.0, 1.0) == 4.0);
  CHECK(merge_gr_bound(1.0, 8.0) == doctest::Approx(9 + 4 * std::sqrt(2.0)));
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = u(rng);
    const double y = trial % 10 == 0 ? 0.0 : u(rng);
    const double b = merge_gr_bound(x, y);
    if (y == 0.0) {
      CHECK(b == doctest::Approx(x));
    } else {
      CHECK(b > x + y);
    }
  }
}

TEST_CASE("gamma matrix") {
  const auto m = parse_class_expr("grid([[Av(12),E],[Av(21),Av(321)]])").matrix();
  const auto g = gamma_matrix<double>(m, [](const ClassExpr& c) { return c.str() == "Av(321)" ? 4.0 : 1.0; });
  REQUIRE(g.rows() == 2);
  REQUIRE(g.cols() == 2);
  CHECK(g(0, 0) == 1.0);
  CHECK(g(0, 1) == 2.0);
  CHECK(g(1, 0) == 1.0);
  CHECK(g(1, 1) == 0.0);
}

TEST_CASE("real formatting") {
  CHECK(format_real(2.0) == "2");
  CHECK(format_real(std::sqrt(2.0)) == "1.41421356237");
  CHECK(format_real(0.1 + 0.2) == "0.3");
}
