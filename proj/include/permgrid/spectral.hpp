#pragma once

// Growth-rate arithmetic for grid and staircase classes.
//
// A grid matrix M is summarized by Gamma with Gamma(row, col) = sqrt(gr(M_cell)),
// stored with grid rows as matrix rows. The growth rate of Grid(M) is the
// dominant eigenvalue of Gamma * Gamma^T.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"

namespace permgrid {

/// Non-convergence of the power iteration.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double gap) : Error(what), gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

template <typename Scalar = double>
struct ToeplitzSpec {
  Scalar sub;    ///< a
  Scalar diag;   ///< b
  Scalar super;  ///< c
  std::size_t dim = 1;
};

/// Eigenvalues b + 2 sqrt(ac) cos(j pi / (t+1)), j = 1..t, in descending order.
template <typename Scalar>
std::vector<Scalar> toeplitz_eigenvalues(const ToeplitzSpec<Scalar>& spec) {
  using std::cos;
  using std::sqrt;
  if (spec.dim < 1) throw DomainError("Toeplitz dimension must be at least 1");
  const Scalar ac = spec.sub * spec.super;
  if (ac < Scalar(0)) throw DomainError("a*c < 0 gives a complex spectrum");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  std::vector<Scalar> out;
  out.reserve(spec.dim);
  for (std::size_t j = 1; j <= spec.dim; ++j) {
    out.push_back(spec.diag +
                  Scalar(2) * sqrt(ac) * cos(Scalar(j) * pi / Scalar(spec.dim + 1)));
  }
  std::sort(out.begin(), out.end(), std::greater<Scalar>());
  return out;
}

/// Dense t x t tridiagonal Toeplitz matrix.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> toeplitz_matrix(const ToeplitzSpec<Scalar>& spec) {
  const auto t = static_cast<Eigen::Index>(spec.dim);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(t, t);
  for (Eigen::Index i = 0; i < t; ++i) {
    m(i, i) = spec.diag;
    if (i + 1 < t) {
      m(i + 1, i) = spec.sub;
      m(i, i + 1) = spec.super;
    }
  }
  return m;
}

struct PowerIterationOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100'000;
};

/// Dominant eigenvalue of Gamma * Gamma^T for an entrywise nonnegative Gamma,
/// by power iteration from the all-ones vector. Stops once the residual
/// |A x - lambda x| falls below tolerance * max(1, lambda).
template <typename Derived>
typename Derived::Scalar top_eigenvalue(const Eigen::MatrixBase<Derived>& gamma,
                                        const PowerIterationOptions& options = {}) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  if (gamma.size() == 0 || (gamma.array() == Scalar(0)).all()) {
    throw DomainError("Gamma must have a nonzero entry");
  }
  if ((gamma.array() < Scalar(0)).any()) throw DomainError("Gamma must be entrywise nonnegative");

  const Matrix a = gamma * gamma.transpose();
  Vector x = Vector::Ones(a.rows()).normalized();
  Scalar lambda = x.dot(a * x);
  Scalar gap = std::numeric_limits<Scalar>::infinity();
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    Vector y = a * x;
    lambda = x.dot(y);
    gap = (y - lambda * x).norm();
    if (gap <= Scalar(options.tolerance) * std::max(Scalar(1), lambda)) return lambda;
    const Scalar norm = y.norm();
    if (norm == Scalar(0)) return Scalar(0);
    x = y / norm;
  }
  throw ConvergenceError("power iteration did not converge; residual " + std::to_string(double(gap)),
                         static_cast<double>(gap));
}

/// Gamma for a grid matrix given per-cell growth rates (empty cells read 0).
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> gamma_matrix(
    const GridMatrix& m, const std::function<Scalar(const ClassExpr&)>& growth_rate) {
  using std::sqrt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(m.rows()),
                                                                  static_cast<Eigen::Index>(m.columns()));
  for (std::size_t k = 1; k <= m.columns(); ++k) {
    for (std::size_t l = 1; l <= m.rows(); ++l) {
      if (m.is_empty_cell(k, l)) continue;
      const Scalar gr = growth_rate(*m.cell(k, l));
      if (gr < Scalar(0)) throw DomainError("growth rates must be nonnegative");
      g(static_cast<Eigen::Index>(l - 1), static_cast<Eigen::Index>(k - 1)) = sqrt(gr);
    }
  }
  return g;
}

/// Gamma of a t-step staircase from the two growth rates, laid out as the builder lays out cells.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> staircase_gamma(StaircaseKind kind, Scalar gr_c, Scalar gr_d,
                                                                      std::size_t steps) {
  using std::sqrt;
  if (gr_c < Scalar(0) || gr_d < Scalar(0)) throw DomainError("growth rates must be nonnegative");
  // Placeholder classes; only the layout matters here.
  const ClassExpr c = ClassExpr::avoid({Permutation{2, 1}});
  const ClassExpr d = ClassExpr::avoid({Permutation{1, 2}});
  const GridMatrix m = kind == StaircaseKind::increasing ? build_increasing_staircase(c, d, steps)
                                                         : build_spiral_staircase(c, d, steps);
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(static_cast<Eigen::Index>(m.rows()),
                                                                  static_cast<Eigen::Index>(m.columns()));
  const auto path = m.path();
  for (std::size_t i = 0; i < path.size(); ++i) {
    g(static_cast<Eigen::Index>(path[i].row - 1), static_cast<Eigen::Index>(path[i].column - 1)) =
        sqrt(i % 2 == 0 ? gr_c : gr_d);
  }
  return g;
}

/// gr(C) + 2 sqrt(gr(C) gr(D)) cos(pi / (t+1)) + gr(D).
template <typename Scalar>
Scalar t_step_staircase_gr(Scalar gr_c, Scalar gr_d, std::size_t steps) {
  using std::cos;
  using std::sqrt;
  if (gr_c < Scalar(0) || gr_d < Scalar(0)) throw DomainError("growth rates must be nonnegative");
  if (steps < 1) throw DomainError("a staircase needs at least one step");
  return (gr_c + gr_d) + Scalar(2) * sqrt(gr_c * gr_d) * cos(std::numbers::pi_v<Scalar> / Scalar(steps + 1));
}

/// (sqrt(gr(C)) + sqrt(gr(D)))^2.
template <typename Scalar>
Scalar merge_gr_bound(Scalar gr_c, Scalar gr_d) {
  using std::sqrt;
  if (gr_c < Scalar(0) || gr_d < Scalar(0)) throw DomainError("growth rates must be nonnegative");
  const Scalar s = sqrt(gr_c) + sqrt(gr_d);
  return s * s;
}

/// Fixed 12-significant-digit rendering used for every real output.
std::string format_real(double value);

}  // namespace permgrid
