#pragma once

// Slow, independent reference implementations. Each one avoids the search
// code it is used to check.

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "permgrid/bigint.hpp"
#include "permgrid/class_expr.hpp"
#include "permgrid/grid.hpp"
#include "permgrid/permutation.hpp"

namespace permgrid::oracle {

using BigRational = boost::multiprecision::cpp_rational;

/// Ranks of a sequence of distinct integers, 1-based.
std::vector<int> normalize(const std::vector<int>& seq);

/// Tries every subsequence of the host of the pattern's length.
bool naive_contains(const Permutation& pattern, const Permutation& host);

/// All n! permutations via std::next_permutation.
std::vector<Permutation> naive_permutations(std::size_t n);

/// Membership for avoidance classes and finite sets only; anything else throws.
bool naive_member(const ClassExpr& c, const std::vector<int>& seq);

/// All 2^n colorings.
bool naive_merge_member(const ClassExpr& c, const ClassExpr& d, const Permutation& p);

/// Every pair of column and row division sequences.
bool naive_gridding_exists(const GridMatrix& m, const Permutation& p);

/// C_0..C_n by C_{k+1} = sum_i C_i C_{k-i}.
std::vector<BigInt> catalan(std::size_t n);

/// F_1, F_1, F_3, F_5, ...: the first `terms` coefficients of (1-2x)/(1-3x+x^2).
std::vector<BigInt> odd_fibonacci(std::size_t terms);

/// Schoolbook long division of power series over the rationals.
std::vector<BigRational> series_long_division(const std::vector<BigInt>& numerator,
                                              const std::vector<BigInt>& denominator, std::size_t terms);

/// Every pair (m, n) with 1 <= m <= n, m + n <= top, counts[m]*counts[n] > counts[m+n].
std::vector<std::pair<std::size_t, std::size_t>> supermultiplicative_violations(const std::vector<BigInt>& counts);

/// Largest eigenvalue of gamma * gamma^T by a dense symmetric eigensolver.
double dense_top_eigenvalue(const Eigen::MatrixXd& gamma);

/// All eigenvalues of a symmetric matrix, descending.
std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& symmetric);

}  // namespace permgrid::oracle
