#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "permgrid/bigint.hpp"
#include "permgrid/class_expr.hpp"
#include "permgrid/enumerator.hpp"

namespace permgrid {

enum class Color : unsigned char { red, blue };

/// One color per entry of the host; red entries go to the left class.
struct Coloring {
  std::vector<Color> labels;

  /// "R"/"B" string aligned with the host, e.g. "RBB".
  std::string str() const;
  static Coloring parse(std::string_view text);
};

/// Left-to-right two-coloring search with prefix pruning. Throws BudgetExceeded.
std::optional<Coloring> merge_coloring(const ClassExpr& c, const ClassExpr& d, const Permutation& p,
                                       CacheMode mode = CacheMode::full);

inline bool merge_member(const ClassExpr& c, const ClassExpr& d, const Permutation& p,
                         CacheMode mode = CacheMode::full) {
  return merge_coloring(c, d, p, mode).has_value();
}

/// True iff the coloring is aligned with p and both color classes are members.
bool validate_coloring(const ClassExpr& c, const ClassExpr& d, const Permutation& p, const Coloring& coloring);

/// sum_i binom(n,i)^2 |C_i| |D_{n-i}|.
BigInt merge_upper_bound(const CountSequence& c_counts, const CountSequence& d_counts, std::size_t n);

struct Prop2Row {
  std::size_t n = 0;
  BigInt upper_bound_sum;  ///< left side: sum_i binom(n,i)^2 |C_i||D_{n-i}|
  BigInt merge_count;      ///< |(C merge D)_n|
  BigInt binomial_sum;     ///< sum_{i <= 2m} binom(n,i)
  BigInt right;            ///< merge_count * binomial_sum
  bool holds = false;
};

/// Checks sum_i binom(n,i)^2 |C_i||D_{n-i}| <= |(C merge D)_n| * sum_{i<=2m} binom(n,i)
/// for every n <= max_len. Throws DomainError if the classes share a
/// permutation longer than m.
std::vector<Prop2Row> prop2_inequality_check(const ClassExpr& c, const ClassExpr& d, std::size_t m,
                                             std::size_t max_len, const EnumerateOptions& options = {});

}  // namespace permgrid
