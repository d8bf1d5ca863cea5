#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permgrid/bigint.hpp"
#include "permgrid/class_expr.hpp"
#include "permgrid/errors.hpp"

namespace permgrid {

/// |C_n| for n = 0..max_len.
struct CountSequence {
  std::string class_label;
  std::vector<BigInt> counts;
  std::size_t max_len = 0;

  /// {"class": ..., "counts": ["1", ...], "max_len": n}
  std::string to_json() const;
  /// Header "n,count".
  std::string to_csv() const;
};

struct EnumerateOptions {
  bool keep_members = false;
  unsigned threads = 1;
};

struct Enumeration {
  CountSequence sequence;
  /// Sorted members per length; filled only with keep_members.
  std::vector<std::vector<Permutation>> members;
};

/// Thrown when a delegated search runs out of budget mid-enumeration.
class EnumerationIncomplete : public BudgetExceeded {
 public:
  EnumerationIncomplete(const BudgetExceeded& cause, CountSequence partial)
      : BudgetExceeded(cause), partial_(std::move(partial)) {}
  /// Counts through the last completed length.
  const CountSequence& partial() const noexcept { return partial_; }

 private:
  CountSequence partial_;
};

/// Predicate for a downward-closed set given level by level.
using LevelMembership = std::function<bool(const Permutation&)>;

/// Level-by-level enumeration of any downset: candidates for length n + 1
/// come from extending members of length n.
Enumeration enumerate_downset(std::string label, const LevelMembership& is_member, std::size_t max_len,
                              const EnumerateOptions& options = {});

Enumeration enumerate_class(const ClassExpr& expr, std::size_t max_len, const EnumerateOptions& options = {});

/// Minimal non-members of length <= max_len.
std::vector<Permutation> find_basis(const ClassExpr& expr, std::size_t max_len, const EnumerateOptions& options = {});

struct GrowthEstimate {
  std::vector<double> nth_roots;             ///< counts[n]^(1/n); index 0 holds 1 (0 for an empty class)
  std::vector<std::optional<double>> ratios; ///< counts[n]/counts[n-1]; unset where undefined
  std::vector<std::string> notes;
};

GrowthEstimate growth_estimates(const CountSequence& c, bool sum_closed_hint);

/// Pairs 1 <= m <= n with m + n <= max_len and counts[m]*counts[n] > counts[m+n].
std::vector<std::pair<std::size_t, std::size_t>> check_supermultiplicative(const CountSequence& c);

/// First `terms` Taylor coefficients of numerator/denominator.
std::vector<BigInt> rational_series(const std::vector<BigInt>& numerator, const std::vector<BigInt>& denominator,
                                    std::size_t terms);

struct ClassComparison {
  bool equal = true;
  std::size_t checked_through = 0;
  std::optional<Permutation> witness;  ///< shortest, then lexicographically least
  bool witness_in_first = false;
};

ClassComparison compare_classes(const ClassExpr& a, const ClassExpr& b, std::size_t max_len,
                                const EnumerateOptions& options = {});

/// Evaluates `pred` over `items` on up to `threads` threads; results are index aligned.
std::vector<char> parallel_flags(const std::vector<Permutation>& items, const LevelMembership& pred, unsigned threads);

}  // namespace permgrid
