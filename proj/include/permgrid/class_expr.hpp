#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "permgrid/permutation.hpp"

namespace permgrid {

class GridMatrix;

namespace detail {
struct ClassNode;
}

enum class ClassKind { avoid, merge, grid, finite_set, sum_closure, skew_closure, intersection };

/// An immutable expression denoting a permutation class. Copies share the
/// underlying tree; equality is equality of canonical printed forms.
class ClassExpr {
 public:
  /// Throws ValidationError if the basis is not an antichain.
  static ClassExpr avoid(std::vector<Permutation> basis);
  static ClassExpr merge(ClassExpr left, ClassExpr right);
  static ClassExpr grid(GridMatrix matrix);
  /// A nonempty member list implicitly contains ε. Throws ValidationError
  /// unless the members are downward closed.
  static ClassExpr finite_set(std::vector<Permutation> members);
  static ClassExpr sum_closure(ClassExpr inner);
  static ClassExpr skew_closure(ClassExpr inner);
  static ClassExpr intersection(std::vector<ClassExpr> parts);

  ClassKind kind() const noexcept;
  /// Canonical DSL form; also the class identity for caching.
  const std::string& str() const noexcept;

  std::span<const Permutation> basis() const;     ///< avoid
  std::span<const Permutation> members() const;   ///< finite_set, sorted, ε first
  const ClassExpr& left() const;                   ///< merge
  const ClassExpr& right() const;                  ///< merge
  const ClassExpr& inner() const;                  ///< sum_closure, skew_closure
  std::span<const ClassExpr> parts() const;        ///< intersection
  const GridMatrix& matrix() const;                ///< grid

  /// True for a finite set with no member other than ε.
  bool is_trivially_empty_cell() const noexcept;

  const detail::ClassNode& node() const noexcept { return *node_; }

  friend bool operator==(const ClassExpr& a, const ClassExpr& b) noexcept { return a.str() == b.str(); }

 private:
  explicit ClassExpr(std::shared_ptr<const detail::ClassNode> node) : node_(std::move(node)) {}
  static ClassExpr make(detail::ClassNode node);

  std::shared_ptr<const detail::ClassNode> node_;
};

/// How membership results are memoized.
enum class CacheMode {
  full,         ///< read and write the cache at every node
  nested_only,  ///< skip the cache for this call, use it for delegated subqueries
  off,          ///< fresh evaluation throughout
};

/// Membership oracle. Merge and grid nodes delegate to the coloring and
/// gridding searches and may throw BudgetExceeded.
bool member(const ClassExpr& expr, const Permutation& p, CacheMode mode = CacheMode::full);

inline bool member_uncached(const ClassExpr& expr, const Permutation& p) {
  return member(expr, p, CacheMode::off);
}

/// Drops every memoized membership result.
void clear_membership_caches();
/// Total number of memoized entries across all classes.
std::size_t membership_cache_size();

struct IntersectionLength {
  bool exceeds_cutoff = false;  ///< some permutation of length `cutoff` lies in both
  bool empty = false;           ///< not even ε lies in both
  std::size_t length = 0;       ///< longest common length when neither flag is set
};

/// Longest permutation (up to `cutoff`) lying in both classes.
IntersectionLength max_intersection_length(const ClassExpr& a, const ClassExpr& b, std::size_t cutoff);

/// Parses the class DSL; throws ParseError (with position) or ValidationError.
ClassExpr parse_class_expr(std::string_view text);

/// Permutation as written inside the DSL: digits for n <= 9, "[a,b,...]"
/// otherwise, "e" for ε.
std::string dsl_perm(const Permutation& p);

}  // namespace permgrid
