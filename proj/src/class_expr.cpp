#include "permgrid/class_expr.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <variant>

#include "permgrid/errors.hpp"
#include "permgrid/grid.hpp"
#include "permgrid/merge.hpp"

namespace permgrid {

namespace detail {

/// Memoized membership answers for one class identity.
class MembershipCache {
 public:
  static constexpr std::size_t kMaxEntries = std::size_t{1} << 22;

  std::optional<bool> find(const Permutation& p) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(p);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const Permutation& p, bool value) {
    std::unique_lock lock(mutex_);
    // Entries are deterministic, so dropping them only costs recomputation.
    if (map_.size() >= kMaxEntries) map_.clear();
    map_.insert_or_assign(p, value);
  }

  void clear() {
    std::unique_lock lock(mutex_);
    map_.clear();
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<Permutation, bool, PermutationHash> map_;
};

namespace {

struct CacheRegistry {
  std::mutex mutex;
  std::unordered_map<std::string, std::shared_ptr<MembershipCache>> caches;

  std::shared_ptr<MembershipCache> get(const std::string& key) {
    std::lock_guard lock(mutex);
    auto& slot = caches[key];
    if (!slot) slot = std::make_shared<MembershipCache>();
    return slot;
  }
};

CacheRegistry& registry() {
  static CacheRegistry r;
  return r;
}

}  // namespace

struct AvoidPayload {
  std::vector<Permutation> basis;
};
struct MergePayload {
  ClassExpr left;
  ClassExpr right;
};
struct GridPayload {
  std::shared_ptr<const GridMatrix> matrix;
};
struct FiniteSetPayload {
  std::vector<Permutation> members;
};
struct ClosurePayload {
  ClassExpr inner;
};
struct IntersectionPayload {
  std::vector<ClassExpr> parts;
};

struct ClassNode {
  ClassKind kind;
  std::variant<AvoidPayload, MergePayload, GridPayload, FiniteSetPayload, ClosurePayload, IntersectionPayload>
      payload;
  std::string canonical;
  std::shared_ptr<MembershipCache> cache;
};

}  // namespace detail

using detail::ClassNode;

std::string dsl_perm(const Permutation& p) {
  if (p.empty()) return "e";
  if (p.size() <= 9) return p.str();
  return "[" + p.comma_str() + "]";
}

namespace {

std::string perm_list(std::span<const Permutation> perms) {
  std::string s;
  bool first = true;
  for (const auto& p : perms) {
    if (!first) s += ",";
    s += dsl_perm(p);
    first = false;
  }
  return s;
}

template <typename Payload>
const Payload& payload_of(const ClassNode& node, const char* what) {
  if (const auto* p = std::get_if<Payload>(&node.payload)) return *p;
  throw DomainError(std::string("class expression is not ") + what + ": " + node.canonical);
}

}  // namespace

ClassExpr ClassExpr::make(ClassNode node) {
  node.cache = detail::registry().get(node.canonical);
  return ClassExpr(std::make_shared<const ClassNode>(std::move(node)));
}

ClassExpr ClassExpr::avoid(std::vector<Permutation> basis) {
  std::sort(basis.begin(), basis.end());
  basis.erase(std::unique(basis.begin(), basis.end()), basis.end());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (contains(basis[i], basis[j])) {
        throw ValidationError("basis is not an antichain: " + dsl_perm(basis[i]) + " is contained in " +
                              dsl_perm(basis[j]));
      }
    }
  }
  std::string canonical = "Av(" + perm_list(basis) + ")";
  return make({ClassKind::avoid, detail::AvoidPayload{std::move(basis)}, std::move(canonical), nullptr});
}

ClassExpr ClassExpr::merge(ClassExpr left, ClassExpr right) {
  std::string canonical = "merge(" + left.str() + "," + right.str() + ")";
  return make({ClassKind::merge, detail::MergePayload{std::move(left), std::move(right)}, std::move(canonical),
               nullptr});
}

ClassExpr ClassExpr::grid(GridMatrix matrix) {
  std::string canonical = matrix.str();
  return make({ClassKind::grid, detail::GridPayload{std::make_shared<const GridMatrix>(std::move(matrix))},
               std::move(canonical), nullptr});
}

ClassExpr ClassExpr::finite_set(std::vector<Permutation> members) {
  if (!members.empty()) members.push_back(Permutation{});
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  for (const auto& p : members) {
    for (const auto& q : one_point_deletions(p)) {
      if (!std::binary_search(members.begin(), members.end(), q)) {
        throw ValidationError("finite set is not downward closed: " + dsl_perm(p) + " is listed but " +
                              dsl_perm(q) + " is not");
      }
    }
  }
  std::string canonical;
  if (members.size() == 1) {
    canonical = "set(e)";
  } else {
    canonical = "set(" + perm_list(std::span<const Permutation>(members).subspan(members.empty() ? 0 : 1)) + ")";
  }
  return make({ClassKind::finite_set, detail::FiniteSetPayload{std::move(members)}, std::move(canonical), nullptr});
}

ClassExpr ClassExpr::sum_closure(ClassExpr inner) {
  std::string canonical = "sumclose(" + inner.str() + ")";
  return make({ClassKind::sum_closure, detail::ClosurePayload{std::move(inner)}, std::move(canonical), nullptr});
}

ClassExpr ClassExpr::skew_closure(ClassExpr inner) {
  std::string canonical = "skewclose(" + inner.str() + ")";
  return make({ClassKind::skew_closure, detail::ClosurePayload{std::move(inner)}, std::move(canonical), nullptr});
}

ClassExpr ClassExpr::intersection(std::vector<ClassExpr> parts) {
  if (parts.empty()) throw ValidationError("intersection needs at least one class");
  std::string canonical = "inter(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) canonical += ",";
    canonical += parts[i].str();
  }
  canonical += ")";
  return make({ClassKind::intersection, detail::IntersectionPayload{std::move(parts)}, std::move(canonical),
               nullptr});
}

ClassKind ClassExpr::kind() const noexcept { return node_->kind; }
const std::string& ClassExpr::str() const noexcept { return node_->canonical; }

std::span<const Permutation> ClassExpr::basis() const {
  return payload_of<detail::AvoidPayload>(*node_, "an avoidance class").basis;
}
std::span<const Permutation> ClassExpr::members() const {
  return payload_of<detail::FiniteSetPayload>(*node_, "a finite set").members;
}
const ClassExpr& ClassExpr::left() const { return payload_of<detail::MergePayload>(*node_, "a merge").left; }
const ClassExpr& ClassExpr::right() const { return payload_of<detail::MergePayload>(*node_, "a merge").right; }
const ClassExpr& ClassExpr::inner() const { return payload_of<detail::ClosurePayload>(*node_, "a closure").inner; }
std::span<const ClassExpr> ClassExpr::parts() const {
  return payload_of<detail::IntersectionPayload>(*node_, "an intersection").parts;
}
const GridMatrix& ClassExpr::matrix() const { return *payload_of<detail::GridPayload>(*node_, "a grid").matrix; }

bool ClassExpr::is_trivially_empty_cell() const noexcept {
  if (node_->kind != ClassKind::finite_set) return false;
  return std::get<detail::FiniteSetPayload>(node_->payload).members.size() <= 1;
}

namespace {

CacheMode nested(CacheMode mode) { return mode == CacheMode::off ? CacheMode::off : CacheMode::full; }

bool evaluate(const ClassExpr& expr, const Permutation& p, CacheMode mode) {
  const CacheMode sub = nested(mode);
  switch (expr.kind()) {
    case ClassKind::avoid:
      return std::none_of(expr.basis().begin(), expr.basis().end(),
                          [&](const Permutation& b) { return contains(b, p); });
    case ClassKind::finite_set:
      return std::binary_search(expr.members().begin(), expr.members().end(), p);
    case ClassKind::merge:
      return merge_member(expr.left(), expr.right(), p, sub);
    case ClassKind::grid:
      return gridding_exists(expr.matrix(), p, sub).has_value();
    case ClassKind::sum_closure:
    case ClassKind::skew_closure: {
      if (p.empty()) return member(expr.inner(), p, sub);
      const auto parts = expr.kind() == ClassKind::sum_closure ? sum_decompose(p) : skew_decompose(p);
      return std::all_of(parts.begin(), parts.end(),
                         [&](const Permutation& part) { return member(expr.inner(), part, sub); });
    }
    case ClassKind::intersection:
      return std::all_of(expr.parts().begin(), expr.parts().end(),
                         [&](const ClassExpr& part) { return member(part, p, sub); });
  }
  return false;
}

// Only the search-backed kinds are worth memoizing.
bool cacheable(ClassKind kind) { return kind == ClassKind::merge || kind == ClassKind::grid; }

}  // namespace

bool member(const ClassExpr& expr, const Permutation& p, CacheMode mode) {
  if (mode != CacheMode::full || !cacheable(expr.kind())) return evaluate(expr, p, mode);
  auto& cache = *expr.node().cache;
  if (auto hit = cache.find(p)) return *hit;
  const bool result = evaluate(expr, p, mode);
  cache.insert(p, result);
  return result;
}

void clear_membership_caches() {
  auto& r = detail::registry();
  std::lock_guard lock(r.mutex);
  for (auto& [key, cache] : r.caches) cache->clear();
}

std::size_t membership_cache_size() {
  auto& r = detail::registry();
  std::lock_guard lock(r.mutex);
  std::size_t total = 0;
  for (auto& [key, cache] : r.caches) total += cache->size();
  return total;
}

IntersectionLength max_intersection_length(const ClassExpr& a, const ClassExpr& b, std::size_t cutoff) {
  if (cutoff < 1) throw DomainError("cutoff must be at least 1");
  const auto both = ClassExpr::intersection({a, b});
  const auto counts = enumerate_class(both, cutoff).sequence.counts;
  IntersectionLength result;
  if (counts[0] == 0) {
    result.empty = true;
    return result;
  }
  if (counts[cutoff] != 0) {
    result.exceeds_cutoff = true;
    result.length = cutoff;
    return result;
  }
  for (std::size_t n = 0; n <= cutoff; ++n) {
    if (counts[n] != 0) result.length = n;
  }
  return result;
}

}  // namespace permgrid
