#include "permgrid/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

#include "permgrid/errors.hpp"

namespace permgrid {

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::string CountSequence::to_json() const {
  nlohmann::ordered_json j;
  j["class"] = class_label;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : counts) arr.push_back(c.str());
  j["counts"] = std::move(arr);
  j["max_len"] = max_len;
  return j.dump();
}

std::string CountSequence::to_csv() const {
  std::ostringstream out;
  out << "n,count\n";
  for (std::size_t n = 0; n < counts.size(); ++n) out << n << "," << counts[n].str() << "\n";
  return out.str();
}

std::vector<char> parallel_flags(const std::vector<Permutation>& items, const LevelMembership& pred,
                                 unsigned threads) {
  std::vector<char> flags(items.size(), 0);
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(1, items.size() / 64));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) flags[i] = pred(items[i]);
    return flags;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  constexpr std::size_t kChunk = 256;
  auto work = [&] {
    try {
      while (true) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= items.size()) return;
        const std::size_t end = std::min(items.size(), begin + kChunk);
        for (std::size_t i = begin; i < end; ++i) flags[i] = pred(items[i]);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next.store(items.size());
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return flags;
}

namespace {

// Every member of a downset of length n + 1 loses its largest entry to a
// member of length n, so inserting n + 1 into each level-n member reaches the
// whole next level exactly once.
std::vector<Permutation> next_candidates(const std::vector<Permutation>& level, std::size_t n) {
  std::vector<Permutation> out;
  out.reserve(level.size() * (n + 1));
  for (const auto& p : level) {
    for (std::size_t q = 0; q <= n; ++q) out.push_back(insert_at(p, q, n + 1));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A candidate can only belong to a downset if every one-point deletion does;
// the deletion of the new maximum is the parent and always does.
LevelMembership with_deletion_filter(const std::vector<Permutation>& level, const LevelMembership& is_member) {
  return [&level, &is_member](const Permutation& p) {
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] == n) continue;
      if (!std::binary_search(level.begin(), level.end(), delete_at(p, i))) return false;
    }
    return is_member(p);
  };
}

std::vector<Permutation> select(const std::vector<Permutation>& items, const std::vector<char>& flags, bool keep) {
  std::vector<Permutation> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (static_cast<bool>(flags[i]) == keep) out.push_back(items[i]);
  }
  return out;
}

}  // namespace

Enumeration enumerate_downset(std::string label, const LevelMembership& is_member, std::size_t max_len,
                              const EnumerateOptions& options) {
  Enumeration result;
  result.sequence.class_label = std::move(label);
  std::vector<Permutation> level;
  std::size_t n = 0;
  try {
    if (is_member(Permutation{})) level.push_back(Permutation{});
    result.sequence.counts.push_back(level.size());
    if (options.keep_members) result.members.push_back(level);
    for (n = 1; n <= max_len; ++n) {
      auto candidates = next_candidates(level, n - 1);
      const auto flags = parallel_flags(candidates, with_deletion_filter(level, is_member), options.threads);
      level = select(candidates, flags, true);
      result.sequence.counts.push_back(level.size());
      if (options.keep_members) result.members.push_back(level);
    }
  } catch (const BudgetExceeded& e) {
    result.sequence.max_len = result.sequence.counts.empty() ? 0 : result.sequence.counts.size() - 1;
    throw EnumerationIncomplete(e, result.sequence);
  }
  result.sequence.max_len = max_len;
  return result;
}

Enumeration enumerate_class(const ClassExpr& expr, std::size_t max_len, const EnumerateOptions& options) {
  return enumerate_downset(
      expr.str(), [&](const Permutation& p) { return member(expr, p, CacheMode::nested_only); }, max_len, options);
}

std::vector<Permutation> find_basis(const ClassExpr& expr, std::size_t max_len, const EnumerateOptions& options) {
  if (max_len < 1) throw DomainError("max_len must be at least 1");
  auto is_member = [&](const Permutation& p) { return member(expr, p, CacheMode::nested_only); };
  if (!is_member(Permutation{})) return {Permutation{}};
  std::vector<Permutation> basis;
  std::vector<Permutation> level{Permutation{}};
  for (std::size_t n = 1; n <= max_len && !level.empty(); ++n) {
    const std::unordered_set<Permutation, PermutationHash> previous(level.begin(), level.end());
    auto candidates = next_candidates(level, n - 1);
    const auto flags = parallel_flags(candidates, with_deletion_filter(level, is_member), options.threads);
    for (const auto& p : select(candidates, flags, false)) {
      const auto deletions = one_point_deletions(p);
      if (std::all_of(deletions.begin(), deletions.end(), [&](const Permutation& q) { return previous.count(q); })) {
        basis.push_back(p);
      }
    }
    level = select(candidates, flags, true);
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

GrowthEstimate growth_estimates(const CountSequence& c, bool sum_closed_hint) {
  if (c.counts.empty()) throw DomainError("empty count sequence");
  GrowthEstimate g;
  for (std::size_t n = 0; n < c.counts.size(); ++n) {
    const auto value = c.counts[n].convert_to<double>();
    if (n == 0) {
      g.nth_roots.push_back(value > 0 ? 1.0 : 0.0);
      g.ratios.push_back(std::nullopt);
      continue;
    }
    g.nth_roots.push_back(value > 0 ? std::exp(std::log(value) / static_cast<double>(n)) : 0.0);
    if (c.counts[n - 1] == 0) {
      g.ratios.push_back(std::nullopt);
    } else {
      g.ratios.push_back(value / c.counts[n - 1].convert_to<double>());
    }
  }
  if (sum_closed_hint) g.notes.emplace_back("sum-closed: nth_roots are lower bounds on gr");
  return g;
}

std::vector<std::pair<std::size_t, std::size_t>> check_supermultiplicative(const CountSequence& c) {
  std::vector<std::pair<std::size_t, std::size_t>> violations;
  const std::size_t top = c.counts.empty() ? 0 : c.counts.size() - 1;
  for (std::size_t m = 1; 2 * m <= top; ++m) {
    for (std::size_t n = m; m + n <= top; ++n) {
      if (c.counts[m] * c.counts[n] > c.counts[m + n]) violations.emplace_back(m, n);
    }
  }
  return violations;
}

std::vector<BigInt> rational_series(const std::vector<BigInt>& numerator, const std::vector<BigInt>& denominator,
                                    std::size_t terms) {
  if (denominator.empty() || denominator[0] == 0) {
    throw DomainError("denominator must have a nonzero constant term");
  }
  std::vector<BigInt> a(terms);
  for (std::size_t k = 0; k < terms; ++k) {
    BigInt acc = k < numerator.size() ? numerator[k] : BigInt(0);
    for (std::size_t j = 1; j < denominator.size() && j <= k; ++j) acc -= denominator[j] * a[k - j];
    if (acc % denominator[0] != 0) {
      throw DomainError("series coefficient " + std::to_string(k) + " is not an integer");
    }
    a[k] = acc / denominator[0];
  }
  return a;
}

ClassComparison compare_classes(const ClassExpr& a, const ClassExpr& b, std::size_t max_len,
                                const EnumerateOptions& options) {
  ClassComparison result;
  auto in_a = [&](const Permutation& p) { return member(a, p, CacheMode::nested_only); };
  auto in_b = [&](const Permutation& p) { return member(b, p, CacheMode::nested_only); };
  const Permutation empty;
  if (in_a(empty) != in_b(empty)) {
    result.equal = false;
    result.witness = empty;
    result.witness_in_first = in_a(empty);
    return result;
  }
  std::vector<Permutation> level;
  if (in_a(empty)) level.push_back(empty);
  for (std::size_t n = 1; n <= max_len; ++n) {
    auto candidates = next_candidates(level, n - 1);
    const auto fa = parallel_flags(candidates, in_a, options.threads);
    const auto fb = parallel_flags(candidates, in_b, options.threads);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (fa[i] != fb[i]) {
        result.equal = false;
        result.witness = candidates[i];
        result.witness_in_first = fa[i];
        result.checked_through = n - 1;
        return result;
      }
    }
    level = select(candidates, fa, true);
    result.checked_through = n;
  }
  return result;
}

}  // namespace permgrid
