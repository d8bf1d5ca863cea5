#pragma once

#include <cstdint>

#include "permgrid/errors.hpp"

namespace permgrid {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

/// Process-wide budget applied to each merge-coloring or gridding search.
std::uint64_t default_node_budget() noexcept;
void set_default_node_budget(std::uint64_t budget);

/// Counts search nodes for one top-level search and throws once the budget is spent.
class NodeCounter {
 public:
  explicit NodeCounter(std::uint64_t budget = default_node_budget()) noexcept : budget_(budget) {}

  void tick() {
    if (++used_ > budget_) throw BudgetExceeded(budget_);
  }
  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

}  // namespace permgrid
