#include "permgrid/search_budget.hpp"

#include <atomic>

namespace permgrid {

namespace {
std::atomic<std::uint64_t> g_budget{kDefaultNodeBudget};
}

std::uint64_t default_node_budget() noexcept { return g_budget.load(std::memory_order_relaxed); }

void set_default_node_budget(std::uint64_t budget) {
  if (budget == 0) throw DomainError("node budget must be positive");
  g_budget.store(budget, std::memory_order_relaxed);
}

}  // namespace permgrid
