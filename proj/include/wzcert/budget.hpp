#pragma once

#include <cstdint>
#include <string>

namespace wzcert {

/// Operation budget for one job. Expensive loops charge it; exceeding the
/// limit throws BudgetExceeded. A limit of 0 means unlimited.
class Budget {
 public:
  explicit Budget(std::uint64_t limit = 0) : limit_(limit) {}

  void charge(std::uint64_t ops, const char* where);
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
};

/// Installs a budget for the current thread for the lifetime of the scope.
class BudgetScope {
 public:
  explicit BudgetScope(Budget& budget);
  ~BudgetScope();
  BudgetScope(const BudgetScope&) = delete;
  BudgetScope& operator=(const BudgetScope&) = delete;

 private:
  Budget* previous_;
};

/// Charges the current thread's budget, if any.
void charge_budget(std::uint64_t ops, const char* where);

}  // namespace wzcert
