#include "wzcert/budget.hpp"

#include "wzcert/errors.hpp"

namespace wzcert {

namespace {
thread_local Budget* current_budget = nullptr;
}

void Budget::charge(std::uint64_t ops, const char* where) {
  used_ += ops;
  if (limit_ != 0 && used_ > limit_) {
    throw BudgetExceeded(std::string("budget of ") + std::to_string(limit_) + " operations exceeded in " + where);
  }
}

BudgetScope::BudgetScope(Budget& budget) : previous_(current_budget) { current_budget = &budget; }

BudgetScope::~BudgetScope() { current_budget = previous_; }

void charge_budget(std::uint64_t ops, const char* where) {
  if (current_budget != nullptr) current_budget->charge(ops, where);
}

}  // namespace wzcert
