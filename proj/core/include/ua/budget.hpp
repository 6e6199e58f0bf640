#ifndef UA_BUDGET_HPP
#define UA_BUDGET_HPP

#include <chrono>
#include <cstdint>
#include <stdexcept>

namespace ua {

// Raised on malformed inputs and violated preconditions.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SearchBudget {
  std::int64_t max_elements = 1'000'000;
  std::int64_t max_steps = 200'000'000;
  std::chrono::milliseconds wall_time{600'000};

  void check() const {
    if (max_elements <= 0 || max_steps <= 0 || wall_time.count() <= 0)
      throw input_error("budget fields must be positive");
  }
};

// Cooperative budget meter. Step and element counts are deterministic; the
// wall clock is only consulted every 1024 steps so that step-bounded runs
// stay reproducible.
class BudgetMeter {
 public:
  explicit BudgetMeter(SearchBudget b = {})
      : budget_(b), start_(std::chrono::steady_clock::now()) {
    budget_.check();
  }

  bool add_elements(std::int64_t n) {
    elements_ += n;
    if (elements_ > budget_.max_elements) exhausted_ = true;
    return !exhausted_;
  }
  bool step(std::int64_t n = 1) {
    steps_ += n;
    if (steps_ > budget_.max_steps) exhausted_ = true;
    if ((++clock_probe_ & 1023) == 0 &&
        std::chrono::steady_clock::now() - start_ > budget_.wall_time)
      exhausted_ = true;
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }
  std::int64_t elements() const { return elements_; }
  std::int64_t steps() const { return steps_; }
  const SearchBudget& budget() const { return budget_; }

 private:
  SearchBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::int64_t elements_ = 0;
  std::int64_t steps_ = 0;
  std::uint64_t clock_probe_ = 0;
  bool exhausted_ = false;
};

}  // namespace ua

#endif
