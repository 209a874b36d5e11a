#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace cover {

enum class ErrorKind {
  NotAGroup,
  OrderCapExceeded,
  SearchBudgetExceeded,
  NotNormal,
  TypeMismatch,
  NotFundamental,
  DecompositionFailed,
  NotAbelianKernel,
  NotElementaryAbelian,
  NotSimple,
  ModuleMismatch,
  BaseMismatch,
  IterationCapExceeded,
  ConditionAViolated,
  ConditionBViolated,
  NonCommuting,
  InvalidArgument,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::DecompositionFailed: return "DecompositionFailed";
    case ErrorKind::NotAbelianKernel: return "NotAbelianKernel";
    case ErrorKind::NotElementaryAbelian: return "NotElementaryAbelian";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::ModuleMismatch: return "ModuleMismatch";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::ConditionAViolated: return "ConditionAViolated";
    case ErrorKind::ConditionBViolated: return "ConditionBViolated";
    case ErrorKind::NonCommuting: return "NonCommuting";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class CoverError : public std::runtime_error {
 public:
  CoverError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

  // Cap and budget overruns are resource limits, not mathematical outcomes.
  bool is_cap() const noexcept {
    return kind_ == ErrorKind::OrderCapExceeded || kind_ == ErrorKind::SearchBudgetExceeded ||
           kind_ == ErrorKind::IterationCapExceeded;
  }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw CoverError(kind, what); }

// Resource limits threaded through every search.
struct Limits {
  std::size_t max_order = 512;
  std::uint64_t search_budget = 10'000'000;  // candidate extensions per search
  int max_iters = 32;                        // smallest-embedding-cover loop steps

  // Default limits with COVER_MAX_ORDER applied when set.
  static Limits from_env() {
    Limits lim;
    if (const char* v = std::getenv("COVER_MAX_ORDER"); v != nullptr && *v != '\0') {
      char* end = nullptr;
      unsigned long long n = std::strtoull(v, &end, 10);
      if (end != v && *end == '\0' && n > 0) lim.max_order = static_cast<std::size_t>(n);
    }
    return lim;
  }
};

inline void check_order_cap(std::size_t order, const Limits& lim, const std::string& what) {
  if (order > lim.max_order)
    fail(ErrorKind::OrderCapExceeded,
         what + " has order " + std::to_string(order) + " > cap " + std::to_string(lim.max_order));
}

// Counts candidate extensions for one search and throws once the budget is spent.
class SearchCounter {
 public:
  explicit SearchCounter(std::uint64_t budget) : budget_(budget) {}

  void tick(const char* where) {
    if (++used_ > budget_)
      fail(ErrorKind::SearchBudgetExceeded,
           std::string(where) + " exceeded " + std::to_string(budget_) + " candidates");
  }
  std::uint64_t used() const noexcept { return used_; }

 private:
  std::uint64_t budget_;
  std::uint64_t used_ = 0;
};

}  // namespace cover
