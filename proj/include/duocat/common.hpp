#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace duocat {

using Id = std::int32_t;
inline constexpr Id kNone = -1;

inline constexpr long long kDefaultBudget = 10'000'000;

/// Counts candidate checks in exhaustive searches. Exceeding the limit is a
/// hard error, never a silent truncation.
class BudgetError;

struct Budget {
  long long limit = kDefaultBudget;
  long long used = 0;

  explicit Budget(long long lim = kDefaultBudget) : limit(lim) {}

  void charge(long long n = 1);
};

struct Issue {
  std::string code;
  std::string detail;
};

/// Outcome of a validation or theorem check: ok() iff no issues were recorded.
struct Report {
  std::string subject;
  std::vector<Issue> issues;

  bool ok() const { return issues.empty(); }
  void add(std::string code, std::string detail) {
    issues.push_back({std::move(code), std::move(detail)});
  }
  void merge(const Report& other) {
    issues.insert(issues.end(), other.issues.begin(), other.issues.end());
  }
  std::string summary() const;
};

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError: " + what) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(Report report)
      : Error("ValidationError: " + report.summary()), report_(std::move(report)) {}
  const Report& report() const { return report_; }

 private:
  Report report_;
};

class BudgetError : public Error {
 public:
  explicit BudgetError(long long estimate)
      : Error("BudgetExceeded: estimated " + std::to_string(estimate) + " candidate checks"),
        estimate_(estimate) {}
  long long estimate() const { return estimate_; }

 private:
  long long estimate_ = 0;
};

inline void Budget::charge(long long n) {
  used += n;
  if (used > limit) throw BudgetError(used);
}

}  // namespace duocat
