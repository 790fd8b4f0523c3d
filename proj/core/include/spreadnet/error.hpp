#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace spreadnet {

enum class ErrorCode {
  InvalidNet,
  NotEnabled,
  UnsafeFiring,
  UnsafeNet,
  NotAnMcNet,
  WordTooLong,
  LetterOutsideAlphabet,
  NotARun,
  KNotInJ,
  MissingClock,
  TableMiss,
  DimensionMismatch,
  NonInjectiveInputLabels,
  NotComposable,
  MalformedMode,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// A single failed condition, e.g. {"axiom-3", "t=u{...} place c(su,u)"}.
struct Violation {
  std::string rule;
  std::string detail;

  bool operator==(const Violation&) const = default;
};

// Outcome of the structural checkers. Checkers never throw on a failed
// condition; they collect every violation they find.
struct Verdict {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  explicit operator bool() const { return ok(); }

  void add(std::string rule, std::string detail) {
    violations.push_back({std::move(rule), std::move(detail)});
  }
  void merge(const Verdict& other) {
    violations.insert(violations.end(), other.violations.begin(),
                      other.violations.end());
  }
  bool has_rule(std::string_view rule) const;
  std::string to_string() const;
};

}  // namespace spreadnet
