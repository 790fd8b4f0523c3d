#include "spreadnet/error.hpp"

#include <algorithm>

namespace spreadnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidNet: return "InvalidNet";
    case ErrorCode::NotEnabled: return "NotEnabled";
    case ErrorCode::UnsafeFiring: return "UnsafeFiring";
    case ErrorCode::UnsafeNet: return "UnsafeNet";
    case ErrorCode::NotAnMcNet: return "NotAnMcNet";
    case ErrorCode::WordTooLong: return "WordTooLong";
    case ErrorCode::LetterOutsideAlphabet: return "LetterOutsideAlphabet";
    case ErrorCode::NotARun: return "NotARun";
    case ErrorCode::KNotInJ: return "KNotInJ";
    case ErrorCode::MissingClock: return "MissingClock";
    case ErrorCode::TableMiss: return "TableMiss";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonInjectiveInputLabels: return "NonInjectiveInputLabels";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::MalformedMode: return "MalformedMode";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(spreadnet::to_string(code)) + ": " + what),
      code_(code) {}

bool Verdict::has_rule(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string Verdict::to_string() const {
  std::string out;
  for (const auto& v : violations) {
    out += v.rule;
    out += ": ";
    out += v.detail;
    out += '\n';
  }
  return out;
}

}  // namespace spreadnet
