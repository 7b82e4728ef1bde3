#ifndef KGRAPH_ERROR_HPP
#define KGRAPH_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace kgraph {

enum class Errc {
  InvalidSkeleton,
  DegreeMismatch,
  MissingSquare,
  NotBijective,
  EndpointMismatch,
  HexagonViolation,
  NotComposable,
  DegreeOutOfRange,
  UnboundedEnumeration,
  BadParams,
  RangeMismatch,
  NotInDomain,
  NotOrthogonal,
  BudgetExhausted,
  UnknownId,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidSkeleton: return "InvalidSkeleton";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::MissingSquare: return "MissingSquare";
    case Errc::NotBijective: return "NotBijective";
    case Errc::EndpointMismatch: return "EndpointMismatch";
    case Errc::HexagonViolation: return "HexagonViolation";
    case Errc::NotComposable: return "NotComposable";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::UnboundedEnumeration: return "UnboundedEnumeration";
    case Errc::BadParams: return "BadParams";
    case Errc::RangeMismatch: return "RangeMismatch";
    case Errc::NotInDomain: return "NotInDomain";
    case Errc::NotOrthogonal: return "NotOrthogonal";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::UnknownId: return "UnknownId";
    case Errc::ParseError: return "ParseError";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Searches over infinite spaces report Unknown instead of guessing.
enum class Verdict { Holds, Fails, Unknown };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Unknown: return "unknown";
  }
  return "?";
}

// Fails dominates Unknown dominates Holds.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::Fails || b == Verdict::Fails) return Verdict::Fails;
  if (a == Verdict::Unknown || b == Verdict::Unknown) return Verdict::Unknown;
  return Verdict::Holds;
}

}  // namespace kgraph

#endif
