#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parabolic {

enum class ErrorCode {
  KindMismatch,
  CompositionBase,
  NotInvertible,
  DimMismatch,
  NotParabolicBlockForm,
  DegenerateX,
  ResonantC,
  SolvabilityObstruction,
  BadHead,
  BadScale,
  NotInvariantJet,
  NotDivisible,
  NotFormalSolution,
  InsufficientData,
  HypothesisViolated,
  BadPoint,
  SectorEscape,
  NotFixedOrigin,
  IntegrationFailure,
  BadParams,
  SchemaError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// CLI maps them onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

/// Raised for a singular linear solve at a given order of a recursion.
class SolvabilityError : public Error {
 public:
  SolvabilityError(int order, const std::string& detail)
      : Error(ErrorCode::SolvabilityObstruction, "order " + std::to_string(order) + ": " + detail),
        order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

}  // namespace parabolic
