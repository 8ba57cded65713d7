#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dilation {

enum class ErrorCode {
  InvalidArgument,
  NonOrientedBasis,
  OutsideQ,
  DegenerateDoor,
  NonSimplePentagon,
  ResultOutsideQ,
  InadmissibleAtStep,
  RationalRatio,
  NotInMonoid,
  BudgetExhausted,
  AtDiscontinuity,
  NotInHole,
  NotReducible,
  NotRenormalizable,
  EmptyInterval,
  VertexHit,
  NotTransverse,
  NonConvergence,
  Cancelled,
  PrecisionLoss,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonOrientedBasis: return "NonOrientedBasis";
    case ErrorCode::OutsideQ: return "OutsideQ";
    case ErrorCode::DegenerateDoor: return "DegenerateDoor";
    case ErrorCode::NonSimplePentagon: return "NonSimplePentagon";
    case ErrorCode::ResultOutsideQ: return "ResultOutsideQ";
    case ErrorCode::InadmissibleAtStep: return "InadmissibleAtStep";
    case ErrorCode::RationalRatio: return "RationalRatio";
    case ErrorCode::NotInMonoid: return "NotInMonoid";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::AtDiscontinuity: return "AtDiscontinuity";
    case ErrorCode::NotInHole: return "NotInHole";
    case ErrorCode::NotReducible: return "NotReducible";
    case ErrorCode::NotRenormalizable: return "NotRenormalizable";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::VertexHit: return "VertexHit";
    case ErrorCode::NotTransverse: return "NotTransverse";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Cancelled: return "Cancelled";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
  }
  return "Unknown";
}

/// Every failure raised by the library. `step()` is set for errors tied to a
/// position in a word (InadmissibleAtStep).
class Error : public std::runtime_error {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  Error(ErrorCode code, const std::string& message, std::size_t step = npos)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        step_(step) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::size_t step_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message,
                              std::size_t step = Error::npos) {
  throw Error(code, message, step);
}

}  // namespace dilation
