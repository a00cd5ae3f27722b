#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecpair {

enum class ErrorKind {
    InvalidArgument,
    ParseError,
    OutOfRange,
    // ec_core
    SingularCurve,
    NotOnCurve,
    NonPositiveDiscriminant,
    // heights
    InfinitePoint,
    IterationOverflow,
    DependentPoints,
    DegenerateGram,
    HypothesisFailed,
    // qforms
    NotPositiveDefinite,
    DiscriminantMismatch,
    InvalidDiscriminant,
    NotFundamental,
    // pairing
    DegeneratePair,
    ParityViolation,
    NoSolution,
    IntegralityFailure,
    DiscriminantFailure,
    // bounds pipeline
    DomainError,
    FactorizationTimeout,
    DependentAtThisSize,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the ErrorKind tags so
/// callers (and the scan driver) can branch on it without parsing messages.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string & what);

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string & what);

} // namespace ecpair
