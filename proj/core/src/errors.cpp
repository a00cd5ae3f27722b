#include "ecpair/errors.hpp"

namespace ecpair {

std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::SingularCurve: return "SingularCurve";
    case ErrorKind::NotOnCurve: return "NotOnCurve";
    case ErrorKind::NonPositiveDiscriminant: return "NonPositiveDiscriminant";
    case ErrorKind::InfinitePoint: return "InfinitePoint";
    case ErrorKind::IterationOverflow: return "IterationOverflow";
    case ErrorKind::DependentPoints: return "DependentPoints";
    case ErrorKind::DegenerateGram: return "DegenerateGram";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::DiscriminantMismatch: return "DiscriminantMismatch";
    case ErrorKind::InvalidDiscriminant: return "InvalidDiscriminant";
    case ErrorKind::NotFundamental: return "NotFundamental";
    case ErrorKind::DegeneratePair: return "DegeneratePair";
    case ErrorKind::ParityViolation: return "ParityViolation";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::IntegralityFailure: return "IntegralityFailure";
    case ErrorKind::DiscriminantFailure: return "DiscriminantFailure";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::FactorizationTimeout: return "FactorizationTimeout";
    case ErrorKind::DependentAtThisSize: return "DependentAtThisSize";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string & what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what)
    , kind_(kind)
{
}

void raise(ErrorKind kind, const std::string & what)
{
    throw Error(kind, what);
}

} // namespace ecpair
