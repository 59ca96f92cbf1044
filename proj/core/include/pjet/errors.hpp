#pragma once

#include <stdexcept>
#include <string>

namespace pjet {

// Error families map to CLI exit codes: precision=2, parse=3, domain=4, cap=5.
enum class ErrorClass { Precision = 2, Parse = 3, Domain = 4, Cap = 5 };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, std::string msg) : std::runtime_error(std::move(msg)), cls_(cls) {}
    ErrorClass error_class() const { return cls_; }
    int exit_code() const { return static_cast<int>(cls_); }

private:
    ErrorClass cls_;
};

struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& msg)
        : Error(ErrorClass::Precision, "InsufficientPrecision: " + msg) {}
};

struct PrecisionLoss : Error {
    explicit PrecisionLoss(const std::string& msg)
        : Error(ErrorClass::Precision, "PrecisionLoss: " + msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(ErrorClass::Parse, "ParseError at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
    std::size_t position;
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(ErrorClass::Domain, msg) {}
};

struct CapError : Error {
    explicit CapError(const std::string& msg) : Error(ErrorClass::Cap, msg) {}
};

// Named domain/cap errors used across modules.  Each carries the name the
// operation contracts use, so callers can match on what() prefixes.
#define PJET_DOMAIN_ERROR(NAME)                                    \
    struct NAME : DomainError {                                    \
        explicit NAME(const std::string& msg = "")                 \
            : DomainError(std::string(#NAME) + (msg.empty() ? "" : ": " + msg)) {} \
    }

#define PJET_CAP_ERROR(NAME)                                       \
    struct NAME : CapError {                                       \
        explicit NAME(const std::string& msg = "")                 \
            : CapError(std::string(#NAME) + (msg.empty() ? "" : ": " + msg)) {} \
    }

PJET_DOMAIN_ERROR(NonIntegralInput);
PJET_DOMAIN_ERROR(InexactDivision);
PJET_DOMAIN_ERROR(NotOnScheme);
PJET_DOMAIN_ERROR(ContextMismatch);
PJET_DOMAIN_ERROR(NotInvertible);
PJET_DOMAIN_ERROR(NotInvertibleModP);
PJET_DOMAIN_ERROR(NotOrdinary);
PJET_DOMAIN_ERROR(IntegralityFailure);
PJET_DOMAIN_ERROR(BadReduction);
PJET_DOMAIN_ERROR(PNotInDomain);
PJET_DOMAIN_ERROR(LengthMismatch);
PJET_DOMAIN_ERROR(PresentationUnverified);
PJET_DOMAIN_ERROR(NotDeltaPSymmetric);
PJET_DOMAIN_ERROR(NonIntegralParametrization);

PJET_CAP_ERROR(OrderOverflow);
PJET_CAP_ERROR(TruncationOverflow);
PJET_CAP_ERROR(DegreeBoundExceeded);
PJET_CAP_ERROR(CapExceeded);
PJET_CAP_ERROR(SearchCapExceeded);

#undef PJET_DOMAIN_ERROR
#undef PJET_CAP_ERROR

} // namespace pjet
