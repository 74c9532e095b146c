#pragma once

#include <stdexcept>
#include <string>

namespace kisin {

// All library failures are typed; callers that treat a condition as a value
// (semi-decisions, Empty results) get an optional/enum instead of a throw.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define KISIN_ERROR_TYPE(Name)                                       \
    struct Name : Error {                                            \
        explicit Name(const std::string& msg = #Name) : Error(msg) {} \
    }

KISIN_ERROR_TYPE(SpecMismatch);
KISIN_ERROR_TYPE(ZeroInverse);
KISIN_ERROR_TYPE(ZeroValuation);
KISIN_ERROR_TYPE(InsufficientPrecision);
KISIN_ERROR_TYPE(SingularMatrix);
KISIN_ERROR_TYPE(OutOfRange);
KISIN_ERROR_TYPE(FixedPointInconsistent);
KISIN_ERROR_TYPE(InternalDisagreement);
KISIN_ERROR_TYPE(AmbiguousQ);
KISIN_ERROR_TYPE(DetMismatch);
KISIN_ERROR_TYPE(NoWitness);
KISIN_ERROR_TYPE(PreconditionViolated);
KISIN_ERROR_TYPE(MembershipLost);
KISIN_ERROR_TYPE(ConstraintEmpty);
KISIN_ERROR_TYPE(ConfigError);

#undef KISIN_ERROR_TYPE

} // namespace kisin
