#pragma once

#include <stdexcept>
#include <string>

namespace momentlab {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define MOMENTLAB_DEFINE_ERROR(Name)                                   \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
    }

MOMENTLAB_DEFINE_ERROR(NonConvergence);
MOMENTLAB_DEFINE_ERROR(DegreeTooLarge);
MOMENTLAB_DEFINE_ERROR(DegreeViolation);
MOMENTLAB_DEFINE_ERROR(CommonZero);
MOMENTLAB_DEFINE_ERROR(PoleHit);
MOMENTLAB_DEFINE_ERROR(UnstablePolynomial);
MOMENTLAB_DEFINE_ERROR(UnstableShift);
MOMENTLAB_DEFINE_ERROR(DomainError);
MOMENTLAB_DEFINE_ERROR(QuadratureFailure);
MOMENTLAB_DEFINE_ERROR(NodesTooClose);
MOMENTLAB_DEFINE_ERROR(PreconditionViolated);
MOMENTLAB_DEFINE_ERROR(Overflow);
MOMENTLAB_DEFINE_ERROR(RuleAuditError);
MOMENTLAB_DEFINE_ERROR(ParseError);

#undef MOMENTLAB_DEFINE_ERROR

} // namespace momentlab
