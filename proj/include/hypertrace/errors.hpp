#ifndef HYPERTRACE_ERRORS_HPP
#define HYPERTRACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hypertrace {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define HYPERTRACE_DEFINE_ERROR(Name)                                  \
    struct Name : Error {                                              \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}  \
    }

// ff_core
HYPERTRACE_DEFINE_ERROR(NotPrime);
HYPERTRACE_DEFINE_ERROR(ReducibleModulus);
HYPERTRACE_DEFINE_ERROR(FieldTooLarge);
HYPERTRACE_DEFINE_ERROR(ZeroElement);

// cyclotomic
HYPERTRACE_DEFINE_ERROR(DivisionByZero);
HYPERTRACE_DEFINE_ERROR(NonUnitEmbedding);

// characters
HYPERTRACE_DEFINE_ERROR(CongruenceViolation);

// charsums
HYPERTRACE_DEFINE_ERROR(FieldMismatch);
HYPERTRACE_DEFINE_ERROR(SingularPoint);
HYPERTRACE_DEFINE_ERROR(DegenerateParams);
HYPERTRACE_DEFINE_ERROR(ZeroNormalizer);
HYPERTRACE_DEFINE_ERROR(OracleTooLarge);

// pointcount
HYPERTRACE_DEFINE_ERROR(DiscriminantZero);
HYPERTRACE_DEFINE_ERROR(NewtonInconsistency);
HYPERTRACE_DEFINE_ERROR(PurityViolation);
HYPERTRACE_DEFINE_ERROR(HypothesisViolation);

// monodromy
HYPERTRACE_DEFINE_ERROR(NonSemisimple);
HYPERTRACE_DEFINE_ERROR(ConstantMap);
HYPERTRACE_DEFINE_ERROR(UnsupportedAlgebraicSingularity);
HYPERTRACE_DEFINE_ERROR(DeterminantViolation);
HYPERTRACE_DEFINE_ERROR(ReducibleInput);
HYPERTRACE_DEFINE_ERROR(FuchsViolation);

// identities / series
HYPERTRACE_DEFINE_ERROR(PoleInC);
HYPERTRACE_DEFINE_ERROR(ZeroAtReference);
HYPERTRACE_DEFINE_ERROR(ExcludedPoint);

// cli / config
HYPERTRACE_DEFINE_ERROR(UsageError);

#undef HYPERTRACE_DEFINE_ERROR

}  // namespace hypertrace

#endif
