#pragma once

#include <stdexcept>
#include <string>

namespace quartica {

struct KernelError : std::runtime_error {
    explicit KernelError(const std::string& what) : std::runtime_error(what) {}
};

#define QUARTICA_ERROR(Name)                                            \
    struct Name : KernelError {                                         \
        explicit Name(const std::string& what) : KernelError(#Name ": " + what) {} \
    }

QUARTICA_ERROR(TowerMismatch);
QUARTICA_ERROR(DivisionByZero);
QUARTICA_ERROR(DegenerateExtension);
QUARTICA_ERROR(MalformedSpec);
QUARTICA_ERROR(NotHomogeneous);
QUARTICA_ERROR(DegenerateInput);
QUARTICA_ERROR(ZeroPolynomial);
QUARTICA_ERROR(SingularPoint);
QUARTICA_ERROR(PointNotOnCurve);
QUARTICA_ERROR(PointNotOnBoth);
QUARTICA_ERROR(ComponentLine);
QUARTICA_ERROR(DegenerateCurve);
QUARTICA_ERROR(NotCollinear);
QUARTICA_ERROR(NotDistinct);
QUARTICA_ERROR(IdenticalInputs);
QUARTICA_ERROR(CommonComponent);
QUARTICA_ERROR(ProjectionCollision);
QUARTICA_ERROR(MismatchedLocus);
QUARTICA_ERROR(SpecInconsistent);
QUARTICA_ERROR(UnknownId);
QUARTICA_ERROR(LoadVerificationFailure);
QUARTICA_ERROR(UnexplainedCoincidence);
QUARTICA_ERROR(NothingVisible);

#undef QUARTICA_ERROR

} // namespace quartica
