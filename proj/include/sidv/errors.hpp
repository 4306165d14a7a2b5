#pragma once
// Runtime errors raised by the numeric modules.

#include <stdexcept>
#include <string>

namespace sidv {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SIDV_NUMERIC_ERROR(Name)                 \
    struct Name : NumericError {                 \
        using NumericError::NumericError;        \
    }

SIDV_NUMERIC_ERROR(InvalidParameters);
SIDV_NUMERIC_ERROR(OutOfDomain);
SIDV_NUMERIC_ERROR(NonSmoothSolution);
SIDV_NUMERIC_ERROR(StationaryCase);
SIDV_NUMERIC_ERROR(ZeroSpeed);
SIDV_NUMERIC_ERROR(DegenerateField);
SIDV_NUMERIC_ERROR(SchemeMismatch);
SIDV_NUMERIC_ERROR(KernelDrift);
SIDV_NUMERIC_ERROR(NonPositiveField);
SIDV_NUMERIC_ERROR(MissingAux);
SIDV_NUMERIC_ERROR(DomainMismatch);
SIDV_NUMERIC_ERROR(SupportViolation);

#undef SIDV_NUMERIC_ERROR

/// Non-finite value during time stepping.
struct BlowUp : NumericError {
    BlowUp(double t, double x)
        : NumericError("non-finite value at t=" + std::to_string(t) + ", x=" + std::to_string(x)), time(t), where(x) {}
    double time, where;
};

}  // namespace sidv
