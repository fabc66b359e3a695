#pragma once

#include <stdexcept>
#include <string>

namespace qs {

struct QError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QS_ERROR(Name)                      \
  struct Name : QError {                    \
    explicit Name(const std::string& what)  \
        : QError(#Name ": " + what) {}      \
  }

QS_ERROR(NotAUnit);
QS_ERROR(EmptySeries);
QS_ERROR(PrecisionExceeded);
QS_ERROR(NegativeIndex);
QS_ERROR(Divergent);
QS_ERROR(OutOfRange);
QS_ERROR(DegenerateTheta);
QS_ERROR(PoleAtParameter);
QS_ERROR(DegenerateDivision);
QS_ERROR(NotStabilized);
QS_ERROR(ParameterOutOfRange);
QS_ERROR(UnsupportedBoundary);
QS_ERROR(InvalidParameters);
QS_ERROR(PreconditionViolated);
QS_ERROR(KindMismatch);
QS_ERROR(NotAMember);

#undef QS_ERROR

}  // namespace qs
