#pragma once

#include <stdexcept>
#include <string>

namespace lbc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LBC_DEFINE_ERROR(Name)            \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

LBC_DEFINE_ERROR(DivisionByZero)
LBC_DEFINE_ERROR(NonLaurent)
LBC_DEFINE_ERROR(UnboundVariable)
LBC_DEFINE_ERROR(ChartMismatch)
LBC_DEFINE_ERROR(DegreeError)
LBC_DEFINE_ERROR(SlotError)
LBC_DEFINE_ERROR(NotSkewSymmetric)
LBC_DEFINE_ERROR(ArityError)
LBC_DEFINE_ERROR(ShapeMismatch)
LBC_DEFINE_ERROR(NotHomogeneous)
LBC_DEFINE_ERROR(KindMismatch)
LBC_DEFINE_ERROR(NotContact)
LBC_DEFINE_ERROR(NotNondegenerate)
LBC_DEFINE_ERROR(DegenerateForm)
LBC_DEFINE_ERROR(DegenerateJacobi)
LBC_DEFINE_ERROR(MissingRepresentation)
LBC_DEFINE_ERROR(LiftMismatch)
LBC_DEFINE_ERROR(MissingRightInvariantRule)
LBC_DEFINE_ERROR(OddDimension)

#undef LBC_DEFINE_ERROR

}  // namespace lbc
