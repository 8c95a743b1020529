#pragma once

#include <stdexcept>

namespace macropeaks {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define MACROPEAKS_ERROR(NAME) \
  struct NAME : Error {        \
    using Error::Error;        \
  };

MACROPEAKS_ERROR(DomainError)
MACROPEAKS_ERROR(NotAFunctionError)   // a pure measure has no pointwise values
MACROPEAKS_ERROR(NoDensityError)
MACROPEAKS_ERROR(QuadratureError)
MACROPEAKS_ERROR(UnsatisfiedConditionError)
MACROPEAKS_ERROR(NonVanishingCorrelationError)
MACROPEAKS_ERROR(FactorizationError)
MACROPEAKS_ERROR(EmbeddingError)
MACROPEAKS_ERROR(SizeCapError)
MACROPEAKS_ERROR(MismatchedPointsError)
MACROPEAKS_ERROR(InvalidRangeError)
MACROPEAKS_ERROR(InsufficientShellsError)
MACROPEAKS_ERROR(RangeError)
MACROPEAKS_ERROR(PreconditionError)
MACROPEAKS_ERROR(InvalidVarianceError)
MACROPEAKS_ERROR(TableRangeError)
MACROPEAKS_ERROR(ConfigError)

#undef MACROPEAKS_ERROR

}  // namespace macropeaks
