#pragma once
#include <stdexcept>
#include <string>

namespace kac {

// Base for every error raised by the library. The CLI maps subclasses of
// ConfigFailure to exit code 2 and NumericalFailure to exit code 3.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigFailure : Error {
  using Error::Error;
};

struct NumericalFailure : Error {
  using Error::Error;
};

#define KAC_ERROR(Name, Base)   \
  struct Name : Base {          \
    using Base::Base;           \
  };

KAC_ERROR(ParamError, ConfigFailure)
KAC_ERROR(DivisibilityError, ConfigFailure)
KAC_ERROR(EnumerationCapError, ConfigFailure)
KAC_ERROR(ConfigError, ConfigFailure)
KAC_ERROR(BoundaryError, Error)
KAC_ERROR(TorusTooSmall, Error)
KAC_ERROR(AlignmentError, Error)
KAC_ERROR(NoPhaseError, Error)
KAC_ERROR(SinglePhaseError, Error)
KAC_ERROR(NoAnchorError, Error)
KAC_ERROR(AdmissibilityError, Error)
KAC_ERROR(EmptyEnsembleError, NumericalFailure)
KAC_ERROR(SizeError, Error)
KAC_ERROR(TruncationError, NumericalFailure)
KAC_ERROR(TableMissError, Error)
KAC_ERROR(BracketError, NumericalFailure)
KAC_ERROR(NonConvergence, NumericalFailure)
KAC_ERROR(DomainError, Error)
KAC_ERROR(ResolutionError, Error)
KAC_ERROR(WindowError, Error)
KAC_ERROR(CacheCorruption, Error)
KAC_ERROR(PeriodicSupportWarning, Error)

#undef KAC_ERROR

}  // namespace kac
