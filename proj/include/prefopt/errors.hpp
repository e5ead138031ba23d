#pragma once

#include <stdexcept>
#include <string>

namespace prefopt {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PREFOPT_DEFINE_ERROR(Name)         \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

PREFOPT_DEFINE_ERROR(InvalidDimension)
PREFOPT_DEFINE_ERROR(ContractViolation)
PREFOPT_DEFINE_ERROR(DegenerateBracket)
PREFOPT_DEFINE_ERROR(InvalidOracle)
PREFOPT_DEFINE_ERROR(InvalidInstance)
PREFOPT_DEFINE_ERROR(UndefinedNormal)
PREFOPT_DEFINE_ERROR(RadiusUnderflow)
PREFOPT_DEFINE_ERROR(InvalidParameter)
PREFOPT_DEFINE_ERROR(InvalidStart)
PREFOPT_DEFINE_ERROR(InvalidCall)
PREFOPT_DEFINE_ERROR(ConditioningError)
PREFOPT_DEFINE_ERROR(ConfigError)

#undef PREFOPT_DEFINE_ERROR

}  // namespace prefopt
