#pragma once

#include <stdexcept>
#include <string>

namespace aapam {

// Base for every error the library raises. Subtypes exist so callers and
// tests can react to a specific failure without string matching.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define AAPAM_ERROR_TYPE(Name)                               \
  class Name : public Error {                                \
   public:                                                   \
    explicit Name(const std::string& detail)                 \
        : Error(std::string(#Name) + ": " + detail) {}       \
  };

// emotion_core
AAPAM_ERROR_TYPE(ZeroVector)
AAPAM_ERROR_TYPE(DegenerateInput)
AAPAM_ERROR_TYPE(EmptyInput)

// parsing / persistence
AAPAM_ERROR_TYPE(ParseError)
AAPAM_ERROR_TYPE(DuplicateId)
AAPAM_ERROR_TYPE(IoError)

// ingestion
AAPAM_ERROR_TYPE(ScaleViolation)
AAPAM_ERROR_TYPE(MissingField)
AAPAM_ERROR_TYPE(UnknownNumericId)

// profiles
AAPAM_ERROR_TYPE(NoText)
AAPAM_ERROR_TYPE(NoConsumption)
AAPAM_ERROR_TYPE(DuplicateConsumption)
AAPAM_ERROR_TYPE(ZeroVotes)

// pac_engine
AAPAM_ERROR_TYPE(EmptyPool)
AAPAM_ERROR_TYPE(InvalidTau)

// recommenders
AAPAM_ERROR_TYPE(ColdStartUser)
AAPAM_ERROR_TYPE(NoNeighbors)
AAPAM_ERROR_TYPE(NoCandidates)
AAPAM_ERROR_TYPE(EmptyTargetHistory)

// evaluation
AAPAM_ERROR_TYPE(EmptyRecommendations)
AAPAM_ERROR_TYPE(ColumnLengthMismatch)

// cli / misc
AAPAM_ERROR_TYPE(ConfigError)
AAPAM_ERROR_TYPE(InvalidArgument)

#undef AAPAM_ERROR_TYPE

}  // namespace aapam
