#pragma once

#include <stdexcept>
#include <string>

namespace tatep {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TATEP_ERROR(Name)                       \
    class Name : public Error {                 \
    public:                                     \
        using Error::Error;                     \
    }

TATEP_ERROR(StructuralError);
TATEP_ERROR(DomainError);
TATEP_ERROR(SolvabilityError);
TATEP_ERROR(ObstructionError);
TATEP_ERROR(GenericityError);
TATEP_ERROR(AdmissibilityError);
TATEP_ERROR(ValidationError);
TATEP_ERROR(PreconditionError);
TATEP_ERROR(ContractError);
TATEP_ERROR(ParseError);
TATEP_ERROR(ScenarioError);

#undef TATEP_ERROR

}  // namespace tatep
