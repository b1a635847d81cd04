#pragma once

#include <stdexcept>
#include <string>

namespace drcomp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DRCOMP_ERROR(Name)                   \
    class Name : public Error {              \
    public:                                  \
        explicit Name(const std::string& what) \
            : Error(#Name ": " + what) {}    \
    }

// exact_linalg
DRCOMP_ERROR(CompositionNonzero);
DRCOMP_ERROR(NotACocycle);
DRCOMP_ERROR(ShapeMismatch);
// poly
DRCOMP_ERROR(ResourceBudgetExceeded);
DRCOMP_ERROR(ParseError);
// derham
DRCOMP_ERROR(AlgebraMismatch);
// simplicial
DRCOMP_ERROR(ComplexMismatch);
DRCOMP_ERROR(DegreeMismatch);
DRCOMP_ERROR(InvalidSimplicialSet);
// simplex_forms
DRCOMP_ERROR(DimensionMismatch);
DRCOMP_ERROR(NotTopDegree);
DRCOMP_ERROR(NonPolynomialCoefficient);
DRCOMP_ERROR(DenominatorVanishes);
DRCOMP_ERROR(IncompatibleFamily);
// comparison
DRCOMP_ERROR(InvalidSimplex);
DRCOMP_ERROR(FamilyNotClosed);
DRCOMP_ERROR(NotACycle);
DRCOMP_ERROR(NotClosedForm);
// cli
DRCOMP_ERROR(ValidationError);

#undef DRCOMP_ERROR

}  // namespace drcomp
