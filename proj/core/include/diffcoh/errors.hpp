#pragma once

#include <stdexcept>
#include <string>

namespace diffcoh {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define DIFFCOH_ERROR(Name)                                   \
    class Name : public Error {                               \
    public:                                                   \
        explicit Name(const std::string& what)                \
            : Error(std::string(#Name) + ": " + what) {}      \
    }

DIFFCOH_ERROR(ShapeMismatch);
DIFFCOH_ERROR(InvalidComplex);
DIFFCOH_ERROR(SubspaceNotContained);
DIFFCOH_ERROR(DegreeOutOfRange);
DIFFCOH_ERROR(SquareNotCommuting);
DIFFCOH_ERROR(TruncationTooSmall);
DIFFCOH_ERROR(IdentityViolation);
DIFFCOH_ERROR(SignIsoFailure);
DIFFCOH_ERROR(BudgetOverflow);
DIFFCOH_ERROR(InvalidParameters);
DIFFCOH_ERROR(UnstableWindow);
DIFFCOH_ERROR(ChainBoundExceeded);
DIFFCOH_ERROR(InvalidDiagram);
DIFFCOH_ERROR(NotFlat);
DIFFCOH_ERROR(NotGlobal);
DIFFCOH_ERROR(NotClosed);
DIFFCOH_ERROR(OracleRangeExceeded);
DIFFCOH_ERROR(InconsistentSpec);
DIFFCOH_ERROR(ParseError);

#undef DIFFCOH_ERROR

}  // namespace diffcoh
