#pragma once

#include <stdexcept>
#include <string>

namespace splitforge {

enum class ErrorKind {
    InvalidInput,
    StepUnderflow,
    NonFinite,
    DegenerateSegment,
    NoSignChange,
    VanishingDerivative,
    NewtonDivergence,
    SingularJacobian,
    EigenClassification,
    Escape,
    NoCrossing,
    DenominatorVanishes,
    PathLeavesSector,
    SeedInaccurate,
    BelowNoiseFloor,
    FitResidual,
    IllConditioned,
};

const char* to_string(ErrorKind kind);

class NumericError : public std::runtime_error {
public:
    NumericError(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace splitforge
