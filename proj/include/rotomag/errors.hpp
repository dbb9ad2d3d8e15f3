#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rotomag {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A single validation failure: which field, which rule it broke.
struct Violation {
    std::string field;
    std::string rule;
};

struct ValidationError : Error {
    std::vector<Violation> violations;
    explicit ValidationError(std::vector<Violation> v)
        : Error(format(v)), violations(std::move(v)) {}

  private:
    static std::string format(const std::vector<Violation>& v) {
        std::string s = "invalid configuration:";
        for (const auto& x : v) s += " [" + x.field + ": " + x.rule + "]";
        return s;
    }
};

// Single-violation convenience; avoids spelling the vector at every throw.
[[noreturn]] inline void fail_validation(std::string field, std::string rule) {
    throw ValidationError(std::vector<Violation>{{std::move(field), std::move(rule)}});
}

struct BranchOutOfRange : Error {
    using Error::Error;
};

// Response-kernel denominator collapsed below the numerical guard.
struct PoleError : Error {
    using Error::Error;
};

struct SingularDenominator : Error {
    using Error::Error;
};

// |t_p| too small for a meaningful phase (group delay undefined).
struct ZeroTransmission : Error {
    using Error::Error;
};

struct SingularSystem : Error {
    using Error::Error;
};

// Eigen decomposition did not meet the residual bound.
struct EigenFailure : Error {
    using Error::Error;
};

struct WindowTooShort : Error {
    using Error::Error;
};

// Conversion bracket spans masked (unstable/failed) cells.
struct UnstableBracket : Error {
    using Error::Error;
};

}  // namespace rotomag
