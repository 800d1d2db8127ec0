#pragma once

#include <stdexcept>
#include <string>

namespace tvpar {

/// Error categories surfaced by the library. The CLI maps these onto
/// process exit codes (config -> 2, data -> 3, numerical -> 4).
enum class Errc {
    // window / estimator
    TauOutOfRange,
    WindowTooSmall,
    DegenerateRegressor,
    ZeroStandardError,
    // limit distribution
    RhoAboveOne,
    InvalidGrid,
    AlphaNotInTable,
    // AR(p)
    SingularDesign,
    NonpositiveLambda,
    TooFewResiduals,
    ZeroVarianceResiduals,
    // transforms / data
    NonpositiveCpi,
    LengthMismatch,
    NonpositiveInput,
    BadSeries,
    BadData,
    // configuration
    BadConfig,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tvpar
