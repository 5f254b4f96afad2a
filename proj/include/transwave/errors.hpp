#pragma once
// Exception types. Each names the failed precondition or diagnostic condition so
// callers (and the CLI exit-code mapping) can react to it specifically.

#include <stdexcept>
#include <string>

namespace tw {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OddResolution : Error { using Error::Error; };
struct InvalidArgument : Error { using Error::Error; };
struct StencilTooWide : Error { using Error::Error; };
struct EllipticityViolation : Error { using Error::Error; };
struct LocalizationFailure : Error { using Error::Error; };
struct DivergentBornSeries : Error { using Error::Error; };
struct SolverNotConverged : Error { using Error::Error; };
struct CflViolation : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };
struct EnergyBlowup : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ConfigError : Error { using Error::Error; };

}  // namespace tw
