#pragma once

#include <stdexcept>
#include <string>

namespace resurge {

// Base class for every error the library reports deliberately.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define RESURGE_ERROR_TYPE(Name)                                              \
    struct Name : Error {                                                     \
        explicit Name(const std::string& msg) : Error(#Name ": " + msg) {}    \
    }

// germ / series construction
RESURGE_ERROR_TYPE(NotSimpleParabolic);
RESURGE_ERROR_TYPE(NotRational);
RESURGE_ERROR_TYPE(TruncationOverflow);
RESURGE_ERROR_TYPE(NonUnitLeadingTerm);
RESURGE_ERROR_TYPE(ValTooLow);
RESURGE_ERROR_TYPE(ZeroDivisor);
RESURGE_ERROR_TYPE(OrderGainViolated);
RESURGE_ERROR_TYPE(ValCheckFailed);
RESURGE_ERROR_TYPE(InternalInconsistency);

// special functions / evaluation
RESURGE_ERROR_TYPE(PoleOfGamma);
RESURGE_ERROR_TYPE(InsufficientTerms);
RESURGE_ERROR_TYPE(PrecisionBudgetExceeded);

// paths and quadrature
RESURGE_ERROR_TYPE(PathTooCloseToLattice);
RESURGE_ERROR_TYPE(PathThroughOrigin);
RESURGE_ERROR_TYPE(EndpointOnLattice);
RESURGE_ERROR_TYPE(LoopTooClose);
RESURGE_ERROR_TYPE(QuadratureStalled);

// residua summation
RESURGE_ERROR_TYPE(ConvergenceNotDetected);
RESURGE_ERROR_TYPE(TailNotBounded);

// Laplace transforms
RESURGE_ERROR_TYPE(DivergentLaplace);

// dynamical oracle
RESURGE_ERROR_TYPE(OrbitEscapesDomain);
RESURGE_ERROR_TYPE(NoAsymptoticRegime);
RESURGE_ERROR_TYPE(NewtonDiverged);
RESURGE_ERROR_TYPE(NoiseFloorDominates);

// configuration / CLI
RESURGE_ERROR_TYPE(ConfigError);

#undef RESURGE_ERROR_TYPE

} // namespace resurge
