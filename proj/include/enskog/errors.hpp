#pragma once
// Error taxonomy. Exceptions carry a category that the CLI maps onto its
// exit-code contract: validation problems -> 1, usage problems -> 2,
// runtime failures -> 3.

#include <stdexcept>
#include <string>

namespace enskog {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration or input rejected before any work is done.
class ConfigInvalid : public Error {
public:
    explicit ConfigInvalid(const std::string& what) : Error(what) {}
};

// |u - v| below the representable floor, collision frame undefined.
class DegenerateRelativeVelocity : public Error {
public:
    explicit DegenerateRelativeVelocity(const std::string& what) : Error(what) {}
};

// Frozen-measure mode launched without a stored law.
class FrozenLawMissing : public ConfigInvalid {
public:
    explicit FrozenLawMissing(const std::string& what) : ConfigInvalid(what) {}
};

// Expected candidate-event count exceeds the configured budget.
class RateOverflow : public Error {
public:
    explicit RateOverflow(const std::string& what) : Error(what) {}
};

// Evaluation time outside the stored horizon of an ensemble.
class TimeOutOfRange : public Error {
public:
    explicit TimeOutOfRange(const std::string& what) : Error(what) {}
};

// Requested tolerance is below the estimated Monte Carlo noise floor.
class NoiseFloorRefusal : public Error {
public:
    explicit NoiseFloorRefusal(const std::string& what) : Error(what) {}
};

// Malformed ENSK1 or manifest input.
class FormatError : public Error {
public:
    explicit FormatError(const std::string& what) : Error(what) {}
};

// An angular moment integral does not converge for the given parameters.
class NonIntegrable : public Error {
public:
    explicit NonIntegrable(const std::string& what) : Error(what) {}
};

// An operation was asked to produce zero items.
class EmptyRequest : public Error {
public:
    explicit EmptyRequest(const std::string& what) : Error(what) {}
};

}  // namespace enskog
