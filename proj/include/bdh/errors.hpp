#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bdh {

/// Invalid model or operation parameters (bad N, rates, state, level).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A request exceeds a configured size cap (rational path, oracle).
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// A single excursion ran past its step budget without returning to 0.
class CircuitBreakerError : public std::runtime_error {
public:
    CircuitBreakerError(const std::string& what, std::uint64_t completed_samples)
        : std::runtime_error(what), completed_samples_(completed_samples) {}

    /// Samples that finished before the breaker tripped.
    std::uint64_t completed_samples() const noexcept { return completed_samples_; }

private:
    std::uint64_t completed_samples_;
};

}  // namespace bdh
