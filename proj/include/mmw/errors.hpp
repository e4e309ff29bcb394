#pragma once

#include <stdexcept>
#include <string>

namespace mmw {

// Physics-domain violation (bad field strength, forbidden energy, ...).
// CLI maps this family to exit status 3.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Total energy at or below the internal level energy: the translational
// wave number would be imaginary.
struct EvanescentError : DomainError {
    explicit EvanescentError(const std::string& msg) : DomainError(msg) {}
};

// Request is valid physics but outside what this build evaluates exactly
// (e.g. explicit oscillator wavefunctions above the stability cutoff).
struct CapabilityError : std::runtime_error {
    explicit CapabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed configuration / invalid run setup. CLI maps this to exit status 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mmw
