#pragma once

#include <stdexcept>
#include <string>

namespace wavetriad {

// Inputs outside a formula's admissible set (zero wavenumbers, non-positive
// lengths, singular denominators).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Calls that are well-formed but not meaningful for the given arguments,
// e.g. an exact search on a floating-point dispersion.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wavetriad
