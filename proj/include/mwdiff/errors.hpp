#ifndef MWDIFF_ERRORS_HPP
#define MWDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mwdiff {

/// Exponent is not integrable over the real line (Re of the quadratic
/// coefficient is not strictly negative): a Fresnel-type integral this
/// engine does not regularize.
class NonIntegrableError : public std::domain_error {
public:
    explicit NonIntegrableError(const std::string& what) : std::domain_error(what) {}
};

/// The quadrature oracle failed its node-doubling convergence certificate.
class OracleDivergenceError : public std::runtime_error {
public:
    explicit OracleDivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration text could not be parsed or validated.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Output file could not be written.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mwdiff

#endif
