#pragma once

#include <stdexcept>
#include <string>

namespace covert {

/// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative method (series, continued fraction, quadrature,
/// root bracket) fails to reach its tolerance. Never masked as a value.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or incomplete configuration input.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}
}  // namespace detail

}  // namespace covert
