#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gsrww {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument or configuration outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Configuration that cannot be honoured (grid, flags, study setup).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Simulated conditional variance left the representable range.
class OverflowError : public Error {
public:
    OverflowError(std::size_t index, const std::string& what);
    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Quasi-likelihood minimisation failed for every start.
class FitError : public Error {
public:
    using Error::Error;
};

/// Covariance estimation is numerically impossible (singular V).
class InferenceError : public Error {
public:
    using Error::Error;
};

/// Too many windows of a scan failed to fit.
class ScanError : public Error {
public:
    using Error::Error;
};

/// Input data could not be read or transformed.
class IngestError : public Error {
public:
    using Error::Error;
};

}  // namespace gsrww
