#ifndef SHAC_ERRORS_HPP
#define SHAC_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shac {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid configuration: bad domains, budgets that do not divide, bad knobs.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A point does not match its search space (wrong arity or out-of-range coordinate).
class InvalidPointError : public Error {
public:
    using Error::Error;
};

/// Objective evaluated outside its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Dataset unusable for training: empty, single-class, or too small.
class DatasetError : public Error {
public:
    using Error::Error;
};

/// Ask/tell sequence violated (tell without ask, size mismatch, ask past budget).
class ProtocolError : public Error {
public:
    using Error::Error;
};

/// Rejection sampling hit its attempt cap without finding an accepted point.
class SamplingExhaustedError : public Error {
public:
    SamplingExhaustedError(const std::string& what, std::int64_t attempts)
        : Error(what), attempts_(attempts) {}

    std::int64_t attempts() const { return attempts_; }

private:
    std::int64_t attempts_;
};

/// Operation requires a space shape the given space does not have.
class UnsupportedSpaceError : public Error {
public:
    using Error::Error;
};

} // namespace shac

#endif // SHAC_ERRORS_HPP
