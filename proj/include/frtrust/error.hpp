#pragma once

#include <stdexcept>
#include <string>

namespace frtrust {

// Base of everything the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An argument outside its mathematical domain (score not in [0,1], key past the ring, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed or inconsistent configuration (incomplete rule base, bad JSON, invalid scenario).
class ConfigError : public Error {
public:
    using Error::Error;
};

// The aggregated output curve has zero area, so there is no centroid.
class NoRuleFiredError : public Error {
public:
    NoRuleFiredError() : Error("no rule fired: aggregated output has zero area") {}
};

// A trust query for a node with no feedback in the requested window.
class UnknownNodeError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
    }
}

} // namespace detail
} // namespace frtrust
