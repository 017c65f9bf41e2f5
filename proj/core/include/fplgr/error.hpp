#pragma once

#include <stdexcept>
#include <string>

namespace fplgr {

// Base of every error raised by the library. Callers that only care about
// "something was wrong with the inputs" can catch this one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class InvalidDecisionSet : public Error {
public:
    using Error::Error;
};

// enumerate() on a set bigger than the caller's limit; use the oracle instead.
class SetTooLarge : public Error {
public:
    using Error::Error;
};

class FeedbackAccessError : public Error {
public:
    using Error::Error;
};

class EnvironmentError : public Error {
public:
    using Error::Error;
};

class ReplayExhausted : public EnvironmentError {
public:
    using EnvironmentError::EnvironmentError;
};

class ResamplingCeilingExceeded : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace fplgr
