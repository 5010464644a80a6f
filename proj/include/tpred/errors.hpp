#pragma once

#include <stdexcept>
#include <string>

namespace tpred {

// Base class for every error raised by the library. The CLI maps the
// concrete subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateLayout : public Error {
public:
    using Error::Error;
};

class InvalidPlan : public Error {
public:
    using Error::Error;
};

class InvalidPrefix : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class HorizonExceeded : public Error {
public:
    using Error::Error;
};

class EmptyCostList : public Error {
public:
    using Error::Error;
};

class NonFiniteCost : public Error {
public:
    using Error::Error;
};

class GenerationStalled : public Error {
public:
    using Error::Error;
};

// Malformed layout file.
class FormatError : public Error {
public:
    using Error::Error;
};

class DegenerateVariance : public Error {
public:
    using Error::Error;
};

} // namespace tpred
