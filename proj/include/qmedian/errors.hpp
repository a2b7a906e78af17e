#pragma once

#include <stdexcept>
#include <string>

namespace qmedian {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Register or dataset size outside the supported range.
class SizeError : public Error {
public:
    using Error::Error;
};

// Malformed dataset text.
class ParseError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

// Caller supplied a parameter outside its documented range.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Norm drift, degenerate distributions and similar floating-point failures.
class NumericalError : public Error {
public:
    using Error::Error;
};

// No dataset value lies at or above the threshold, so it cannot be perturbed upward.
class DegenerateThresholdError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qmedian
