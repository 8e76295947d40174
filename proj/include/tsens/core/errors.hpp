#pragma once

#include <stdexcept>
#include <string>

namespace tsens {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lengths or counts do not fit the operation (split sizes, lag windows, anchors).
class SizeError : public Error {
public:
    using Error::Error;
};

/// A value lies outside the domain of a transform or metric.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A linear system that must be inverted is singular.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// An iterative optimizer failed to converge or diverged.
class OptimizationError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// A forecast column carries no information (zero variance, perfect model).
class DegenerateError : public Error {
public:
    using Error::Error;
};

/// Model names or column order disagree between fit and use.
class AlignmentError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace tsens
