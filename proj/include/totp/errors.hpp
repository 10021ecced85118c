#pragma once

#include <stdexcept>
#include <string>

namespace totp {

/// Caller violated an operation's precondition (bad lengths, empty input, a > b).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed problem file or expression.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exhaustive oracle was asked to run past its size guard.
class ScaleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A prefix oracle contradicted its own witness predicate.
class IntegrityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace totp
