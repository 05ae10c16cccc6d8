#pragma once

#include <stdexcept>
#include <string>

namespace powsum {

/// Input violates an operation's precondition (bad prime, N > t, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input is valid but exceeds a configured size or memory guard.
class GuardError : public std::length_error {
public:
    using std::length_error::length_error;
};

} // namespace powsum
