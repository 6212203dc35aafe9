#pragma once

#include <stdexcept>
#include <string>

namespace grassmann {

/// Input violates an operation's mathematical precondition.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A bounded search or enumeration ran out of its budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency assertion failed. Signals a bug or a claim that
/// does not hold on the instance at hand.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file or field. `where` names the offending field.
class FormatError : public std::runtime_error {
public:
    FormatError(const std::string& where, const std::string& what)
        : std::runtime_error(where + ": " + what), where_(where) {}
    const std::string& where() const { return where_; }

private:
    std::string where_;
};

}  // namespace grassmann
