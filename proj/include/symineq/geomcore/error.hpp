#pragma once

#include <stdexcept>
#include <string>

namespace symineq
{
// Violated precondition (bad dimension, arity, parameter range).
class PreconditionError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// Input has zero measure or is otherwise degenerate where a body is needed.
class DegenerateError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

// Requested feature lies outside the supported dimension caps.
class UnsupportedError : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

// Malformed serialized input.
class FormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg)
{
    if (!cond)
        throw PreconditionError(msg);
}

}  // namespace symineq
