#pragma once

#include <stdexcept>
#include <string>

namespace wesq {

// Bad user input: malformed JSON, schema violations, axiom violations.
class ValidationError : public std::runtime_error {
  public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A theorem the code relies on failed to hold numerically; always a bug
// in this library or an inconsistent in-memory object, never user error.
class IntegrityError : public std::logic_error {
  public:
    explicit IntegrityError(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace wesq
