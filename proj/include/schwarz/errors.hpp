#pragma once

#include <stdexcept>
#include <string>

namespace schwarz {

// Error hierarchy; the CLI maps each class to a distinct exit code.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed input text or a problem file violating its declared invariants.
struct ParseError : Error {
    ParseError(const std::string& what, int line = -1, int col = -1)
        : Error(format(what, line, col)), line(line), col(col) {}
    int line, col;

  private:
    static std::string format(const std::string& what, int line, int col) {
        if (line < 0) return what;
        return "line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what;
    }
};

struct ValidationError : Error {
    using Error::Error;
};

// Algebraically degenerate input: zero Jacobian determinant, rank-deficient
// dependence system, division by a vanishing invariant, ...
struct DegenerateError : Error {
    using Error::Error;
};

// An invariant polynomial that cannot be written in the declared generators.
struct NotExpressibleError : Error {
    using Error::Error;
};

// Analysis request outside the supported scope (irregular point, irrational
// exponents, cusp/flex labels for non-plane settings, ...).
struct ScopeError : Error {
    using Error::Error;
};

// Numeric verification did not meet its tolerance.
struct VerifyError : Error {
    using Error::Error;
};

}  // namespace schwarz
