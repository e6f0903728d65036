#pragma once

#include <stdexcept>
#include <string>

namespace k3 {

struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Reduction mod p hit a coefficient whose denominator is divisible by p.
struct NotPIntegral : std::runtime_error {
    explicit NotPIntegral(const std::string& msg) : std::runtime_error(msg) {}
};

// det(M) turned out to have an odd coefficient, so -det(M)/2 is not integral.
struct IntegralityViolation : std::runtime_error {
    explicit IntegralityViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotASquare : std::runtime_error {
    explicit NotASquare(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateReduction : std::runtime_error {
    explicit DegenerateReduction(const std::string& msg) : std::runtime_error(msg) {}
};

// Every elimination chain degenerated; caller should retry after a shear.
struct NonGenericCoordinates : std::runtime_error {
    explicit NonGenericCoordinates(const std::string& msg) : std::runtime_error(msg) {}
};

// All six symbol representatives vanish at the point; never guessed around.
struct Indeterminate : std::runtime_error {
    explicit Indeterminate(const std::string& msg) : std::runtime_error(msg) {}
};

struct CannotConclude : std::runtime_error {
    explicit CannotConclude(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotFound : std::runtime_error {
    explicit NotFound(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidState : std::runtime_error {
    explicit InvalidState(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace k3
