#pragma once

#include <stdexcept>
#include <string>

namespace casal {

// Raised when a pair/degree budget of the Groebner engine is exceeded.
// Distinct from any mathematical answer.
struct BudgetExhausted : std::runtime_error {
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a rational coefficient cannot be reduced mod p
// (denominator divisible by p).
struct BadPrime : std::runtime_error {
    explicit BadPrime(const std::string& what) : std::runtime_error(what) {}
};

} // namespace casal
