#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kt {

// All exact arithmetic in the library runs on arbitrary-precision rationals.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "p", "-p" or "p/q" (q != 0) exactly. Throws Error(Parse) otherwise;
// float literals are rejected here on purpose.
Rat parse_rational(const std::string& text);

// "p/q" in lowest terms, or just "p" when the denominator is 1.
std::string format_rational(const Rat& value);

std::string format_rational_vector(const std::vector<Rat>& values,
                                   const char* separator = " ");

// Exact d-th root of a nonnegative rational, if it is rational.
std::optional<Rat> rational_root(const Rat& value, unsigned degree);

Int binomial(uint32_t n, uint32_t k);
Int factorial(uint32_t n);

Rat pow_rat(const Rat& base, uint32_t exponent);

}  // namespace kt
