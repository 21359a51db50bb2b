// rational.hpp
//
// Exact rational numbers (GMP-backed) and the small set of helpers the rest
// of the library leans on: canonical construction, floor / fractional part,
// "p/q" text round-tripping and exact decimal parsing.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace sumfree {

using ExactRational = mpq_class;
using BigInt = mpz_class;

// Builds num/den in lowest terms. Throws std::invalid_argument on den == 0.
ExactRational make_rational(std::int64_t num, std::int64_t den = 1);
ExactRational make_rational(const BigInt& num, const BigInt& den);

BigInt floor_of(const ExactRational& x);
ExactRational frac_of(const ExactRational& x);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const ExactRational& x);

// Accepts "p/q", "p", and finite decimals such as "-0.125" (parsed exactly).
ExactRational parse_rational(std::string_view text);

double to_double(const ExactRational& x);

// Fits-in-int64 conversion; throws std::overflow_error otherwise.
std::int64_t to_int64(const BigInt& z);

}  // namespace sumfree
