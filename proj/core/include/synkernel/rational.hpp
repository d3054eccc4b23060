#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace synkernel {

using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in canonical form (mpq_class does not reduce on construction).
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "a", "-a" or "a/b" (decimal integers). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form; integers are written without a denominator.
std::string to_string(const Rational& q);

/// p-adic valuation of a nonzero rational; nullopt stands for +infinity.
std::optional<long> valuation(const Rational& q, long p);

long valuation(const Integer& n, long p);

bool is_prime(long n);

}  // namespace synkernel
