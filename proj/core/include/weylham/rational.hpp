#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace weylham {

using BigInt = mpz_class;
using BigRational = mpq_class;

// "num/den" or plain integer; throws std::invalid_argument
BigRational parse_rational(std::string_view s);

// always "num/den", denominator >= 1
std::string to_fraction_string(const BigRational& r);

double to_double(const BigRational& r);

// accepts decimals ("0.25", "-1e-3") as well as "num/den"; decimals are converted exactly
BigRational parse_decimal_or_fraction(std::string_view s);

}  // namespace weylham
