#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace kacmoody {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

/// Parses `a`, `-a` or `a/b` (b nonzero). Throws ParseError.
Rational parse_rational(std::string_view text);

/// a/b in lowest terms; b must be nonzero.
Rational frac(long a, long b);

bool is_integer(const Rational& q);

/// Image of q in F_p as a residue in [0, p). Throws DeniedDenominator when p
/// divides the denominator.
long reduce_mod(const Rational& q, long p);

long inverse_mod(long a, long p);

}  // namespace kacmoody
