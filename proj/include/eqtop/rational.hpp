#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace eqtop {

/// Exact rationals; mpq_class keeps values canonical after every operation.
using Rational = mpq_class;

/// Accepts "p", "p/q" and "-p/q" (q > 0 after sign handling). The result
/// is canonicalized. Throws Error on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

}  // namespace eqtop
