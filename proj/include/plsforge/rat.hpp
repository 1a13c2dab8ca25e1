#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace plsforge {

using Int = mpz_class;
using Rat = mpq_class;

/// num/den, canonicalized. den must be nonzero.
Rat ratio(const Int& num, const Int& den);

/// 2^e as an exact rational; e may be negative.
Rat pow2(long e);

/// 2^e as an integer; e >= 0.
Int pow2_int(unsigned long e);

/// base^e exact, e may be negative (base must be nonzero then).
Rat pow_rat(const Rat& base, long e);

/// Largest k (possibly negative) with base^k <= x. Requires base > 1, x > 0.
/// Exact: binary search over exponents with exact comparisons, no logarithms.
long floor_log(const Rat& base, const Rat& x);

/// ceil(a/b) for integers, b > 0.
Int ceil_div(const Int& a, const Int& b);

/// Smallest integer >= x.
Int ceil_rat(const Rat& x);

bool is_integer(const Rat& x);

/// Plain "p" or "p/q" decimal rendering.
std::string rat_to_string(const Rat& x);

} // namespace plsforge
