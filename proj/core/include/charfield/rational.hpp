#pragma once

#include <gmpxx.h>

#include <string>

namespace charfield {

// Exact rational arithmetic. All verdict-relevant numbers in the library are
// Rat or exact integers; no floating point appears anywhere on a verdict path.
using Rat = mpq_class;
using Int = mpz_class;

// gmpxx has no long long overloads; funnel conversions through here.
inline Int to_z(long long v) { return Int(static_cast<long>(v)); }

// "num/den" in lowest terms, denominator always written ("3/1", "-2/5").
std::string rat_to_string(const Rat& q);

// Accepts "num/den" or a bare integer "num".
Rat rat_from_string(const std::string& s);

// p^e for e of either sign.
Rat rat_pow(long long base, long long exp);

// x mod m in [0, m).
Int mod_pos(const Int& x, const Int& m);

// base^exp for exp >= 0.
Int int_pow(long long base, unsigned long exp);

// p-adic valuation of a nonzero integer.
long long int_valuation(const Int& x, long long p);

// Valuation of a nonzero rational: v(num) - v(den).
long long rat_valuation(const Rat& q, long long p);

bool is_prime(long long n);

} // namespace charfield
