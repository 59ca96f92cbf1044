#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "pjet/errors.hpp"

namespace pjet {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

// v_p of a nonzero integer.
inline long padic_valuation(Int n, const Int& p) {
    if (n == 0) throw DomainError("padic_valuation of 0");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

// v_p of a nonzero rational.
inline long padic_valuation(const Rat& r, const Int& p) {
    if (r == 0) throw DomainError("padic_valuation of 0");
    long v = 0;
    Int n = rat_num(r);
    if (n < 0) n = -n;
    Int d = rat_den(r);
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

inline bool is_p_integral(const Rat& r, const Int& p) {
    return rat_den(r) % p != 0;
}

// True iff den == p^k for some k >= 0; reports k.  This is the coefficient
// invariant of the jet-polynomial ring: only powers of p in denominators.
inline bool denominator_is_p_power(const Rat& r, const Int& p, long* k_out = nullptr) {
    Int d = rat_den(r);
    long k = 0;
    while (d % p == 0) { d /= p; ++k; }
    if (k_out) *k_out = k;
    return d == 1;
}

inline Rat rat_div_exact_p(const Rat& r, const Int& p) { return r / Rat(p); }

inline bool is_prime_u64(unsigned long long n) {
    if (n < 2) return false;
    for (unsigned long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

} // namespace pjet
