#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace costar {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational scalar. cpp_rational keeps the invariants we need:
// always reduced, denominator > 0, canonical zero = 0/1.
using Rat = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rat &r) { return numerator(r); }
inline BigInt rat_den(const Rat &r) { return denominator(r); }

inline Rat rat(long long n, long long d = 1) { return Rat(n, d); }

inline Rat rat_pow(const Rat &base, unsigned e) {
    Rat out(1);
    for (unsigned i = 0; i < e; ++i)
        out *= base;
    return out;
}

inline Rat factorial(unsigned n) {
    BigInt f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return Rat(f);
}

inline Rat binomial(unsigned n, unsigned k) {
    if (k > n)
        return Rat(0);
    BigInt num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= (n - i);
        den *= (i + 1);
    }
    return Rat(num, den);
}

inline std::string rat_to_string(const Rat &r) {
    std::string s = rat_num(r).str();
    if (rat_den(r) != 1)
        s += "/" + rat_den(r).str();
    return s;
}

inline Rat rat_from_string(const std::string &s) {
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0)
        throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

} // namespace costar
