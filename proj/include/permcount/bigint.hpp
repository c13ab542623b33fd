#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

namespace permcount {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(unsigned n)
{
    BigInt r = 1;
    for (unsigned i = 2; i <= n; ++i)
        r *= i;
    return r;
}

// Exact binomial coefficient, multiplicative form (every intermediate
// division is exact).
inline BigInt binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline BigInt bigpow(const BigInt& base, unsigned e)
{
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1)
            r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline double to_double(const BigInt& x)
{
    return x.convert_to<double>();
}

} // namespace permcount
