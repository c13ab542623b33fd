#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "permcount/bigint.hpp"
#include "permcount/errors.hpp"

namespace permcount {

// Element of the cyclotomic integer ring Z[zeta_p], p prime, stored on the
// canonical basis {1, zeta, ..., zeta^{p-2}}. The relation
// 1 + zeta + ... + zeta^{p-1} = 0 rewrites zeta^{p-1} as
// -(1 + zeta + ... + zeta^{p-2}), so equality is coefficient-wise.
// For p = 2 the basis is {1} and the ring degenerates to Z.
class CycInt {
public:
    // Zero element of Z[zeta_p].
    explicit CycInt(uint32_t p);

    uint32_t order() const noexcept { return p_; }
    const std::vector<BigInt>& coeffs() const noexcept { return a_; }

    bool is_zero() const noexcept;
    // True iff the value lies in Z, i.e. all basis coefficients beyond the
    // constant one vanish.
    bool is_rational() const noexcept;

    bool operator==(const CycInt& other) const;
    bool operator!=(const CycInt& other) const { return !(*this == other); }

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    CycInt& operator*=(const CycInt& rhs);
    CycInt& operator*=(const BigInt& scalar);
    CycInt operator-() const;

    friend CycInt operator+(CycInt lhs, const CycInt& rhs) { return lhs += rhs; }
    friend CycInt operator-(CycInt lhs, const CycInt& rhs) { return lhs -= rhs; }
    friend CycInt operator*(CycInt lhs, const CycInt& rhs) { return lhs *= rhs; }
    friend CycInt operator*(CycInt lhs, const BigInt& s) { return lhs *= s; }

    std::string to_string() const;

private:
    CycInt(uint32_t p, std::vector<BigInt> coeffs);

    friend CycInt cyc_from_root(uint32_t p, uint32_t k);
    friend CycInt cyc_from_int(uint32_t p, const BigInt& n);
    friend CycInt cyc_from_root_counts(uint32_t p, const std::vector<int64_t>& counts);
    friend CycInt cyc_conj(const CycInt& x);

    uint32_t p_;
    std::vector<BigInt> a_; // size p-1
};

// zeta_p^k in canonical form; 0 <= k < p, p prime.
CycInt cyc_from_root(uint32_t p, uint32_t k);

// The rational integer n as an element of Z[zeta_p].
CycInt cyc_from_int(uint32_t p, const BigInt& n);

// Builds sum_k counts[k] * zeta_p^k from a per-root-power count vector of
// length p. Used by the character-sum engines.
CycInt cyc_from_root_counts(uint32_t p, const std::vector<int64_t>& counts);

CycInt cyc_add(const CycInt& x, const CycInt& y);
CycInt cyc_mul(const CycInt& x, const CycInt& y);

// Complex conjugation zeta -> zeta^{p-1}, extended multiplicatively.
CycInt cyc_conj(const CycInt& x);

// Evaluates at zeta_p = e^{2*pi*i/p} in double precision.
std::complex<double> cyc_to_complex(const CycInt& x);

// Extracts the value as a rational integer; throws NotRational if any
// higher basis coefficient is nonzero.
BigInt cyc_as_integer(const CycInt& x);

} // namespace permcount
