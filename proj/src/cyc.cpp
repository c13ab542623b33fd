#include "permcount/cyc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace permcount {

namespace {

bool is_prime_u32(uint32_t n)
{
    if (n < 2)
        return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

void require_prime_order(uint32_t p)
{
    if (!is_prime_u32(p))
        raise(errc::not_prime, "cyclotomic root order " + std::to_string(p) + " must be prime");
    if (p > 64)
        raise(errc::range_exceeded, "root order " + std::to_string(p) + " exceeds supported limit 64");
}

void require_same_order(const CycInt& x, const CycInt& y)
{
    if (x.order() != y.order())
        raise(errc::mixed_order, "operands have root orders " + std::to_string(x.order()) + " and " +
                                 std::to_string(y.order()));
}

} // namespace

CycInt::CycInt(uint32_t p) : p_(p)
{
    require_prime_order(p);
    a_.assign(p - 1, BigInt(0));
}

CycInt::CycInt(uint32_t p, std::vector<BigInt> coeffs) : p_(p), a_(std::move(coeffs))
{
    require_prime_order(p);
}

bool CycInt::is_zero() const noexcept
{
    for (const auto& c : a_)
        if (c != 0)
            return false;
    return true;
}

bool CycInt::is_rational() const noexcept
{
    for (size_t i = 1; i < a_.size(); ++i)
        if (a_[i] != 0)
            return false;
    return true;
}

bool CycInt::operator==(const CycInt& other) const
{
    require_same_order(*this, other);
    return a_ == other.a_;
}

CycInt& CycInt::operator+=(const CycInt& rhs)
{
    require_same_order(*this, rhs);
    for (size_t i = 0; i < a_.size(); ++i)
        a_[i] += rhs.a_[i];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs)
{
    require_same_order(*this, rhs);
    for (size_t i = 0; i < a_.size(); ++i)
        a_[i] -= rhs.a_[i];
    return *this;
}

CycInt& CycInt::operator*=(const CycInt& rhs)
{
    require_same_order(*this, rhs);
    const uint32_t p = p_;
    // Convolve on exponents 0..2p-4, fold zeta^p = 1, then eliminate
    // zeta^{p-1} via the minimal polynomial.
    std::vector<BigInt> folded(p, BigInt(0));
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0)
            continue;
        for (size_t j = 0; j < rhs.a_.size(); ++j) {
            if (rhs.a_[j] == 0)
                continue;
            folded[(i + j) % p] += a_[i] * rhs.a_[j];
        }
    }
    for (uint32_t i = 0; i + 1 < p; ++i)
        a_[i] = folded[i] - folded[p - 1];
    return *this;
}

CycInt& CycInt::operator*=(const BigInt& scalar)
{
    for (auto& c : a_)
        c *= scalar;
    return *this;
}

CycInt CycInt::operator-() const
{
    CycInt r(p_);
    for (size_t i = 0; i < a_.size(); ++i)
        r.a_[i] = -a_[i];
    return r;
}

std::string CycInt::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a_.size(); ++i) {
        if (a_[i] == 0)
            continue;
        if (!first)
            os << " + ";
        os << a_[i].str();
        if (i >= 1)
            os << "*z^" << i;
        first = false;
    }
    if (first)
        os << "0";
    return os.str();
}

CycInt cyc_from_root(uint32_t p, uint32_t k)
{
    require_prime_order(p);
    if (k >= p)
        raise(errc::range_exceeded, "root power " + std::to_string(k) + " out of range for p=" + std::to_string(p));
    std::vector<BigInt> a(p - 1, BigInt(0));
    if (k == p - 1) {
        for (auto& c : a)
            c = -1;
    } else {
        a[k] = 1;
    }
    return CycInt(p, std::move(a));
}

CycInt cyc_from_int(uint32_t p, const BigInt& n)
{
    require_prime_order(p);
    std::vector<BigInt> a(p - 1, BigInt(0));
    a[0] = n;
    return CycInt(p, std::move(a));
}

CycInt cyc_from_root_counts(uint32_t p, const std::vector<int64_t>& counts)
{
    require_prime_order(p);
    if (counts.size() != p)
        raise(errc::size_mismatch, "count vector must have length p");
    std::vector<BigInt> a(p - 1);
    for (uint32_t i = 0; i + 1 < p; ++i)
        a[i] = BigInt(counts[i]) - BigInt(counts[p - 1]);
    return CycInt(p, std::move(a));
}

CycInt cyc_add(const CycInt& x, const CycInt& y)
{
    return x + y;
}

CycInt cyc_mul(const CycInt& x, const CycInt& y)
{
    return x * y;
}

CycInt cyc_conj(const CycInt& x)
{
    const uint32_t p = x.order();
    // zeta^i -> zeta^{p-i} for i >= 1; fold onto exponents 0..p-1, then
    // eliminate zeta^{p-1}.
    std::vector<BigInt> folded(p, BigInt(0));
    const auto& a = x.coeffs();
    folded[0] = a[0];
    for (uint32_t i = 1; i <= p - 2; ++i)
        folded[p - i] += a[i];
    std::vector<BigInt> out(p - 1);
    for (uint32_t i = 0; i + 1 < p; ++i)
        out[i] = folded[i] - folded[p - 1];
    return CycInt(p, std::move(out));
}

std::complex<double> cyc_to_complex(const CycInt& x)
{
    const uint32_t p = x.order();
    std::complex<double> z(0.0, 0.0);
    const auto& a = x.coeffs();
    for (uint32_t i = 0; i + 1 < p; ++i) {
        if (a[i] == 0)
            continue;
        const double angle = 2.0 * std::numbers::pi * double(i) / double(p);
        z += to_double(a[i]) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return z;
}

BigInt cyc_as_integer(const CycInt& x)
{
    if (!x.is_rational())
        raise(errc::not_rational, "value " + x.to_string() + " is not a rational integer");
    return x.coeffs()[0];
}

} // namespace permcount
