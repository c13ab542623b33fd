#include "permcount/gf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace permcount {

namespace {

constexpr uint32_t kMaxP = 64;
constexpr uint32_t kMaxQ = 1u << 20;

bool is_prime_u32(uint32_t n)
{
    if (n < 2)
        return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

uint64_t upow(uint64_t b, uint32_t e)
{
    uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

// Dense polynomials over GF(p), coefficient of x^i at index i.
using Poly = std::vector<uint32_t>;

int poly_degree(const Poly& a)
{
    for (int i = int(a.size()) - 1; i >= 0; --i)
        if (a[i] != 0)
            return i;
    return -1;
}

// Remainder of a mod b, b monic.
Poly poly_rem(Poly a, const Poly& b, uint32_t p)
{
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db && db >= 0; da = poly_degree(a)) {
        const uint32_t c = a[da];
        for (int i = 0; i <= db; ++i) {
            const uint32_t t = (c * b[i]) % p;
            uint32_t& ai = a[da - db + i];
            ai = (ai + p - t) % p;
        }
    }
    return a;
}

// Trial division against every monic polynomial of degree 1..f/2.
bool is_irreducible(const Poly& m, uint32_t p, uint32_t f)
{
    for (uint32_t d = 1; 2 * d <= f; ++d) {
        const uint64_t count = upow(p, d);
        for (uint64_t v = 0; v < count; ++v) {
            Poly div(d + 1, 0);
            uint64_t t = v;
            for (uint32_t i = 0; i < d; ++i) {
                div[i] = uint32_t(t % p);
                t /= p;
            }
            div[d] = 1;
            if (poly_degree(poly_rem(m, div, p)) < 0)
                return false;
        }
    }
    return true;
}

// Lexicographically smallest monic irreducible of degree f over GF(p),
// coefficient sequences compared constant term first.
Poly default_modulus(uint32_t p, uint32_t f)
{
    const uint64_t total = upow(p, f);
    for (uint64_t v = 0; v < total; ++v) {
        Poly m(f + 1, 0);
        for (uint32_t i = 0; i < f; ++i)
            m[i] = uint32_t((v / upow(p, f - 1 - i)) % p);
        m[f] = 1;
        if (is_irreducible(m, p, f))
            return m;
    }
    raise(errc::reducible_modulus, "no monic irreducible of degree " + std::to_string(f) +
                                   " over GF(" + std::to_string(p) + ")");
}

void unpack(uint32_t x, uint32_t p, uint32_t f, uint32_t* digits)
{
    for (uint32_t i = 0; i < f; ++i) {
        digits[i] = x % p;
        x /= p;
    }
}

uint32_t pack(const uint32_t* digits, uint32_t p, uint32_t f)
{
    uint32_t x = 0;
    for (uint32_t i = f; i-- > 0;)
        x = x * p + digits[i];
    return x;
}

// Polynomial-representation product mod the field modulus; used only while
// building the log/exp tables.
uint32_t mul_direct(uint32_t x, uint32_t y, uint32_t p, uint32_t f, const Poly& modulus)
{
    uint32_t xd[32], yd[32];
    uint32_t conv[64] = {0};
    unpack(x, p, f, xd);
    unpack(y, p, f, yd);
    for (uint32_t i = 0; i < f; ++i) {
        if (xd[i] == 0)
            continue;
        for (uint32_t j = 0; j < f; ++j)
            conv[i + j] = (conv[i + j] + xd[i] * yd[j]) % p;
    }
    for (uint32_t d = 2 * f - 2; d >= f && d < 64; --d) {
        const uint32_t c = conv[d];
        if (c == 0)
            continue;
        conv[d] = 0;
        for (uint32_t i = 0; i < f; ++i) {
            const uint32_t t = (c * modulus[i]) % p;
            conv[d - f + i] = (conv[d - f + i] + p - t) % p;
        }
    }
    return pack(conv, p, f);
}

uint32_t pow_direct(uint32_t x, uint64_t e, uint32_t p, uint32_t f, const Poly& modulus)
{
    uint32_t r = 1, b = x;
    while (e) {
        if (e & 1)
            r = mul_direct(r, b, p, f, modulus);
        b = mul_direct(b, b, p, f, modulus);
        e >>= 1;
    }
    return r;
}

std::vector<uint32_t> distinct_prime_factors(uint32_t n)
{
    std::vector<uint32_t> fs;
    for (uint32_t d = 2; uint64_t(d) * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0)
                n /= d;
        }
    }
    if (n > 1)
        fs.push_back(n);
    return fs;
}

} // namespace

std::string FieldSpec::to_string() const
{
    if (f == 1)
        return std::to_string(p);
    std::ostringstream os;
    os << p << '^' << f;
    if (!modulus.empty()) {
        os << '/';
        for (size_t i = modulus.size(); i-- > 0;) {
            os << modulus[i];
            if (i > 0)
                os << ',';
        }
    }
    return os.str();
}

namespace {

uint64_t parse_u64(const std::string& s)
{
    if (s.empty())
        raise(errc::parse_error, "empty number in field spec");
    uint64_t v = 0;
    for (char ch : s) {
        if (ch < '0' || ch > '9')
            raise(errc::parse_error, "invalid character '" + std::string(1, ch) + "' in field spec");
        v = v * 10 + uint64_t(ch - '0');
        if (v > kMaxQ * uint64_t(kMaxQ))
            raise(errc::range_exceeded, "number too large in field spec");
    }
    return v;
}

} // namespace

FieldSpec parse_field_spec(const std::string& text)
{
    FieldSpec spec;
    const auto caret = text.find('^');
    if (caret == std::string::npos) {
        // bare prime power
        const uint64_t n = parse_u64(text);
        if (n < 2)
            raise(errc::parse_error, "field size must be at least 2");
        uint64_t m = n;
        uint32_t p = 0;
        for (uint32_t d = 2; uint64_t(d) * d <= m; ++d) {
            if (m % d == 0) {
                p = d;
                break;
            }
        }
        if (p == 0)
            p = uint32_t(m); // n itself prime
        uint32_t f = 0;
        while (m % p == 0) {
            m /= p;
            ++f;
        }
        if (m != 1)
            raise(errc::not_prime, std::to_string(n) + " is not a prime power");
        spec.p = p;
        spec.f = f;
        return spec;
    }

    const auto slash = text.find('/', caret);
    spec.p = uint32_t(parse_u64(text.substr(0, caret)));
    const std::string fpart =
        slash == std::string::npos ? text.substr(caret + 1) : text.substr(caret + 1, slash - caret - 1);
    const uint64_t f = parse_u64(fpart);
    if (f == 0)
        raise(errc::parse_error, "extension degree must be at least 1");
    spec.f = uint32_t(f);
    if (slash != std::string::npos) {
        // modulus given high-degree coefficient first
        std::vector<uint32_t> high_first;
        std::string item;
        std::istringstream in(text.substr(slash + 1));
        while (std::getline(in, item, ','))
            high_first.push_back(uint32_t(parse_u64(item)));
        spec.modulus.assign(high_first.rbegin(), high_first.rend());
    }
    return spec;
}

uint32_t FiniteField::check(uint32_t x) const
{
    if (x >= q_)
        raise(errc::range_exceeded, "element index " + std::to_string(x) + " out of range for q=" +
                                    std::to_string(q_));
    return x;
}

FiniteField::FiniteField(FieldSpec spec) : spec_(std::move(spec))
{
    p_ = spec_.p;
    f_ = spec_.f;
    if (!is_prime_u32(p_))
        raise(errc::not_prime, std::to_string(p_) + " is not prime");
    if (p_ > kMaxP)
        raise(errc::range_exceeded, "characteristic " + std::to_string(p_) + " exceeds limit " +
                                    std::to_string(kMaxP));
    if (f_ < 1)
        raise(errc::degree_mismatch, "extension degree must be at least 1");
    uint64_t q = 1;
    for (uint32_t i = 0; i < f_; ++i) {
        q *= p_;
        if (q > kMaxQ)
            raise(errc::range_exceeded, "field size exceeds limit 2^20");
    }
    q_ = uint32_t(q);

    Poly modulus;
    if (f_ == 1) {
        spec_.modulus.clear(); // ignored for prime fields
        modulus = {0, 1};
    } else if (spec_.modulus.empty()) {
        modulus = default_modulus(p_, f_);
        spec_.modulus.assign(modulus.begin(), modulus.end());
    } else {
        if (spec_.modulus.size() != size_t(f_) + 1)
            raise(errc::degree_mismatch, "modulus must have " + std::to_string(f_ + 1) + " coefficients");
        for (uint32_t c : spec_.modulus)
            if (c >= p_)
                raise(errc::degree_mismatch, "modulus coefficient " + std::to_string(c) +
                                             " not reduced mod " + std::to_string(p_));
        if (spec_.modulus.back() != 1)
            raise(errc::degree_mismatch, "modulus must be monic");
        modulus.assign(spec_.modulus.begin(), spec_.modulus.end());
        if (!is_irreducible(modulus, p_, f_))
            raise(errc::reducible_modulus, "modulus is reducible over GF(" + std::to_string(p_) + ")");
    }

    // multiplicative generator by order test against the factored group order
    const uint32_t group = q_ - 1;
    const auto factors = distinct_prime_factors(group);
    gen_ = 1;
    for (uint32_t cand = group == 1 ? 1 : 2; cand < q_; ++cand) {
        bool ok = pow_direct(cand, group, p_, f_, modulus) == 1;
        for (uint32_t r : factors) {
            if (!ok)
                break;
            if (pow_direct(cand, group / r, p_, f_, modulus) == 1)
                ok = false;
        }
        if (ok) {
            gen_ = cand;
            break;
        }
    }

    exp_.resize(group);
    log_.assign(q_, 0);
    uint32_t acc = 1;
    for (uint32_t k = 0; k < group; ++k) {
        exp_[k] = acc;
        log_[acc] = k;
        acc = mul_direct(acc, gen_, p_, f_, modulus);
    }

    trace_.resize(q_);
    for (uint32_t x = 0; x < q_; ++x) {
        uint32_t sum = x;
        uint32_t y = x;
        for (uint32_t i = 1; i < f_; ++i) {
            y = pow(y, p_);
            sum = add(sum, y);
        }
        // the trace lands in the prime subfield, whose elements are the
        // constant polynomials 0..p-1
        if (sum >= p_)
            raise(errc::non_integer_result, "trace fell outside the prime subfield");
        trace_[x] = sum;
    }
}

uint32_t FiniteField::add(uint32_t a, uint32_t b) const
{
    check(a);
    check(b);
    if (p_ == 2)
        return a ^ b;
    uint32_t r = 0, mult = 1;
    while (a || b) {
        const uint32_t da = a % p_, db = b % p_;
        r += ((da + db) % p_) * mult;
        a /= p_;
        b /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t FiniteField::neg(uint32_t a) const
{
    check(a);
    if (p_ == 2)
        return a;
    uint32_t r = 0, mult = 1;
    while (a) {
        const uint32_t d = a % p_;
        r += (d ? p_ - d : 0) * mult;
        a /= p_;
        mult *= p_;
    }
    return r;
}

uint32_t FiniteField::mul(uint32_t a, uint32_t b) const
{
    check(a);
    check(b);
    if (a == 0 || b == 0)
        return 0;
    const uint32_t group = q_ - 1;
    return exp_[(log_[a] + log_[b]) % group];
}

uint32_t FiniteField::inv(uint32_t a) const
{
    check(a);
    if (a == 0)
        raise(errc::range_exceeded, "zero has no multiplicative inverse");
    const uint32_t group = q_ - 1;
    return exp_[(group - log_[a]) % group];
}

uint32_t FiniteField::pow(uint32_t a, uint64_t e) const
{
    check(a);
    if (a == 0)
        return e == 0 ? 1 : 0;
    const uint32_t group = q_ - 1;
    const uint64_t k = (uint64_t(log_[a]) * (e % group)) % group;
    return exp_[k];
}

FiniteField build_field(FieldSpec spec)
{
    return FiniteField(std::move(spec));
}

std::complex<double> CharValue::to_complex() const
{
    const double angle = 2.0 * std::numbers::pi * double(power) / double(p);
    return {std::cos(angle), std::sin(angle)};
}

CharValue char_at(const FiniteField& field, uint32_t x)
{
    return CharValue{field.p(), field.trace(x)};
}

CycInt orthogonality_sum(const FiniteField& field, uint32_t x)
{
    std::vector<int64_t> counts(field.p(), 0);
    for (uint32_t a = 0; a < field.q(); ++a)
        counts[field.trace(field.mul(a, x))]++;
    return cyc_from_root_counts(field.p(), counts);
}

} // namespace permcount
