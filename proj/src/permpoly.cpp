#include "permcount/permpoly.hpp"

#include <sstream>

namespace permcount {

Permutation::Permutation(std::vector<uint32_t> images) : images_(std::move(images))
{
    const size_t q = images_.size();
    if (q == 0)
        raise(errc::invalid_permutation, "empty image list");
    std::vector<bool> seen(q, false);
    for (uint32_t v : images_) {
        if (v >= q || seen[v])
            raise(errc::invalid_permutation, "image list is not a bijection on 0.." + std::to_string(q - 1));
        seen[v] = true;
    }
}

std::string format_permutation(const Permutation& sigma)
{
    std::ostringstream os;
    for (uint32_t c = 0; c < sigma.size(); ++c) {
        if (c)
            os << ',';
        os << sigma(c);
    }
    return os.str();
}

Permutation parse_permutation(const std::string& text)
{
    std::vector<uint32_t> images;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty())
            raise(errc::parse_error, "empty entry in permutation list");
        uint32_t v = 0;
        for (char ch : item) {
            if (ch < '0' || ch > '9')
                raise(errc::parse_error, "invalid character in permutation list");
            v = v * 10 + uint32_t(ch - '0');
        }
        images.push_back(v);
    }
    return Permutation(std::move(images));
}

void PolyFq::normalize()
{
    while (!coeffs.empty() && coeffs.back() == 0)
        coeffs.pop_back();
}

uint32_t eval(const FiniteField& field, const PolyFq& poly, uint32_t x)
{
    uint32_t acc = 0;
    for (size_t i = poly.coeffs.size(); i-- > 0;)
        acc = field.add(field.mul(acc, x), poly.coeffs[i]);
    return acc;
}

namespace detail {

namespace {

// C(q-1, j) mod p by Lucas' theorem. Every base-p digit of q-1 = p^f - 1
// equals p-1, so only a C(p-1, .) row is needed.
std::vector<uint32_t> binom_qm1_row(uint32_t p, uint32_t q)
{
    // Pascal row C(p-1, .) mod p
    std::vector<uint32_t> prev(p, 0), cur(p, 0);
    prev[0] = 1;
    for (uint32_t n = 1; n < p; ++n) {
        cur[0] = 1;
        for (uint32_t k = 1; k <= n; ++k)
            cur[k] = (prev[k - 1] + prev[k]) % p;
        std::swap(prev, cur);
    }
    std::vector<uint32_t> row(q, 1);
    for (uint32_t j = 0; j < q; ++j) {
        uint32_t r = 1;
        uint32_t t = j;
        while (t) {
            r = (r * prev[t % p]) % p;
            t /= p;
        }
        row[j] = r;
    }
    return row;
}

} // namespace

int interpolate_coeffs(const FiniteField& field, std::span<const uint32_t> images,
                       std::span<uint32_t> out)
{
    const uint32_t q = field.q();
    const auto binrow = binom_qm1_row(field.p(), q);
    std::fill(out.begin(), out.end(), 0u);
    for (uint32_t c = 0; c < q; ++c) {
        const uint32_t s = images[c];
        if (s == 0)
            continue;
        // expand sigma(c) * (1 - (x - c)^{q-1})
        out[0] = field.add(out[0], s);
        const uint32_t mc = field.neg(c);
        for (uint32_t j = 0; j < q; ++j) {
            // coefficient of x^j in (x-c)^{q-1} is C(q-1,j) * (-c)^{q-1-j}
            const uint32_t term = field.mul(binrow[j], field.pow(mc, q - 1 - j));
            if (term == 0)
                continue;
            out[j] = field.sub(out[j], field.mul(s, term));
        }
    }
    for (int j = int(q) - 1; j >= 0; --j)
        if (out[j] != 0)
            return j;
    return -1;
}

uint32_t criterion_sum(const FiniteField& field, std::span<const uint32_t> images)
{
    uint32_t sum = 0;
    for (uint32_t c = 1; c < images.size(); ++c)
        sum = field.add(sum, field.mul(c, images[c]));
    return sum;
}

} // namespace detail

PolyFq interpolate(const FiniteField& field, const Permutation& sigma)
{
    if (sigma.size() != field.q())
        raise(errc::size_mismatch, "permutation acts on " + std::to_string(sigma.size()) +
                                   " points but the field has " + std::to_string(field.q()));
    PolyFq poly;
    poly.coeffs.assign(field.q(), 0);
    detail::interpolate_coeffs(field, sigma.images(), poly.coeffs);
    poly.normalize();
    return poly;
}

uint32_t coeff_x_qm2(const FiniteField& field, const Permutation& sigma)
{
    if (field.q() <= 2)
        raise(errc::field_too_small, "the x^{q-2} coefficient criterion requires q > 2");
    if (sigma.size() != field.q())
        raise(errc::size_mismatch, "permutation size does not match field size");
    return field.neg(detail::criterion_sum(field, sigma.images()));
}

bool is_low_degree(const FiniteField& field, const Permutation& sigma)
{
    if (field.q() <= 2)
        raise(errc::field_too_small, "the degree criterion requires q > 2");
    if (sigma.size() != field.q())
        raise(errc::size_mismatch, "permutation size does not match field size");
    return detail::criterion_sum(field, sigma.images()) == 0;
}

} // namespace permcount
