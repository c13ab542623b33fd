#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "permcount/gf.hpp"

namespace permcount {

// A bijection on the element indices 0..q-1.
class Permutation {
public:
    explicit Permutation(std::vector<uint32_t> images);

    uint32_t size() const noexcept { return uint32_t(images_.size()); }
    uint32_t operator()(uint32_t c) const { return images_[c]; }
    const std::vector<uint32_t>& images() const noexcept { return images_; }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }

private:
    std::vector<uint32_t> images_;
};

// Comma-separated image list, e.g. "0,2,1".
std::string format_permutation(const Permutation& sigma);
Permutation parse_permutation(const std::string& text);

// Polynomial over GF(q), constant term first, no trailing zeros stored.
// The zero polynomial has degree -1.
struct PolyFq {
    std::vector<uint32_t> coeffs;

    int degree() const noexcept { return int(coeffs.size()) - 1; }
    void normalize();
};

// Value of the polynomial at x (Horner).
uint32_t eval(const FiniteField& field, const PolyFq& poly, uint32_t x);

// The unique polynomial of degree <= q-1 with f(a) = sigma(a) for every a,
// built from sum_c sigma(c) * (1 - (x - c)^{q-1}). For q > 2 its degree is
// at most q-2.
PolyFq interpolate(const FiniteField& field, const Permutation& sigma);

// -sum_c c*sigma(c), which equals the x^{q-2} coefficient of the
// interpolated polynomial. Requires q > 2.
uint32_t coeff_x_qm2(const FiniteField& field, const Permutation& sigma);

// True iff sum_c c*sigma(c) = 0, i.e. the degree drops below q-2.
// Requires q > 2.
bool is_low_degree(const FiniteField& field, const Permutation& sigma);

namespace detail {

// Interpolation into a caller-provided buffer of size q, without trailing
// zero stripping or bijection validation; returns the degree. Used by the
// exhaustive counting engine to avoid per-permutation allocation.
int interpolate_coeffs(const FiniteField& field, std::span<const uint32_t> images,
                       std::span<uint32_t> out);

// sum_c c*images[c] in the field, no validation.
uint32_t criterion_sum(const FiniteField& field, std::span<const uint32_t> images);

} // namespace detail

} // namespace permcount
