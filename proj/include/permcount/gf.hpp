#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "permcount/cyc.hpp"
#include "permcount/errors.hpp"

namespace permcount {

// Description of GF(p^f). `modulus` holds the f+1 coefficients of a monic
// irreducible polynomial over GF(p), constant term first; leave it empty to
// pick the default (lexicographically smallest, low-degree coefficients
// compared first). The modulus is ignored for prime fields.
struct FieldSpec {
    uint32_t p = 0;
    uint32_t f = 1;
    std::vector<uint32_t> modulus; // low-degree first, size f+1 when present

    // Canonical form: "p" for prime fields, "p^f/c_f,...,c_0" otherwise
    // (high-degree coefficient first, matching the parse syntax).
    std::string to_string() const;
};

// Accepts "p^f", "p^f/c_f,...,c_0", or a bare prime power "q".
FieldSpec parse_field_spec(const std::string& text);

// Arithmetic context for GF(q), q = p^f. Elements are indexed 0..q-1 by
// their polynomial representation packed in base p, so index 0 is the
// additive identity and index 1 the multiplicative identity. Immutable
// after construction and safe to share across threads.
class FiniteField {
public:
    explicit FiniteField(FieldSpec spec);

    const FieldSpec& spec() const noexcept { return spec_; }
    uint32_t p() const noexcept { return p_; }
    uint32_t f() const noexcept { return f_; }
    uint32_t q() const noexcept { return q_; }
    uint32_t generator() const noexcept { return gen_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t pow(uint32_t a, uint64_t e) const;

    // Absolute trace down to GF(p), as a value in [0, p).
    uint32_t trace(uint32_t x) const { return trace_[check(x)]; }

    const std::vector<uint32_t>& trace_table() const noexcept { return trace_; }
    const std::vector<uint32_t>& exp_table() const noexcept { return exp_; }
    const std::vector<uint32_t>& log_table() const noexcept { return log_; }

private:
    uint32_t check(uint32_t x) const;

    FieldSpec spec_;
    uint32_t p_, f_, q_;
    uint32_t gen_;
    std::vector<uint32_t> exp_;   // exp_[k] = g^k, k in [0, q-1)
    std::vector<uint32_t> log_;   // log_[x] for x != 0
    std::vector<uint32_t> trace_; // per element, value in [0, p)
};

FiniteField build_field(FieldSpec spec);

// Additive character value: zeta_p^power, |complex form| = 1.
struct CharValue {
    uint32_t p;
    uint32_t power; // in [0, p)

    std::complex<double> to_complex() const;
    CycInt to_cyc() const { return cyc_from_root(p, power); }
};

// x -> zeta_p^{Tr(x)}, a homomorphism from (GF(q), +) to the unit circle.
CharValue char_at(const FiniteField& field, uint32_t x);

// Exact sum over a in F_q of char(a*x): q when x = 0, zero otherwise.
CycInt orthogonality_sum(const FiniteField& field, uint32_t x);

} // namespace permcount
