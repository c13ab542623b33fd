#pragma once

#include <cstdint>
#include <string>

#include "permcount/bigint.hpp"
#include "permcount/counting.hpp"
#include "permcount/gf.hpp"

namespace permcount {

// lhs <= rhs up to relative slack on the larger magnitude (the analytic
// links of the bound chain are checked in doubles; the algebraic ones are
// checked exactly elsewhere).
inline bool leq_with_slack(double lhs, double rhs, double rel = 1e-9)
{
    const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return lhs <= rhs + rel * scale;
}

// Exact check of sum_b |sum_{t in S} char(bt)|^2 = q|S| over all b, and
// (q-|S|)|S| over b != 0. Modulus squares are formed as S_b * conj(S_b) in
// Z[zeta_p].
bool parseval_check(const FiniteField& field, SubsetMask S);

// For b != 0: sum_{t in S} char(bt) = -sum_{t not in S} char(bt), exactly.
bool complement_symmetry_check(const FiniteField& field, SubsetMask S);

// prod_{b != 0} |sum_{t in S} char(bt)| in double precision.
double weyl_product(const FiniteField& field, SubsetMask S);

// weyl_product(S) <= ((q-|S|)|S|/(q-1))^{(q-1)/2}, the AM-GM step.
bool amgm_check(const FiniteField& field, SubsetMask S);

// ((q-1)/2q) * sum_S |q-2|S|| * weyl_product(S); an upper bound for
// |N-(q-1)!| when q > 2. Requires q <= 16 (2^q subset sweep).
double weyl_sum_bound(const FiniteField& field);

// ((q-1)/(2q(q-1)^{(q-1)/2})) * sum_j C(q,j)|q-2j|((q-j)j)^{(q-1)/2},
// the fully explicit form of the bound (q <= 64).
double binomial_sum_bound(uint32_t q);

// sqrt(2e/pi) * q^{q/2}
double theorem_rhs(uint32_t q);

// sum_j C(q,j)|q-2j| == 2q*C(q-1, floor(q/2)), exact integers (q <= 64).
bool binom_sum_identity(uint32_t q);

// C(2n,n) <= sqrt(2/pi)*2^{2n}/sqrt(2n+1/2), 1 <= n <= 128.
bool central_binom_check(uint32_t n);

// Shifted form: C(q-1, floor(q/2)) <= sqrt(2/pi)*2^{q-1}/sqrt(q-1/2), q <= 64.
bool central_binom_applied(uint32_t q);

// Margin report for one field size. The intermediate links presuppose q > 2
// (they bound the zero-sum criterion count); at q = 2 only the final
// theorem inequality is asserted and chain_checked is false. The two
// constant columns are informational: empirical_constant tracks
// |N-(q-1)!|/q^{q/2} and explicit_constant tracks the explicit bound over
// q^{q/2}; neither is asserted against the conjectured sqrt(e/2pi).
struct BoundReport {
    uint32_t q = 0;
    BigInt n;
    BigInt deviation; // |N - (q-1)!|
    double weyl_bound = 0.0;     // subset sweep
    double binomial_bound = 0.0; // explicit binomial form
    double theorem = 0.0;        // sqrt(2e/pi) q^{q/2}
    double empirical_constant = 0.0;
    double explicit_constant = 0.0;
    bool chain_checked = false;
    bool chain_ok = false;   // deviation <= weyl <= binomial <= theorem
    bool theorem_ok = false; // deviation <= theorem
    bool scalar_ineq_ok = false;

    bool all_ok() const { return theorem_ok && scalar_ineq_ok && (!chain_checked || chain_ok); }
};

// Builds the report for the default field of size q; requires q <= 16
// (the subset sweep behind the weyl_bound column).
BoundReport theorem_report(uint32_t q, const BigInt& n);

std::string bound_report_json(const BoundReport& r);
std::string bound_report_csv_header();
std::string bound_report_csv(const BoundReport& r);
// One row in the layout of the reference table plus the bound columns.
std::string bound_report_markdown_header();
std::string bound_report_markdown(const BoundReport& r);

} // namespace permcount
