#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "permcount/bigint.hpp"
#include "permcount/cyc.hpp"
#include "permcount/gf.hpp"

namespace permcount {

// Subset of F_q selected by element index; only the low q bits may be set.
struct SubsetMask {
    uint64_t bits = 0;

    uint32_t size() const noexcept { return uint32_t(std::popcount(bits)); }
    bool contains(uint32_t i) const noexcept { return (bits >> i) & 1; }

    static SubsetMask full(uint32_t q)
    {
        return SubsetMask{q >= 64 ? ~uint64_t(0) : (uint64_t(1) << q) - 1};
    }
};

enum class Method {
    interpolation,
    criterion,
    inclusion_exclusion,
    permanent,
};

const char* method_name(Method m);
// Accepts the CLI spellings: interpolation | criterion | inclexcl | permanent.
Method parse_method(const std::string& name);
// Cheapest adequate method for counting at this field size.
Method auto_method(uint32_t q);

// Result record shared by every counting engine.
struct CountResult {
    uint32_t q = 0;
    BigInt n;
    std::string method;
    double elapsed_s = 0.0;
    std::string field;
};

// {"q":..,"N":"<decimal>","method":..,"elapsed_s":..,"field":..}; elapsed
// is omitted when include_elapsed is false.
std::string count_result_json(const CountResult& r, bool include_elapsed = true);
std::string count_result_csv_header(bool include_elapsed = true);
std::string count_result_csv(const CountResult& r, bool include_elapsed = true);
// Parses one newline-delimited cache record.
CountResult count_result_from_json(const std::string& line);

// N by enumeration of all q! permutations, testing each one either by
// interpolated degree (q <= 8) or by the zero-sum criterion (2 < q <= 13).
// q = 2 always takes the interpolation path. Enumeration is partitioned by
// the image of element 0 across workers; the result does not depend on the
// worker count.
CountResult count_exhaustive(const FiniteField& field, bool via_interpolation,
                             unsigned workers = 1);

// Number of functions f: F_q -> S with sum_c c*f(c) = 0, by enumeration of
// all |S|^q functions. Requires |S|^q <= 1e9.
BigInt ns_bruteforce(const FiniteField& field, SubsetMask S);

// The same count in closed form: |S|^q/q + ((q-1)/q) * prod_b sum_{t in S}
// char(b*t), evaluated exactly over Z[zeta_p].
BigInt ns_formula(const FiniteField& field, SubsetMask S);

// N as the signed subset sum of ns_formula over all S (3 <= q <= 16).
CountResult count_inclusion_exclusion(const FiniteField& field);

// sum_{j=0}^{q} (-1)^{q-j} C(q,j) j^q == q*(q-1)!  (q <= 64)
bool surjection_identity_check(uint32_t q);

using CycMatrix = std::vector<std::vector<CycInt>>;

// Exact permanent via Ryser's formula with Gray-code subset updates,
// O(2^n * n) ring operations; n <= 20. Worker chunks re-seed their row sums
// at the chunk boundary, so the result is worker-count invariant.
CycInt ryser_permanent(const CycMatrix& entries, unsigned workers = 1);

// N from the permanent of the character matrix M[c][d] = zeta^{Tr(c*d)}:
// N = ((q-1)! * q + (q-1) * per(M)) / q, all divisions exact (3 <= q <= 20).
CountResult count_via_permanent(const FiniteField& field, unsigned workers = 1);

// Range-checks and dispatches to the engine for `method`.
CountResult count_permutations(const FiniteField& field, Method method, unsigned workers = 1);

} // namespace permcount
