// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria 1 and 7 drive the installed CLI binary; the rest
// run in-process against the library.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "permcount/bounds.hpp"
#include "permcount/cli.hpp"
#include "permcount/counting.hpp"
#include "permcount/permpoly.hpp"

#ifndef PERMCOUNT_BIN_PATH
#define PERMCOUNT_BIN_PATH "./permcount"
#endif

using namespace permcount;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;
std::vector<std::string> details;

void criterion_line(int idx, bool ok, const std::string& text)
{
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", idx, text.c_str());
    for (const auto& d : details)
        std::printf("    %s\n", d.c_str());
    details.clear();
    if (!ok)
        ++failures;
}

void note(const std::string& text)
{
    details.push_back(text);
}

double elapsed_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FiniteField make(const std::string& spec)
{
    return build_field(parse_field_spec(spec));
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run_cli(const std::string& args)
{
    const std::string out_path = "/tmp/permcount_acceptance_out.txt";
    const std::string err_path = "/tmp/permcount_acceptance_err.txt";
    const std::string cmd = std::string(PERMCOUNT_BIN_PATH) + " " + args + " >" + out_path +
                            " 2>" + err_path;
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    return r;
}

const std::map<uint32_t, const char*> kReference = {
    {2, "0"},     {3, "0"},     {4, "12"},      {5, "20"},
    {7, "630"},   {8, "5368"},  {9, "42120"},   {11, "3634950"},
};

uint64_t random_mask(std::mt19937_64& rng, uint32_t q)
{
    return rng() & ((uint64_t(1) << q) - 1);
}

std::vector<uint32_t> random_images(std::mt19937_64& rng, uint32_t q)
{
    std::vector<uint32_t> images(q);
    std::iota(images.begin(), images.end(), 0u);
    for (uint32_t i = q; i > 1; --i)
        std::swap(images[i - 1], images[rng() % i]);
    return images;
}

std::map<uint32_t, BigInt> computed_n; // shared across criteria

void criterion1_table()
{
    bool ok = true;

    const RunResult cli = run_cli("table --qmax 11 --format csv");
    if (cli.exit_code != 0) {
        ok = false;
        note("CLI table --qmax 11 exited " + std::to_string(cli.exit_code));
    }
    for (const auto& [q, n] : kReference) {
        const std::string needle = std::to_string(q) + "," + n + ",";
        if (cli.out.find(needle) == std::string::npos) {
            ok = false;
            note("row for q=" + std::to_string(q) + " missing or wrong in CLI output");
        }
    }
    if (cli.out.find("8,5376,") != std::string::npos)
        note("q=8: every engine computes N=5376 (cross-validated by independent enumeration "
             "under two moduli, interpolated-degree counting, exact inclusion-exclusion and "
             "the permanent identity); the reference row value 5368 is not reproducible");

    // stated runtime windows
    const auto t_small0 = Clock::now();
    for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
        const FiniteField field = make(std::to_string(q));
        const CountResult r = count_permutations(field, auto_method(q), 2);
        computed_n[q] = r.n;
        if (r.n.str() != kReference.at(q)) {
            ok = false;
            note("q=" + std::to_string(q) + ": computed " + r.n.str());
        }
    }
    const double t_small = elapsed_since(t_small0);
    if (t_small >= 10.0) {
        ok = false;
        note("q<=9 table took " + std::to_string(t_small) + "s, budget 10s");
    }

    const FiniteField gf11 = make("11");
    const auto t_crit0 = Clock::now();
    const CountResult crit11 = count_exhaustive(gf11, false, 1);
    const double t_crit = elapsed_since(t_crit0);
    computed_n[11] = crit11.n;
    if (crit11.n.str() != std::string(kReference.at(11))) {
        ok = false;
        note("q=11 criterion computed " + crit11.n.str());
    }
    if (t_crit >= 300.0) {
        ok = false;
        note("q=11 serial criterion took " + std::to_string(t_crit) + "s, budget 300s");
    }

    const auto t_perm0 = Clock::now();
    const CountResult perm11 = count_via_permanent(gf11);
    const double t_perm = elapsed_since(t_perm0);
    if (perm11.n != crit11.n) {
        ok = false;
        note("q=11 permanent disagrees: " + perm11.n.str());
    }
    if (t_perm >= 1.0) {
        ok = false;
        note("q=11 permanent took " + std::to_string(t_perm) + "s, budget 1s");
    }

    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "table reproduction: N matches for q=2,3,4,5,7,8,9,11 "
                  "(q<=9 %.2fs, q=11 criterion %.2fs serial, q=11 permanent %.3fs)",
                  t_small, t_crit, t_perm);
    criterion_line(1, ok, buf);
}

void criterion2_cross_method()
{
    bool ok = true;

    for (uint32_t q : {3u, 4u, 5u, 7u}) {
        const FiniteField field = make(std::to_string(q));
        const BigInt a = count_exhaustive(field, true).n;
        const BigInt b = count_exhaustive(field, false).n;
        const BigInt c = count_inclusion_exclusion(field).n;
        const BigInt d = count_via_permanent(field).n;
        if (!(a == b && b == c && c == d)) {
            ok = false;
            note("four-method disagreement at q=" + std::to_string(q));
        }
    }
    for (uint32_t q : {8u, 9u, 11u}) {
        const FiniteField field = make(std::to_string(q));
        const BigInt b = count_exhaustive(field, false, 2).n;
        const BigInt c = count_inclusion_exclusion(field).n;
        const BigInt d = count_via_permanent(field).n;
        if (!(b == c && c == d)) {
            ok = false;
            note("three-method disagreement at q=" + std::to_string(q));
        }
    }

    const FiniteField gf13 = make("13");
    const CountResult first = count_via_permanent(gf13, 1);
    const CountResult again = count_via_permanent(gf13, 1);
    const CountResult wide = count_via_permanent(gf13, 2);
    computed_n[13] = first.n;
    if (!(first.n == again.n && first.n == wide.n)) {
        ok = false;
        note("q=13 permanent not reproducible across runs/workers");
    }
    const BigInt fact12 = factorial(12);
    const BigInt dev = first.n >= fact12 ? first.n - fact12 : fact12 - first.n;
    if (!leq_with_slack(to_double(dev), theorem_rhs(13))) {
        ok = false;
        note("q=13 deviation " + dev.str() + " exceeds the theorem bound");
    }
    note("N(13) = " + first.n.str() + ", |N-12!| = " + dev.str());

    criterion_line(2, ok,
                   "cross-method agreement: 4 methods at q=3,4,5,7; 3 methods at q=8,9,11; "
                   "q=13 permanent reproducible and inside the theorem bound");
}

void criterion3_identities()
{
    bool ok = true;

    const FiniteField gf5 = make("5");
    for (uint64_t bits = 0; bits < 32; ++bits)
        if (ns_formula(gf5, SubsetMask{bits}) != ns_bruteforce(gf5, SubsetMask{bits})) {
            ok = false;
            note("closed form != brute force at q=5, S=" + std::to_string(bits));
        }
    const FiniteField gf7 = make("7");
    std::mt19937_64 rng_ns(42);
    for (int i = 0; i < 50; ++i) {
        const SubsetMask S{random_mask(rng_ns, 7)};
        if (ns_formula(gf7, S) != ns_bruteforce(gf7, S)) {
            ok = false;
            note("closed form != brute force at q=7, S=" + std::to_string(S.bits));
        }
    }

    for (uint64_t bits = 0; bits < 32; ++bits)
        if (!parseval_check(gf5, SubsetMask{bits})) {
            ok = false;
            note("Parseval failed at q=5, S=" + std::to_string(bits));
        }
    for (uint32_t q : {7u, 8u, 9u, 11u, 13u, 16u}) {
        const FiniteField field = make(std::to_string(q));
        std::mt19937_64 rng(100 + q);
        for (int i = 0; i < 100; ++i) {
            const SubsetMask S{random_mask(rng, q)};
            if (!parseval_check(field, S)) {
                ok = false;
                note("Parseval failed at q=" + std::to_string(q));
                break;
            }
        }
    }

    for (uint32_t q = 2; q <= 11; ++q)
        if (!surjection_identity_check(q)) {
            ok = false;
            note("surjection identity failed at q=" + std::to_string(q));
        }

    for (uint32_t q = 2; q <= 64; ++q)
        if (!binom_sum_identity(q)) {
            ok = false;
            note("binomial identity failed at q=" + std::to_string(q));
        }

    criterion_line(3, ok,
                   "identity suite (exact): closed form vs brute force (q=5 all subsets, q=7 "
                   "sampled), Parseval (q=5 all, 100 sampled each q=7,8,9,11,13,16), surjection "
                   "2<=q<=11, binomial weight 2<=q<=64");
}

void criterion4_chain()
{
    bool ok = true;

    for (uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 11u}) {
        if (!computed_n.count(q))
            computed_n[q] = count_permutations(make(std::to_string(q)), auto_method(q), 2).n;
        const BoundReport r = theorem_report(q, computed_n[q]);
        if (!r.all_ok()) {
            ok = false;
            note("chain violated at q=" + std::to_string(q));
        }
        if (q == 2 && !r.chain_checked)
            note("q=2: theorem link asserted; the intermediate links presuppose q>2 (skipped)");
    }

    for (uint32_t n = 1; n <= 128; ++n)
        if (!central_binom_check(n)) {
            ok = false;
            note("central binomial bound failed at n=" + std::to_string(n));
        }

    for (uint32_t q : {5u, 7u, 8u, 9u, 11u}) {
        const FiniteField field = make(std::to_string(q));
        std::mt19937_64 rng(2000 + q);
        for (int i = 0; i < 200; ++i) {
            const SubsetMask S{random_mask(rng, q)};
            if (!amgm_check(field, S)) {
                ok = false;
                note("AM-GM failed at q=" + std::to_string(q) + ", S=" + std::to_string(S.bits));
                break;
            }
        }
    }

    criterion_line(4, ok,
                   "inequality chain at 1e-9 relative slack: |N-(q-1)!| <= weyl-sum bound <= "
                   "binomial-sum bound <= sqrt(2e/pi) q^{q/2} for prime powers q<=11 "
                   "(theorem-only link at q=2), "
                   "central binomial n<=128, AM-GM on 200 subsets each q=5,7,8,9,11");
}

void criterion5_equivalence()
{
    bool ok = true;

    // exhaustive: every permutation for q = 3,4,5,7 (plus the two of GF(2)
    // for the interpolation identity, where the criterion is undefined)
    for (uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
        const FiniteField field = make(std::to_string(q));
        std::vector<uint32_t> images(q);
        std::iota(images.begin(), images.end(), 0u);
        do {
            const Permutation sigma(images);
            const PolyFq poly = interpolate(field, sigma);
            for (uint32_t a = 0; a < q; ++a)
                if (eval(field, poly, a) != sigma(a)) {
                    ok = false;
                    note("interpolation mismatch at q=" + std::to_string(q));
                }
            if (q > 2 && is_low_degree(field, sigma) != (poly.degree() < int(q) - 2)) {
                ok = false;
                note("criterion/degree mismatch at q=" + std::to_string(q));
            }
        } while (ok && std::next_permutation(images.begin(), images.end()));
        if (!ok)
            break;
    }

    for (uint32_t q : {8u, 9u, 11u}) {
        const FiniteField field = make(std::to_string(q));
        std::mt19937_64 rng(4200 + q);
        for (int i = 0; i < 1000 && ok; ++i) {
            const Permutation sigma(random_images(rng, q));
            const PolyFq poly = interpolate(field, sigma);
            for (uint32_t a = 0; a < q; ++a)
                if (eval(field, poly, a) != sigma(a)) {
                    ok = false;
                    note("interpolation mismatch at q=" + std::to_string(q));
                }
            if (is_low_degree(field, sigma) != (poly.degree() < int(q) - 2)) {
                ok = false;
                note("criterion/degree mismatch at q=" + std::to_string(q));
            }
        }
    }

    criterion_line(5, ok,
                   "criterion/interpolation equivalence: all q! permutations at q=3,4,5,7 and "
                   "1000 seeded permutations at q=8,9,11; interpolation matches sigma pointwise");
}

void criterion6_isomorphism()
{
    bool ok = true;

    const BigInt n8a = count_via_permanent(make("2^3/1,0,1,1")).n; // x^3+x+1
    const BigInt n8b = count_via_permanent(make("2^3/1,1,0,1")).n; // x^3+x^2+1
    if (n8a != n8b) {
        ok = false;
        note("GF(8) moduli disagree: " + n8a.str() + " vs " + n8b.str());
    } else {
        note("GF(8): both moduli give N = " + n8a.str());
    }

    const BigInt n9a = count_via_permanent(make("3^2/1,0,1")).n; // x^2+1
    const BigInt n9b = count_via_permanent(make("3^2/1,1,2")).n; // x^2+x+2
    if (!(n9a == n9b && n9a == 42120)) {
        ok = false;
        note("GF(9) moduli disagree: " + n9a.str() + " vs " + n9b.str());
    }

    criterion_line(6, ok,
                   "field-isomorphism invariance: GF(8) with x^3+x+1 vs x^3+x^2+1 and GF(9) "
                   "with x^2+1 vs x^2+x+2 give identical N");
}

void criterion7_determinism()
{
    bool ok = true;

    const std::vector<std::string> invocations = {
        "verify --field 7 --seed 42",
        "table --qmax 5 --format json",
        "count --field 9 --method inclexcl --format csv",
        "bound-report --qmax 8 --format markdown",
    };
    for (const auto& args : invocations) {
        const RunResult a = run_cli(args);
        const RunResult b = run_cli(args);
        if (a.exit_code != b.exit_code || a.out != b.out || a.err != b.err) {
            ok = false;
            note("output differs across runs: " + args);
        }
        if (a.exit_code != 0) {
            ok = false;
            note("nonzero exit: " + args);
        }
    }

    const RunResult w1 = run_cli("count --field 7 --method criterion --workers 1 --format csv");
    const RunResult w2 = run_cli("count --field 7 --method criterion --workers 2 --format csv");
    if (w1.out != w2.out) {
        ok = false;
        note("worker count changed the CLI count output");
    }

    const FiniteField gf9 = make("9");
    if (count_exhaustive(gf9, false, 1).n != count_exhaustive(gf9, false, 3).n) {
        ok = false;
        note("worker count changed the exhaustive N at q=9");
    }
    const FiniteField gf11 = make("11");
    if (count_via_permanent(gf11, 1).n != count_via_permanent(gf11, 2).n) {
        ok = false;
        note("worker count changed the permanent N at q=11");
    }

    criterion_line(7, ok,
                   "determinism: fixed seed and worker count give byte-identical CLI output; N "
                   "is invariant under worker count");
}

} // namespace

int main()
{
    criterion1_table();
    criterion2_cross_method();
    criterion3_identities();
    criterion4_chain();
    criterion5_equivalence();
    criterion6_isomorphism();
    criterion7_determinism();

    std::printf("acceptance: %d/7 criteria passed\n", 7 - failures);
    return failures;
}
