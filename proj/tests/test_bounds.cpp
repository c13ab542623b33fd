#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "permcount/bounds.hpp"

using namespace permcount;

namespace {

FiniteField make(const std::string& spec)
{
    return build_field(parse_field_spec(spec));
}

uint64_t random_mask(std::mt19937_64& rng, uint32_t q)
{
    return rng() & ((uint64_t(1) << q) - 1);
}

} // namespace

TEST_CASE("Parseval identity, exact")
{
    const FiniteField gf5 = make("5");
    for (uint64_t bits = 0; bits < 32; ++bits)
        REQUIRE(parseval_check(gf5, SubsetMask{bits}));

    CHECK(parseval_check(make("7"), SubsetMask{0b0010110})); // S = {1,2,4}
    CHECK(parseval_check(make("7"), SubsetMask{0}));
    CHECK(parseval_check(make("7"), SubsetMask::full(7)));

    for (const char* s : {"7", "8", "9", "11", "13", "16"}) {
        const FiniteField k = make(s);
        std::mt19937_64 rng(k.q());
        for (int i = 0; i < 100; ++i)
            REQUIRE(parseval_check(k, SubsetMask{random_mask(rng, k.q())}));
    }
}

TEST_CASE("complement symmetry of character sums")
{
    for (const char* s : {"5", "7", "9", "2^4"}) {
        const FiniteField k = make(s);
        std::mt19937_64 rng(17 * k.q());
        for (int i = 0; i < 50; ++i)
            REQUIRE(complement_symmetry_check(k, SubsetMask{random_mask(rng, k.q())}));
    }
}

TEST_CASE("Weyl products at the degenerate subsets")
{
    const FiniteField gf5 = make("5");
    CHECK(weyl_product(gf5, SubsetMask{0}) == 0.0);
    CHECK(weyl_product(gf5, SubsetMask::full(5)) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(weyl_product(gf5, SubsetMask{1}) == doctest::Approx(1.0)); // S = {0}
}

TEST_CASE("AM-GM step")
{
    const FiniteField gf5 = make("5");
    CHECK(amgm_check(gf5, SubsetMask{0}));
    CHECK(amgm_check(gf5, SubsetMask{1})); // tight: 1 <= ((4*1)/4)^2 = 1
    for (const char* s : {"5", "7", "8", "9"}) {
        const FiniteField k = make(s);
        std::mt19937_64 rng(23 * k.q());
        for (int i = 0; i < 200; ++i)
            REQUIRE(amgm_check(k, SubsetMask{random_mask(rng, k.q())}));
    }
}

TEST_CASE("subset-sweep bound dominates the observed deviation")
{
    // deviations from the reference counts: |12-6|, |20-24|, |630-720|
    CHECK(weyl_sum_bound(make("2^2")) >= 6.0 * (1 - 1e-9));
    CHECK(weyl_sum_bound(make("5")) >= 4.0 * (1 - 1e-9));
    CHECK(weyl_sum_bound(make("7")) >= 90.0 * (1 - 1e-9));
}

TEST_CASE("explicit bound chain values")
{
    CHECK(binomial_sum_bound(2) == 0.0);
    CHECK(weyl_sum_bound(make("2^2")) <= binomial_sum_bound(4) * (1 + 1e-9));
    CHECK(binomial_sum_bound(11) <= theorem_rhs(11) * (1 + 1e-9));
    for (uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
        const double b = weyl_sum_bound(make(std::to_string(q)));
        REQUIRE(leq_with_slack(b, binomial_sum_bound(q)));
        REQUIRE(leq_with_slack(binomial_sum_bound(q), theorem_rhs(q)));
    }
    // theorem_rhs(4) = sqrt(2e/pi)*16
    CHECK(theorem_rhs(4) == doctest::Approx(21.0478).epsilon(1e-4));
}

TEST_CASE("binomial weight identity")
{
    for (uint32_t q = 2; q <= 64; ++q)
        REQUIRE(binom_sum_identity(q));
}

TEST_CASE("central binomial inequality")
{
    for (uint32_t n = 1; n <= 128; ++n)
        REQUIRE(central_binom_check(n));
    for (uint32_t q = 2; q <= 64; ++q)
        REQUIRE(central_binom_applied(q));
    // n=1 and the q=11 applied form are nearly tight
    CHECK(to_double(binomial(2, 1)) == 2.0);
    CHECK(to_double(binomial(10, 5)) == 252.0);
    const double rhs11 = std::sqrt(2.0 / 3.14159265358979) * 1024.0 / std::sqrt(10.5);
    CHECK(rhs11 == doctest::Approx(252.1).epsilon(1e-3));
}

TEST_CASE("theorem report on the reference values")
{
    const BoundReport r11 = theorem_report(11, BigInt(3634950));
    CHECK(r11.deviation == 6150);
    CHECK(r11.theorem == doctest::Approx(702694.0).epsilon(1e-3));
    CHECK(r11.theorem_ok);
    CHECK(r11.chain_checked);
    CHECK(r11.chain_ok);
    CHECK(r11.scalar_ineq_ok);
    CHECK(r11.empirical_constant == doctest::Approx(6150.0 / 534145.6).epsilon(1e-3));

    const BoundReport r4 = theorem_report(4, BigInt(12));
    CHECK(r4.deviation == 6);
    CHECK(r4.theorem == doctest::Approx(21.0478).epsilon(1e-4));
    CHECK(r4.all_ok());

    const BoundReport r3 = theorem_report(3, BigInt(0));
    CHECK(r3.deviation == 2);
    CHECK(r3.theorem == doctest::Approx(6.8352).epsilon(1e-3));
    CHECK(r3.all_ok());

    // q=2: the proof-chain links presuppose q>2; only the theorem link applies
    const BoundReport r2 = theorem_report(2, BigInt(0));
    CHECK_FALSE(r2.chain_checked);
    CHECK(r2.deviation == 1);
    CHECK(r2.theorem_ok);
    CHECK(r2.all_ok());
}

TEST_CASE("slack comparison")
{
    CHECK(leq_with_slack(1.0 + 1e-10, 1.0));
    CHECK_FALSE(leq_with_slack(1.1, 1.0));
    CHECK(leq_with_slack(0.0, 0.0));
    CHECK(leq_with_slack(1e6 * (1 + 1e-10), 1e6));
}

TEST_CASE("report serialization")
{
    const BoundReport r = theorem_report(5, BigInt(20));
    const std::string j = bound_report_json(r);
    CHECK(j.find("\"q\":5") != std::string::npos);
    CHECK(j.find("\"N\":\"20\"") != std::string::npos);
    CHECK(j.find("\"deviation\":\"4\"") != std::string::npos);
    CHECK(j.find("weyl_sum_bound") != std::string::npos);
    CHECK(bound_report_csv(r).rfind("5,20,4,", 0) == 0);
    CHECK(bound_report_markdown(r).find("| 5 | 20 | 24 | 4 |") != std::string::npos);
}
