#include "permcount/bounds.hpp"

#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <vector>

#include <json.hpp>

namespace permcount {

namespace {

// per-root-power counts of {t in S : Tr(bt) = k}, for one b
std::vector<int64_t> root_counts(const FiniteField& field, SubsetMask S, uint32_t b)
{
    std::vector<int64_t> counts(field.p(), 0);
    for (uint32_t t = 0; t < field.q(); ++t)
        if (S.contains(t))
            counts[field.trace(field.mul(b, t))]++;
    return counts;
}

std::string fmt_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

} // namespace

bool parseval_check(const FiniteField& field, SubsetMask S)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    if (q < 64 && (S.bits >> q) != 0)
        raise(errc::range_exceeded, "subset mask has bits above q");

    CycInt total(p), nonzero_part(p);
    for (uint32_t b = 0; b < q; ++b) {
        const CycInt sb = cyc_from_root_counts(p, root_counts(field, S, b));
        const CycInt sq = sb * cyc_conj(sb);
        total += sq;
        if (b != 0)
            nonzero_part += sq;
    }
    const BigInt s = S.size();
    if (!total.is_rational() || !nonzero_part.is_rational())
        return false;
    return cyc_as_integer(total) == BigInt(q) * s &&
           cyc_as_integer(nonzero_part) == (BigInt(q) - s) * s;
}

bool complement_symmetry_check(const FiniteField& field, SubsetMask S)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    const SubsetMask comp{SubsetMask::full(q).bits & ~S.bits};
    for (uint32_t b = 1; b < q; ++b) {
        const CycInt sb = cyc_from_root_counts(p, root_counts(field, S, b));
        const CycInt cb = cyc_from_root_counts(p, root_counts(field, comp, b));
        if (sb != -cb)
            return false;
    }
    return true;
}

double weyl_product(const FiniteField& field, SubsetMask S)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    std::vector<std::complex<double>> roots(p);
    for (uint32_t k = 0; k < p; ++k) {
        const double angle = 2.0 * std::numbers::pi * double(k) / double(p);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }
    double prod = 1.0;
    for (uint32_t b = 1; b < q; ++b) {
        const auto counts = root_counts(field, S, b);
        std::complex<double> sb(0.0, 0.0);
        for (uint32_t k = 0; k < p; ++k)
            if (counts[k] != 0)
                sb += double(counts[k]) * roots[k];
        prod *= std::abs(sb);
    }
    return prod;
}

bool amgm_check(const FiniteField& field, SubsetMask S)
{
    const uint32_t q = field.q();
    const double s = double(S.size());
    const double rhs = q == 1 ? 0.0 : std::pow((double(q) - s) * s / (double(q) - 1.0), (double(q) - 1.0) / 2.0);
    return leq_with_slack(weyl_product(field, S), rhs);
}

double weyl_sum_bound(const FiniteField& field)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    if (q > 16)
        raise(errc::range_exceeded, "subset sweep supports q <= 16, got q=" + std::to_string(q));

    std::vector<std::complex<double>> roots(p);
    for (uint32_t k = 0; k < p; ++k) {
        const double angle = 2.0 * std::numbers::pi * double(k) / double(p);
        roots[k] = {std::cos(angle), std::sin(angle)};
    }
    // trace(b*t) lookups flattened once; Gray-code subset sweep keeps the
    // per-root counts incremental, accumulation order is fixed.
    std::vector<uint8_t> trace_tbl(size_t(q) * q);
    for (uint32_t b = 0; b < q; ++b)
        for (uint32_t t = 0; t < q; ++t)
            trace_tbl[size_t(b) * q + t] = uint8_t(field.trace(field.mul(b, t)));

    std::vector<std::vector<int64_t>> cnt(q, std::vector<int64_t>(p, 0));
    double sum = 0.0; // S = empty term has weyl_product 0
    uint64_t prev_gray = 0;
    const uint64_t limit = uint64_t(1) << q;
    for (uint64_t mseq = 1; mseq < limit; ++mseq) {
        const uint64_t gray = mseq ^ (mseq >> 1);
        const uint64_t diff = gray ^ prev_gray;
        const uint32_t t = uint32_t(std::countr_zero(diff));
        const int64_t delta = (gray & diff) ? 1 : -1;
        for (uint32_t b = 0; b < q; ++b)
            cnt[b][trace_tbl[size_t(b) * q + t]] += delta;
        prev_gray = gray;

        const int ssize = std::popcount(gray);
        const double weight = std::abs(double(q) - 2.0 * double(ssize));
        if (weight == 0.0)
            continue;
        double prod = 1.0;
        for (uint32_t b = 1; b < q && prod != 0.0; ++b) {
            std::complex<double> sb(0.0, 0.0);
            for (uint32_t k = 0; k < p; ++k)
                if (cnt[b][k] != 0)
                    sb += double(cnt[b][k]) * roots[k];
            prod *= std::abs(sb);
        }
        sum += weight * prod;
    }
    return (double(q) - 1.0) / (2.0 * double(q)) * sum;
}

double binomial_sum_bound(uint32_t q)
{
    if (q > 64)
        raise(errc::range_exceeded, "explicit bound evaluation supports q <= 64");
    const double e2 = (double(q) - 1.0) / 2.0;
    double sum = 0.0;
    for (uint32_t j = 0; j <= q; ++j) {
        const double weight = std::abs(double(q) - 2.0 * double(j));
        if (weight == 0.0)
            continue;
        const double base = (double(q) - double(j)) * double(j);
        sum += to_double(binomial(q, j)) * weight * std::pow(base, e2);
    }
    const double prefactor = (double(q) - 1.0) / (2.0 * double(q) * std::pow(double(q) - 1.0, e2));
    return prefactor * sum;
}

double theorem_rhs(uint32_t q)
{
    return std::sqrt(2.0 * std::numbers::e / std::numbers::pi) *
           std::exp(double(q) / 2.0 * std::log(double(q)));
}

bool binom_sum_identity(uint32_t q)
{
    if (q > 64)
        raise(errc::range_exceeded, "binomial identity check supports q <= 64");
    BigInt sum = 0;
    for (uint32_t j = 0; j <= q; ++j) {
        const int64_t w = int64_t(q) - 2 * int64_t(j);
        sum += binomial(q, j) * BigInt(w < 0 ? -w : w);
    }
    return sum == BigInt(2) * q * binomial(q - 1, q / 2);
}

bool central_binom_check(uint32_t n)
{
    if (n < 1 || n > 128)
        raise(errc::range_exceeded, "central binomial check supports 1 <= n <= 128");
    const double lhs = to_double(binomial(2 * n, n));
    const double rhs = std::sqrt(2.0 / std::numbers::pi) *
                       std::exp(2.0 * double(n) * std::numbers::ln2) /
                       std::sqrt(2.0 * double(n) + 0.5);
    return lhs <= rhs;
}

bool central_binom_applied(uint32_t q)
{
    if (q < 2 || q > 64)
        raise(errc::range_exceeded, "shifted-form check supports 2 <= q <= 64");
    const double lhs = to_double(binomial(q - 1, q / 2));
    const double rhs = std::sqrt(2.0 / std::numbers::pi) *
                       std::exp(double(q - 1) * std::numbers::ln2) /
                       std::sqrt(double(q) - 0.5);
    return lhs <= rhs;
}

BoundReport theorem_report(uint32_t q, const BigInt& n)
{
    BoundReport r;
    r.q = q;
    r.n = n;
    const BigInt fact = factorial(q - 1);
    r.deviation = n >= fact ? n - fact : fact - n;

    FieldSpec spec = parse_field_spec(std::to_string(q));
    const FiniteField field(spec);
    r.weyl_bound = weyl_sum_bound(field);
    r.binomial_bound = binomial_sum_bound(q);
    r.theorem = theorem_rhs(q);
    const double qq2 = std::exp(double(q) / 2.0 * std::log(double(q)));
    const double dev = to_double(r.deviation);
    r.empirical_constant = dev / qq2;
    r.explicit_constant = r.binomial_bound / qq2;

    r.theorem_ok = leq_with_slack(dev, r.theorem);
    const double s1 = (double(q) - 1.0) / (std::sqrt(double(q) - 0.5) * std::sqrt(double(q)));
    const double s2 = std::pow(double(q) / (double(q) - 1.0), (double(q) - 1.0) / 2.0);
    r.scalar_ineq_ok = s1 < 1.0 && s2 < std::sqrt(std::numbers::e);
    r.chain_checked = q > 2;
    if (r.chain_checked) {
        r.chain_ok = leq_with_slack(dev, r.weyl_bound) &&
                     leq_with_slack(r.weyl_bound, r.binomial_bound) &&
                     leq_with_slack(r.binomial_bound, r.theorem);
    }
    return r;
}

std::string bound_report_json(const BoundReport& r)
{
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["N"] = r.n.str();
    j["deviation"] = r.deviation.str();
    j["weyl_sum_bound"] = r.weyl_bound;
    j["binomial_sum_bound"] = r.binomial_bound;
    j["theorem_rhs"] = r.theorem;
    j["empirical_constant"] = r.empirical_constant;
    j["explicit_constant"] = r.explicit_constant;
    j["chain_checked"] = r.chain_checked;
    j["ok"] = r.all_ok();
    return j.dump();
}

std::string bound_report_csv_header()
{
    return "q,N,deviation,weyl_sum_bound,binomial_sum_bound,theorem_rhs,empirical_constant,"
           "explicit_constant,chain_checked,ok";
}

std::string bound_report_csv(const BoundReport& r)
{
    std::string row = std::to_string(r.q) + "," + r.n.str() + "," + r.deviation.str();
    for (double v : {r.weyl_bound, r.binomial_bound, r.theorem, r.empirical_constant, r.explicit_constant})
        row += "," + fmt_double(v);
    row += std::string(",") + (r.chain_checked ? "true" : "false");
    row += std::string(",") + (r.all_ok() ? "true" : "false");
    return row;
}

std::string bound_report_markdown_header()
{
    return "| q | N | (q-1)! | dev | weyl-bound | binom-bound | theorem | emp.const | expl.const | status |\n"
           "|---:|---:|---:|---:|---:|---:|---:|---:|---:|:---|";
}

std::string bound_report_markdown(const BoundReport& r)
{
    const BigInt fact = factorial(r.q - 1);
    std::string row = "| " + std::to_string(r.q) + " | " + r.n.str() + " | " + fact.str() + " | " +
                      r.deviation.str();
    for (double v : {r.weyl_bound, r.binomial_bound, r.theorem, r.empirical_constant, r.explicit_constant})
        row += " | " + fmt_double(v);
    row += std::string(" | ") + (r.all_ok() ? "ok" : "VIOLATION") +
           (r.chain_checked ? "" : " (theorem link only)") + " |";
    return row;
}

} // namespace permcount
