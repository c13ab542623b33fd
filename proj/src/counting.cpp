#include "permcount/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <thread>

#include <json.hpp>

#include "permcount/permpoly.hpp"

namespace permcount {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_valid_mask(const FiniteField& field, SubsetMask S)
{
    const uint32_t q = field.q();
    if (q < 64 && (S.bits >> q) != 0)
        raise(errc::range_exceeded, "subset mask has bits above q=" + std::to_string(q));
}

// trace(b * t) for all pairs, the only field data the character-sum
// engines touch.
std::vector<uint8_t> trace_product_table(const FiniteField& field)
{
    const uint32_t q = field.q();
    std::vector<uint8_t> table(size_t(q) * q);
    for (uint32_t b = 0; b < q; ++b)
        for (uint32_t t = 0; t < q; ++t)
            table[size_t(b) * q + t] = uint8_t(field.trace(field.mul(b, t)));
    return table;
}

// Lexicographic successor of a sequence of distinct values; returns the
// first changed index, or -1 when the sequence was the last one.
int next_permutation_pivot(std::vector<uint32_t>& a)
{
    int i = int(a.size()) - 2;
    while (i >= 0 && a[i] > a[i + 1])
        --i;
    if (i < 0)
        return -1;
    int j = int(a.size()) - 1;
    while (a[j] < a[i])
        --j;
    std::swap(a[i], a[j]);
    std::reverse(a.begin() + i + 1, a.end());
    return i;
}

// One shard of the exhaustive criterion count: sigma(0) = v fixed, the
// remaining q-1 images enumerated in lexicographic order with incremental
// partial sums of sum_c c*sigma(c).
uint64_t criterion_shard(const FiniteField& field, uint32_t v,
                         const std::vector<uint32_t>& mul_flat,
                         const std::vector<uint32_t>& add_flat)
{
    const uint32_t q = field.q();
    const uint32_t m = q - 1;
    std::vector<uint32_t> tail;
    tail.reserve(m);
    for (uint32_t x = 0; x < q; ++x)
        if (x != v)
            tail.push_back(x);

    // psum[k] = sum over positions 1..k of c*sigma(c); element 0 contributes 0
    std::vector<uint32_t> psum(m + 1, 0);
    auto recompute_from = [&](uint32_t first) {
        for (uint32_t k = first; k < m; ++k) {
            const uint32_t contrib = mul_flat[size_t(k + 1) * q + tail[k]];
            psum[k + 1] = add_flat[size_t(psum[k]) * q + contrib];
        }
    };
    recompute_from(0);

    uint64_t count = 0;
    for (;;) {
        if (psum[m] == 0)
            ++count;
        const int pivot = next_permutation_pivot(tail);
        if (pivot < 0)
            break;
        recompute_from(uint32_t(pivot));
    }
    return count;
}

// Interpolation shard: every permutation with sigma(0) = v is interpolated
// and its degree compared against q-2.
uint64_t interpolation_shard(const FiniteField& field, uint32_t v)
{
    const uint32_t q = field.q();
    const uint32_t m = q - 1;
    std::vector<uint32_t> tail;
    tail.reserve(m);
    for (uint32_t x = 0; x < q; ++x)
        if (x != v)
            tail.push_back(x);

    std::vector<uint32_t> images(q), coeffs(q);
    images[0] = v;
    uint64_t count = 0;
    for (;;) {
        std::copy(tail.begin(), tail.end(), images.begin() + 1);
        const int degree = detail::interpolate_coeffs(field, images, coeffs);
        if (degree < int(q) - 2)
            ++count;
        if (next_permutation_pivot(tail) < 0)
            break;
    }
    return count;
}

BigInt run_sharded(const FiniteField& field, unsigned workers,
                   const std::function<uint64_t(uint32_t)>& shard)
{
    const uint32_t q = field.q();
    std::vector<uint64_t> counts(q, 0);
    const unsigned nthreads = std::max(1u, std::min<unsigned>(workers, q));
    if (nthreads == 1) {
        for (uint32_t v = 0; v < q; ++v)
            counts[v] = shard(v);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                for (uint32_t v = t; v < q; v += nthreads)
                    counts[v] = shard(v);
            });
        }
        for (auto& th : pool)
            th.join();
    }
    BigInt total = 0;
    for (uint32_t v = 0; v < q; ++v)
        total += counts[v];
    return total;
}

} // namespace

const char* method_name(Method m)
{
    switch (m) {
    case Method::interpolation:       return "interpolation";
    case Method::criterion:           return "criterion";
    case Method::inclusion_exclusion: return "inclusion-exclusion";
    case Method::permanent:           return "permanent";
    }
    return "?";
}

Method parse_method(const std::string& name)
{
    if (name == "interpolation")
        return Method::interpolation;
    if (name == "criterion")
        return Method::criterion;
    if (name == "inclexcl" || name == "inclusion-exclusion")
        return Method::inclusion_exclusion;
    if (name == "permanent")
        return Method::permanent;
    raise(errc::parse_error, "unknown method '" + name + "'");
}

Method auto_method(uint32_t q)
{
    if (q <= 5)
        return Method::interpolation;
    if (q <= 11)
        return Method::criterion;
    return Method::permanent;
}

std::string count_result_json(const CountResult& r, bool include_elapsed)
{
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["N"] = r.n.str();
    j["method"] = r.method;
    if (include_elapsed)
        j["elapsed_s"] = r.elapsed_s;
    j["field"] = r.field;
    return j.dump();
}

std::string count_result_csv_header(bool include_elapsed)
{
    return include_elapsed ? "q,N,method,elapsed_s,field" : "q,N,method,field";
}

std::string count_result_csv(const CountResult& r, bool include_elapsed)
{
    std::string row = std::to_string(r.q) + "," + r.n.str() + "," + r.method;
    if (include_elapsed) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", r.elapsed_s);
        row += std::string(",") + buf;
    }
    // explicit moduli carry commas, so the field column is quoted as needed
    const bool quote = r.field.find(',') != std::string::npos;
    row += quote ? ",\"" + r.field + "\"" : "," + r.field;
    return row;
}

CountResult count_result_from_json(const std::string& line)
{
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("q") || !j.contains("N") ||
        !j.contains("method") || !j.contains("field"))
        raise(errc::parse_error, "malformed result record: " + line);
    CountResult r;
    r.q = j.at("q").get<uint32_t>();
    r.n = BigInt(j.at("N").get<std::string>());
    r.method = j.at("method").get<std::string>();
    r.elapsed_s = j.value("elapsed_s", 0.0);
    r.field = j.at("field").get<std::string>();
    return r;
}

CountResult count_exhaustive(const FiniteField& field, bool via_interpolation, unsigned workers)
{
    const uint32_t q = field.q();
    if (q == 2)
        via_interpolation = true; // the degree criterion needs q > 2
    if (via_interpolation && q > 8)
        raise(errc::range_exceeded, "interpolation enumeration supports q <= 8, got q=" + std::to_string(q));
    if (!via_interpolation && q > 13)
        raise(errc::range_exceeded, "criterion enumeration supports q <= 13, got q=" + std::to_string(q));

    const auto t0 = Clock::now();
    BigInt total;
    if (via_interpolation) {
        total = run_sharded(field, workers, [&](uint32_t v) { return interpolation_shard(field, v); });
    } else {
        // flat add/mul tables keep the inner loop free of digit arithmetic
        std::vector<uint32_t> mul_flat(size_t(q) * q), add_flat(size_t(q) * q);
        for (uint32_t a = 0; a < q; ++a)
            for (uint32_t b = 0; b < q; ++b) {
                mul_flat[size_t(a) * q + b] = field.mul(a, b);
                add_flat[size_t(a) * q + b] = field.add(a, b);
            }
        total = run_sharded(field, workers,
                            [&](uint32_t v) { return criterion_shard(field, v, mul_flat, add_flat); });
    }

    CountResult r;
    r.q = q;
    r.n = total;
    r.method = via_interpolation ? "interpolation" : "criterion";
    r.elapsed_s = seconds_since(t0);
    r.field = field.spec().to_string();
    return r;
}

BigInt ns_bruteforce(const FiniteField& field, SubsetMask S)
{
    require_valid_mask(field, S);
    const uint32_t q = field.q();
    std::vector<uint32_t> elems;
    for (uint32_t t = 0; t < q; ++t)
        if (S.contains(t))
            elems.push_back(t);

    double cost = 1;
    for (uint32_t c = 0; c < q; ++c)
        cost *= double(elems.size());
    if (cost > 1e9)
        raise(errc::range_exceeded, "|S|^q exceeds enumeration budget 1e9");
    if (elems.empty())
        return 0;

    // odometer over the q assignment positions with prefix sums of
    // sum_c c*f(c); bumping position c-1 only recomputes the tail
    uint64_t count = 0;
    std::vector<uint32_t> choice(q, 0);
    std::vector<uint32_t> psum(q + 1, 0);
    for (uint32_t c = 0; c < q; ++c)
        psum[c + 1] = field.add(psum[c], field.mul(c, elems[0]));
    for (;;) {
        if (psum[q] == 0)
            ++count;
        uint32_t c = q;
        while (c > 0 && choice[c - 1] + 1 == elems.size()) {
            choice[c - 1] = 0;
            --c;
        }
        if (c == 0)
            break;
        ++choice[c - 1];
        for (uint32_t k = c - 1; k < q; ++k)
            psum[k + 1] = field.add(psum[k], field.mul(k, elems[choice[k]]));
    }
    return BigInt(count);
}

BigInt ns_formula(const FiniteField& field, SubsetMask S)
{
    require_valid_mask(field, S);
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    const auto trace_tbl = trace_product_table(field);

    CycInt product = cyc_from_int(p, 1);
    bool zero_factor = false;
    for (uint32_t b = 0; b < q && !zero_factor; ++b) {
        std::vector<int64_t> counts(p, 0);
        for (uint32_t t = 0; t < q; ++t)
            if (S.contains(t))
                counts[trace_tbl[size_t(b) * q + t]]++;
        const CycInt factor = cyc_from_root_counts(p, counts);
        if (factor.is_zero()) {
            zero_factor = true;
            break;
        }
        product *= factor;
    }

    BigInt numerator = bigpow(BigInt(S.size()), q);
    if (!zero_factor) {
        if (!product.is_rational())
            raise(errc::non_integer_result, "character product is not a rational integer");
        numerator += BigInt(q - 1) * cyc_as_integer(product);
    }
    if (numerator % q != 0)
        raise(errc::non_integer_result, "subset count " + numerator.str() + " not divisible by q");
    return numerator / q;
}

CountResult count_inclusion_exclusion(const FiniteField& field)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    if (q == 2)
        raise(errc::field_too_small,
              "inclusion-exclusion computes the zero-sum criterion count, undefined as a degree "
              "count at q=2");
    if (q > 16)
        raise(errc::range_exceeded, "inclusion-exclusion supports q <= 16, got q=" + std::to_string(q));

    const auto t0 = Clock::now();
    const auto trace_tbl = trace_product_table(field);

    std::vector<BigInt> size_pow(q + 1);
    for (uint32_t s = 0; s <= q; ++s)
        size_pow[s] = bigpow(BigInt(s), q);

    // Gray-code sweep over subsets; cnt[b][k] = #{t in S : Tr(b t) = k}
    std::vector<std::vector<int64_t>> cnt(q, std::vector<int64_t>(p, 0));
    BigInt acc = 0; // S = empty contributes n_S = 0
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

        const uint32_t ssize = uint32_t(std::popcount(gray));
        CycInt product = cyc_from_int(p, 1);
        bool zero_factor = false;
        for (uint32_t b = 0; b < q; ++b) {
            const CycInt factor = cyc_from_root_counts(p, cnt[b]);
            if (factor.is_zero()) {
                zero_factor = true;
                break;
            }
            product *= factor;
        }
        BigInt numerator = size_pow[ssize];
        if (!zero_factor) {
            if (!product.is_rational())
                raise(errc::non_integer_result, "character product is not a rational integer");
            numerator += BigInt(q - 1) * cyc_as_integer(product);
        }
        if (numerator % q != 0)
            raise(errc::non_integer_result, "subset count not divisible by q");
        const BigInt n_S = numerator / q;
        if ((q - ssize) & 1)
            acc -= n_S;
        else
            acc += n_S;
    }

    if (acc < 0 || acc > factorial(q))
        raise(errc::non_integer_result, "inclusion-exclusion total out of range: " + acc.str());

    CountResult r;
    r.q = q;
    r.n = acc;
    r.method = "inclusion-exclusion";
    r.elapsed_s = seconds_since(t0);
    r.field = field.spec().to_string();
    return r;
}

bool surjection_identity_check(uint32_t q)
{
    if (q > 64)
        raise(errc::range_exceeded, "surjection identity check supports q <= 64");
    BigInt sum = 0;
    for (uint32_t j = 0; j <= q; ++j) {
        const BigInt term = binomial(q, j) * bigpow(BigInt(j), q);
        if ((q - j) & 1)
            sum -= term;
        else
            sum += term;
    }
    return sum == BigInt(q) * factorial(q - 1);
}

CycInt ryser_permanent(const CycMatrix& entries, unsigned workers)
{
    const size_t n = entries.size();
    if (n == 0)
        raise(errc::size_mismatch, "empty matrix");
    for (const auto& row : entries)
        if (row.size() != n)
            raise(errc::size_mismatch, "matrix is not square");
    if (n > 20)
        raise(errc::range_exceeded, "Ryser evaluation supports n <= 20, got n=" + std::to_string(n));
    const uint32_t p = entries[0][0].order();
    for (const auto& row : entries)
        for (const auto& e : row)
            if (e.order() != p)
                raise(errc::mixed_order, "matrix entries mix root orders");

    const uint64_t total_subsets = (uint64_t(1) << n) - 1;
    const unsigned nchunks = std::max<uint64_t>(1, std::min<uint64_t>(workers, total_subsets));

    std::vector<CycInt> partials(nchunks, CycInt(p));
    auto run_chunk = [&](unsigned chunk) {
        const uint64_t begin = 1 + total_subsets * chunk / nchunks;
        const uint64_t end = 1 + total_subsets * (chunk + 1) / nchunks;
        if (begin >= end)
            return;
        // seed row sums for the first Gray code of the chunk
        uint64_t gray = begin ^ (begin >> 1);
        std::vector<CycInt> rowsum(n, CycInt(p));
        for (size_t j = 0; j < n; ++j)
            if ((gray >> j) & 1)
                for (size_t i = 0; i < n; ++i)
                    rowsum[i] += entries[i][j];

        CycInt acc(p);
        for (uint64_t mseq = begin; mseq < end; ++mseq) {
            const uint64_t g = mseq ^ (mseq >> 1);
            if (mseq != begin) {
                const uint64_t diff = g ^ gray;
                const size_t j = size_t(std::countr_zero(diff));
                if (g & diff)
                    for (size_t i = 0; i < n; ++i)
                        rowsum[i] += entries[i][j];
                else
                    for (size_t i = 0; i < n; ++i)
                        rowsum[i] -= entries[i][j];
                gray = g;
            }
            CycInt prod = rowsum[0];
            bool zero = prod.is_zero();
            for (size_t i = 1; i < n && !zero; ++i) {
                prod *= rowsum[i];
                zero = prod.is_zero();
            }
            if (zero)
                continue;
            if ((n - std::popcount(g)) & 1)
                acc -= prod;
            else
                acc += prod;
        }
        partials[chunk] = acc;
    };

    if (nchunks == 1) {
        run_chunk(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nchunks);
        for (unsigned c = 0; c < nchunks; ++c)
            pool.emplace_back(run_chunk, c);
        for (auto& th : pool)
            th.join();
    }

    CycInt total(p);
    for (const auto& part : partials)
        total += part;
    return total;
}

CountResult count_via_permanent(const FiniteField& field, unsigned workers)
{
    const uint32_t q = field.q();
    const uint32_t p = field.p();
    if (q == 2)
        raise(errc::field_too_small,
              "the permanent identity computes the zero-sum criterion count, undefined as a "
              "degree count at q=2");
    if (q > 20)
        raise(errc::range_exceeded, "permanent method supports q <= 20, got q=" + std::to_string(q));

    const auto t0 = Clock::now();
    const auto trace_tbl = trace_product_table(field);
    CycMatrix m(q, std::vector<CycInt>(q, CycInt(p)));
    for (uint32_t c = 0; c < q; ++c)
        for (uint32_t d = 0; d < q; ++d)
            m[c][d] = cyc_from_root(p, trace_tbl[size_t(c) * q + d]);

    const CycInt per = ryser_permanent(m, workers);
    if (!per.is_rational())
        raise(errc::non_integer_result, "character-matrix permanent is not a rational integer");
    const BigInt per_int = cyc_as_integer(per);

    BigInt numerator = BigInt(q) * factorial(q - 1) + BigInt(q - 1) * per_int;
    if (numerator % q != 0)
        raise(errc::non_integer_result, "permanent identity numerator not divisible by q");
    BigInt n = numerator / q;
    if (n < 0 || n > factorial(q))
        raise(errc::non_integer_result, "permanent count out of range: " + n.str());

    CountResult r;
    r.q = q;
    r.n = n;
    r.method = "permanent";
    r.elapsed_s = seconds_since(t0);
    r.field = field.spec().to_string();
    return r;
}

CountResult count_permutations(const FiniteField& field, Method method, unsigned workers)
{
    switch (method) {
    case Method::interpolation:
        return count_exhaustive(field, true, workers);
    case Method::criterion:
        return count_exhaustive(field, false, workers);
    case Method::inclusion_exclusion:
        return count_inclusion_exclusion(field);
    case Method::permanent:
        return count_via_permanent(field, workers);
    }
    raise(errc::parse_error, "invalid method");
}

} // namespace permcount
