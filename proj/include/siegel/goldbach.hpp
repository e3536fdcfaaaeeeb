#pragma once

// Goldbach representation counts g(n), the Hardy-Littlewood singular series
// with the twin prime constant, and the WHLE-conjecture auditor: among the
// even multiples of q in (x/2, x], how many fail g(n) >= delta * n / log^2 n,
// measured against the allowance floor(x/8q).
//
// g(n) counts ORDERED pairs (p1, p2) with p1 + p2 = n throughout; a variant
// flag controls whether p = 2 is admitted and whether both primes are capped
// at x (the fold of the theorem_lab sum S needs the capped variant for
// n > x).

#include <cmath>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "siegel/arith.hpp"
#include "siegel/parallel.hpp"

namespace siegel::goldbach {

enum class CountVariant { all_primes, exclude_two, exclude_two_cap_x };

struct GoldbachCount {
    std::uint64_t n = 0;
    std::uint64_t count = 0;
    CountVariant variant = CountVariant::all_primes;
    std::uint64_t cap = 0;  // only meaningful for exclude_two_cap_x
};

inline GoldbachCount goldbach_count(std::uint64_t n, CountVariant variant, const arith::PrimeTable& table,
                                    std::uint64_t cap_x = 0) {
    if (n < 2) throw std::domain_error("goldbach_count: requires n >= 2");
    const bool capped = variant == CountVariant::exclude_two_cap_x;
    if (capped && cap_x == 0) throw std::domain_error("goldbach_count: capped variant requires cap_x");
    const std::uint64_t need = capped ? cap_x : n;
    if (table.limit < need) throw arith::capacity_error("goldbach_count: prime table limit below " + std::to_string(need));

    std::uint64_t lo = (variant == CountVariant::all_primes) ? 2 : 3;
    if (capped && n > cap_x + lo) lo = n - cap_x;  // forces p2 = n - p1 <= cap_x
    std::uint64_t count = 0;
    const std::uint64_t half = n / 2;
    for (std::size_t i = table.first_index_at_least(lo); i < table.primes.size(); ++i) {
        const std::uint64_t p1 = table.primes[i];
        if (p1 > half) break;
        const std::uint64_t p2 = n - p1;
        if (!table.is_prime(p2)) continue;
        if (variant != CountVariant::all_primes && p2 <= 2) continue;
        count += (p1 == p2) ? 1 : 2;
    }
    return {n, count, variant, capped ? cap_x : 0};
}

// ---------------------------------------------------------------------------
// Twin prime constant C2 = prod_{p > 2} (1 - 1/(p-1)^2)
// ---------------------------------------------------------------------------

struct TwinPrimeConstant {
    double value = 0;
    double certified_tail = 0;      // rigorous bound on |value - C2|
    double value_half_limit = 0;    // truncation at limit/2, for stability checks
    std::uint64_t limit = 0;
};

namespace detail {

// Tail of the log-product beyond P: sum_{p>P} |log(1 - (p-1)^-2)| is at most
// 1.02 * sum_{p>P} (p-1)^-2, and with pi(x) < 1.25506 x/log x,
// sum_{p>P} p^-2 < 2*1.25506/(P log P).  A generous constant absorbs the
// (p/(p-1))^2 and log(1-x) slack.
inline double truncation_tail_bound(double P) { return 2.7 / (P * std::log(P)); }

inline std::uint64_t limit_for_tolerance(double tol) {
    double P = 1e5;
    while (truncation_tail_bound(P) > tol) P *= 1.25;
    return static_cast<std::uint64_t>(P);
}

inline TwinPrimeConstant compute_twin_prime_constant(std::uint64_t limit, int jobs) {
    // odd-only segmented sieve; per-segment partial products reduced in
    // segment order so the result does not depend on the worker count
    const std::uint64_t segment = 1u << 22;
    const std::uint64_t nseg = (limit + segment) / segment;
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;

    std::vector<std::uint64_t> base;
    arith::for_each_prime(root, [&](std::uint64_t p) {
        if (p > 2) base.push_back(p);
    });

    std::vector<long double> partial(nseg, 1.0L);
    std::vector<long double> partial_half(nseg, 1.0L);
    const std::uint64_t half_limit = limit / 2;

    par::for_chunks(nseg, static_cast<int>(nseg), jobs, [&](int seg, std::uint64_t, std::uint64_t) {
        const std::uint64_t low = static_cast<std::uint64_t>(seg) * segment;
        const std::uint64_t high = std::min(low + segment - 1, limit);
        std::vector<std::uint8_t> flags(segment / 2, 1);  // odd numbers in [low, high]
        auto mark = [&](std::uint64_t v) {
            if (v >= low && v <= high && (v & 1)) flags[(v - low) / 2] = 0;
        };
        (void)mark;
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = std::max(p * p, ((low + p - 1) / p) * p);
            if ((start & 1) == 0) start += p;  // only odd multiples live in the flag array
            for (std::uint64_t j = start; j <= high; j += 2 * p) flags[(j - low) / 2] = 0;
        }
        long double prod = 1.0L, prod_half = 1.0L;
        for (std::uint64_t v = low | 1; v <= high; v += 2) {
            if (v < 3 || !flags[(v - low) / 2]) continue;
            const long double d = static_cast<long double>(v) - 1.0L;
            const long double factor = 1.0L - 1.0L / (d * d);
            prod *= factor;
            if (v <= half_limit) prod_half *= factor;
        }
        partial[static_cast<std::size_t>(seg)] = prod;
        partial_half[static_cast<std::size_t>(seg)] = prod_half;
    });

    long double full = 1.0L, half = 1.0L;
    for (std::size_t i = 0; i < nseg; ++i) {
        full *= partial[i];
        half *= partial_half[i];
    }
    TwinPrimeConstant c;
    c.value = static_cast<double>(full);
    c.value_half_limit = static_cast<double>(half);
    c.limit = limit;
    c.certified_tail = truncation_tail_bound(static_cast<double>(limit));
    return c;
}

}  // namespace detail

// Cached across calls; recomputed only when a tighter tolerance is requested.
inline TwinPrimeConstant twin_prime_constant_detail(double tol = 1e-10, int jobs = 0) {
    if (!(tol > 0)) throw std::domain_error("twin_prime_constant: tol must be positive");
    static std::mutex mtx;
    static std::optional<TwinPrimeConstant> cache;
    std::lock_guard<std::mutex> lock(mtx);
    if (cache && cache->certified_tail <= tol) return *cache;
    const std::uint64_t limit = detail::limit_for_tolerance(tol);
    cache = detail::compute_twin_prime_constant(limit, jobs > 0 ? jobs : par::default_jobs());
    return *cache;
}

inline double twin_prime_constant(double tol = 1e-10, int jobs = 0) {
    return twin_prime_constant_detail(tol, jobs).value;
}

// S(n) = 2 C2 prod_{p|n, p>2} (p-1)/(p-2) * n / log^2 n, for even n >= 4.
inline double singular_series(std::uint64_t n, double c2_tol = 1e-10) {
    if (n < 4 || n % 2 != 0) throw std::domain_error("singular_series: requires even n >= 4");
    double prod = 1.0;
    for (auto [p, e] : arith::factorize(n).factors)
        if (p > 2) prod *= static_cast<double>(p - 1) / static_cast<double>(p - 2);
    const double ln = std::log(static_cast<double>(n));
    return 2.0 * twin_prime_constant(c2_tol) * prod * static_cast<double>(n) / (ln * ln);
}

// g(n)[all primes] / S(n); converges to 1 slowly, used as a smoke diagnostic.
inline double hl_ratio(std::uint64_t n, const arith::PrimeTable& table, double c2_tol = 1e-10) {
    if (n < 4 || n % 2 != 0) throw std::domain_error("hl_ratio: requires even n >= 4");
    const auto g = goldbach_count(n, CountVariant::all_primes, table);
    return static_cast<double>(g.count) / singular_series(n, c2_tol);
}

// ---------------------------------------------------------------------------
// WHLE audit
// ---------------------------------------------------------------------------

struct WhleAuditReport {
    std::uint64_t q = 0;
    std::uint64_t x = 0;
    double delta = 0;
    std::uint64_t tested_count = 0;            // even multiples of q in (x/2, x]
    std::vector<std::uint64_t> exceptions;     // n with g(n) < delta n / log^2 n
    std::uint64_t allowance = 0;               // floor(x / 8q)
    bool pass = false;                         // exceptions <= allowance
};

inline WhleAuditReport whle_audit(std::uint64_t q, std::uint64_t x, double delta, const arith::PrimeTable& table,
                                  int jobs = 0) {
    if (q < 1) throw std::domain_error("whle_audit: requires q >= 1");
    if (4 * q > x) throw std::domain_error("whle_audit: requires q <= x/4");
    if (table.limit < x) throw arith::capacity_error("whle_audit: prime table limit below x");
    if (!(delta >= 0)) throw std::domain_error("whle_audit: requires delta >= 0");

    WhleAuditReport rep;
    rep.q = q;
    rep.x = x;
    rep.delta = delta;
    rep.allowance = x / (8 * q);

    const std::uint64_t step = std::lcm<std::uint64_t>(2, q);
    std::uint64_t first = (x / 2 / step + 1) * step;  // smallest multiple of step > x/2
    std::vector<std::uint64_t> tested;
    for (std::uint64_t n = first; n <= x; n += step) tested.push_back(n);
    rep.tested_count = tested.size();

    const int chunks = 64;
    std::vector<std::vector<std::uint64_t>> exc(chunks);
    par::for_chunks(tested.size(), chunks, jobs > 0 ? jobs : par::default_jobs(),
                    [&](int c, std::uint64_t b, std::uint64_t e) {
                        for (std::uint64_t i = b; i < e; ++i) {
                            const std::uint64_t n = tested[i];
                            const double ln = std::log(static_cast<double>(n));
                            const double threshold = delta * static_cast<double>(n) / (ln * ln);
                            const auto g = goldbach_count(n, CountVariant::exclude_two_cap_x, table, x);
                            if (static_cast<double>(g.count) < threshold) exc[static_cast<std::size_t>(c)].push_back(n);
                        }
                    });
    for (auto& v : exc) rep.exceptions.insert(rep.exceptions.end(), v.begin(), v.end());
    rep.pass = rep.exceptions.size() <= rep.allowance;
    return rep;
}

}  // namespace siegel::goldbach
