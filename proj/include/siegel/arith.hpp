#pragma once

// Exact integer arithmetic layer: prime sieves, factorization, multiplicative
// functions, the Kronecker symbol, and the offset logarithmic integral
// li(x) = int_2^x dt/log t.  Everything here is deterministic; PrimeTable is
// immutable after construction and safe to share across threads.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace siegel::arith {

struct capacity_error : std::runtime_error {
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t default_sieve_cap = 100'000'000;

// ---------------------------------------------------------------------------
// Prime sieves
// ---------------------------------------------------------------------------

// Streams every prime <= limit, ascending, through f(p).  Segmented, so the
// working set stays small no matter how large the limit is.
template <class F>
void for_each_prime(std::uint64_t limit, F&& f) {
    if (limit < 2) return;
    const std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit))) + 1;

    std::vector<std::uint8_t> small(root + 1, 1);
    small[0] = 0;
    if (root >= 1) small[1] = 0;
    for (std::uint64_t i = 2; i * i <= root; ++i)
        if (small[i])
            for (std::uint64_t j = i * i; j <= root; j += i) small[j] = 0;

    std::vector<std::uint64_t> base;
    for (std::uint64_t i = 2; i <= root; ++i)
        if (small[i]) {
            base.push_back(i);
            if (i <= limit) f(i);
        }

    const std::uint64_t segment = 1u << 20;
    std::vector<std::uint8_t> sieve(segment);
    for (std::uint64_t low = root + 1; low <= limit; low += segment) {
        const std::uint64_t high = std::min(low + segment - 1, limit);
        std::fill(sieve.begin(), sieve.begin() + (high - low + 1), 1);
        for (std::uint64_t p : base) {
            if (p * p > high) break;
            std::uint64_t start = ((low + p - 1) / p) * p;
            if (start < p * p) start = p * p;
            for (std::uint64_t j = start; j <= high; j += p) sieve[j - low] = 0;
        }
        for (std::uint64_t n = low; n <= high; ++n)
            if (sieve[n - low]) f(n);
    }
}

// Primality flags plus the ascending prime list up to `limit`.
struct PrimeTable {
    std::uint64_t limit = 0;
    std::vector<std::uint8_t> membership;   // membership[n] == 1 iff n prime
    std::vector<std::uint64_t> primes;

    bool is_prime(std::uint64_t n) const { return n <= limit && membership[n]; }
    std::size_t count() const { return primes.size(); }

    // number of primes <= x
    std::uint64_t pi(std::uint64_t x) const {
        auto it = std::upper_bound(primes.begin(), primes.end(), x);
        return static_cast<std::uint64_t>(it - primes.begin());
    }

    // index of the first prime >= lo
    std::size_t first_index_at_least(std::uint64_t lo) const {
        return static_cast<std::size_t>(std::lower_bound(primes.begin(), primes.end(), lo) - primes.begin());
    }
};

inline PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t memory_cap = default_sieve_cap) {
    if (limit < 2) throw std::domain_error("sieve_primes: limit must be >= 2");
    if (limit > memory_cap)
        throw capacity_error("sieve_primes: limit " + std::to_string(limit) +
                             " exceeds memory cap " + std::to_string(memory_cap));
    PrimeTable t;
    t.limit = limit;
    t.membership.assign(limit + 1, 0);
    for_each_prime(limit, [&](std::uint64_t p) {
        t.membership[p] = 1;
        t.primes.push_back(p);
    });
    return t;
}

// ---------------------------------------------------------------------------
// Factorization and multiplicative functions
// ---------------------------------------------------------------------------

struct Factorization {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, std::uint32_t>> factors;  // (prime, exponent), primes ascending
};

// Deterministic trial division; fine at desk scale (n < 2^63).
inline Factorization factorize(std::uint64_t n) {
    if (n == 0) throw std::domain_error("factorize: n must be positive");
    Factorization f;
    f.n = n;
    std::uint64_t m = n;
    auto strip = [&](std::uint64_t p) {
        std::uint32_t e = 0;
        while (m % p == 0) { m /= p; ++e; }
        if (e) f.factors.emplace_back(p, e);
    };
    strip(2);
    strip(3);
    for (std::uint64_t p = 5; p * p <= m; p += 6) {
        strip(p);
        strip(p + 2);
    }
    if (m > 1) f.factors.emplace_back(m, 1);
    return f;
}

inline std::uint64_t euler_phi(const Factorization& f) {
    std::uint64_t phi = 1;
    for (auto [p, e] : f.factors) {
        phi *= p - 1;
        for (std::uint32_t i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

inline int mobius(const Factorization& f) {
    for (auto [p, e] : f.factors)
        if (e > 1) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

inline std::uint32_t omega(const Factorization& f) { return static_cast<std::uint32_t>(f.factors.size()); }

inline std::uint64_t euler_phi(std::uint64_t n) { return euler_phi(factorize(n)); }

inline std::vector<std::uint64_t> divisors(const Factorization& f) {
    std::vector<std::uint64_t> d{1};
    for (auto [p, e] : f.factors) {
        const std::size_t m = d.size();
        std::uint64_t pk = 1;
        for (std::uint32_t i = 1; i <= e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < m; ++j) d.push_back(d[j] * pk);
        }
    }
    std::sort(d.begin(), d.end());
    return d;
}

inline bool is_squarefree(const Factorization& f) {
    for (auto [p, e] : f.factors)
        if (e > 1) return false;
    return true;
}

// d = 1 (mod 4) squarefree, or d = 4m with m = 2,3 (mod 4) squarefree.
// The trivial discriminant d = 1 is excluded.
inline bool is_fundamental_discriminant(std::int64_t d) {
    if (d == 0 || d == 1) return false;
    const std::int64_t m4 = ((d % 4) + 4) % 4;
    if (m4 == 1) return is_squarefree(factorize(static_cast<std::uint64_t>(d < 0 ? -d : d)));
    if (m4 != 0) return false;
    const std::int64_t m = d / 4;
    const std::int64_t mm4 = ((m % 4) + 4) % 4;
    if (mm4 != 2 && mm4 != 3) return false;
    return is_squarefree(factorize(static_cast<std::uint64_t>(m < 0 ? -m : m)));
}

// ---------------------------------------------------------------------------
// Kronecker symbol
// ---------------------------------------------------------------------------

// Standard extension of the Jacobi symbol: (d/2) via d mod 8, (d/-1) by the
// sign of d, (d/0) = 1 iff d = +-1, and (0/n) = 1 iff n = +-1.
inline int kronecker(std::int64_t a, std::int64_t n) {
    if (a == 0 && n == 0) throw std::domain_error("kronecker: (0/0) undefined");
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    if ((a & 1) == 0 && (n & 1) == 0) return 0;

    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) result = -result;
    }
    // pull out the even part of n; each factor of 2 contributes (a/2)
    int twos = 0;
    while ((n & 1) == 0) { n >>= 1; ++twos; }
    if (twos & 1) {
        const std::int64_t amod8 = ((a % 8) + 8) % 8;
        if (amod8 == 3 || amod8 == 5) result = -result;
    }
    a %= n;
    if (a < 0) a += n;
    // now a Jacobi symbol (a/n) with n odd positive
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const std::int64_t nmod8 = n % 8;
            if (nmod8 == 3 || nmod8 == 5) result = -result;
        }
        std::swap(a, n);
        if ((a % 4 == 3) && (n % 4 == 3)) result = -result;
        a %= n;
    }
    return (n == 1) ? result : 0;
}

// ---------------------------------------------------------------------------
// Quadrature: int_2^x u^(beta-1)/log u du
// ---------------------------------------------------------------------------

namespace detail {

// 16-point Gauss-Legendre nodes/weights on [-1,1].
inline const double gl_nodes[8] = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499};
inline const double gl_weights[8] = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < 8; ++i)
        s += gl_weights[i] * (f(c - h * gl_nodes[i]) + f(c + h * gl_nodes[i]));
    return s * h;
}

// Composite Gauss-Legendre with panel doubling until two refinement levels
// agree within tol.
template <class F>
double integrate(F&& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double prev = gauss16(f, a, b);
    for (int panels = 2; panels <= (1 << 20); panels *= 2) {
        double s = 0.0;
        const double h = (b - a) / panels;
        for (int i = 0; i < panels; ++i) s += gauss16(f, a + i * h, a + (i + 1) * h);
        if (std::abs(s - prev) <= tol) return s;
        prev = s;
    }
    return prev;
}

}  // namespace detail

// Offset logarithmic integral int_2^x dt/log t (lower limit 2, not 0); the
// integration runs over v = log t where the integrand e^v/v is smooth.
// Absolute error <= 1e-10 * max(1, value).
inline double li(double x) {
    if (!(x >= 2.0)) throw std::domain_error("li: requires x >= 2");
    if (x == 2.0) return 0.0;
    auto g = [](double v) { return std::exp(v) / v; };
    const double rough = x / std::log(x);
    return detail::integrate(g, std::log(2.0), std::log(x), 1e-11 * std::max(1.0, rough));
}

// int_2^x u^(beta-1)/log u du for 0 < beta <= 1, x >= 2 (beta = 1 gives li).
inline double power_log_integral(double beta, double x) {
    if (!(x >= 2.0)) throw std::domain_error("power_log_integral: requires x >= 2");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("power_log_integral: requires 0 < beta <= 1");
    if (x == 2.0) return 0.0;
    auto g = [beta](double v) { return std::exp(beta * v) / v; };
    const double rough = std::pow(x, beta) / (beta * std::log(x));
    return detail::integrate(g, std::log(2.0), std::log(x), 1e-11 * std::max(1.0, rough));
}

}  // namespace siegel::arith
