#pragma once

// Independent test oracles.  Everything here deliberately avoids the library
// code paths it is used to check: a second sieve with a different structure,
// trial-division primality, adaptive Simpson instead of Gauss-Legendre,
// brute-force quadratic residues, direct exponential sums, and a
// divisor-driven scan for reduced quadratic forms.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracles {

inline bool trial_division_is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Plain odd-only Eratosthenes, structured differently from the library's
// segmented streaming sieve.
inline std::vector<std::uint64_t> odd_sieve_primes(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    if (limit >= 2) out.push_back(2);
    if (limit < 3) return out;
    const std::uint64_t m = (limit - 1) / 2;  // flags for 3,5,7,...
    std::vector<std::uint8_t> composite(m + 1, 0);
    for (std::uint64_t i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
        if (composite[i]) continue;
        const std::uint64_t p = 2 * i + 1;
        for (std::uint64_t j = (p * p - 1) / 2; j <= m; j += p) composite[j] = 1;
    }
    for (std::uint64_t i = 1; i <= m; ++i)
        if (!composite[i]) out.push_back(2 * i + 1);
    return out;
}

inline std::uint64_t phi_by_gcd_count(std::uint64_t n) {
    std::uint64_t c = 0;
    for (std::uint64_t a = 1; a <= n; ++a)
        if (std::gcd(a, n) == 1) ++c;
    return c;
}

// Legendre symbol for odd prime p via the set of nonzero squares mod p.
inline int legendre_by_squares(std::int64_t d, std::uint64_t p) {
    std::int64_t r = d % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    if (r == 0) return 0;
    std::set<std::uint64_t> squares;
    for (std::uint64_t a = 1; a < p; ++a) squares.insert(a * a % p);
    return squares.count(static_cast<std::uint64_t>(r)) ? 1 : -1;
}

// Adaptive Simpson on the untransformed integrand.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 40) {
    auto simpson = [&](double lo, double hi) {
        const double mid = 0.5 * (lo + hi);
        return (hi - lo) / 6.0 * (f(lo) + 4.0 * f(mid) + f(hi));
    };
    struct Rec {
        double a, b, whole, tol;
        int depth;
    };
    std::vector<Rec> stack{{a, b, simpson(a, b), tol, depth}};
    double total = 0.0;
    while (!stack.empty()) {
        const Rec r = stack.back();
        stack.pop_back();
        const double m = 0.5 * (r.a + r.b);
        const double left = simpson(r.a, m), right = simpson(m, r.b);
        if (r.depth <= 0 || std::abs(left + right - r.whole) < 15.0 * r.tol) {
            total += left + right + (left + right - r.whole) / 15.0;
        } else {
            stack.push_back({r.a, m, left, r.tol / 2.0, r.depth - 1});
            stack.push_back({m, r.b, right, r.tol / 2.0, r.depth - 1});
        }
    }
    return total;
}

inline double li_oracle(double x, double tol = 1e-11) {
    if (x <= 2.0) return 0.0;
    return adaptive_simpson([](double t) { return 1.0 / std::log(t); }, 2.0, x, tol);
}

// Direct exponential Ramanujan sum over the units.
inline std::complex<double> ramanujan_direct(std::uint64_t q, std::int64_t k) {
    std::complex<double> s = 0.0;
    for (std::uint64_t a = 1; a <= q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const double ang = 2.0 * 3.14159265358979323846 * static_cast<double>(a % q) *
                           static_cast<double>(((k % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q)) %
                                               static_cast<std::int64_t>(q)) /
                           static_cast<double>(q);
        s += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

// Reduced forms of discriminant -q found by scanning b and factoring
// (b^2+q)/4 into a*c; independent of the library's a-first enumeration.
inline std::uint64_t class_number_oracle(std::uint64_t q) {
    std::set<std::array<std::int64_t, 3>> forms;
    const std::int64_t qi = static_cast<std::int64_t>(q);
    const std::int64_t bmax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q))) + 2;
    for (std::int64_t b = -bmax; b <= bmax; ++b) {
        const std::int64_t num = b * b + qi;
        if (num % 4 != 0) continue;
        const std::int64_t m = num / 4;  // = a*c
        for (std::int64_t a = 1; a * a <= m; ++a) {
            if (m % a != 0) continue;
            const std::int64_t c = m / a;
            if (-a < b && b <= a && a <= c && !(a == c && b < 0)) forms.insert({a, b, c});
        }
    }
    return forms.size();
}

// Ordered Goldbach count by a full double loop over prime pairs.
inline std::uint64_t goldbach_double_loop(std::uint64_t n, const std::vector<std::uint64_t>& primes,
                                          bool exclude_two) {
    std::uint64_t count = 0;
    for (std::uint64_t p1 : primes) {
        if (p1 >= n) break;
        if (exclude_two && p1 <= 2) continue;
        for (std::uint64_t p2 : primes) {
            if (p2 >= n) break;
            if (exclude_two && p2 <= 2) continue;
            if (p1 + p2 == n) ++count;
        }
    }
    return count;
}

}  // namespace oracles
