#include <catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "siegel/arith.hpp"

using namespace siegel;

TEST_CASE("sieve_primes small cases") {
    const auto t = arith::sieve_primes(10);
    REQUIRE(t.primes == std::vector<std::uint64_t>{2, 3, 5, 7});
    REQUIRE(arith::sieve_primes(100).count() == 25);
}

TEST_CASE("sieve_primes agrees with trial division up to 1e5") {
    const auto t = arith::sieve_primes(100000);
    for (std::uint64_t n = 0; n <= 100000; n += 1)
        REQUIRE(static_cast<bool>(t.is_prime(n)) == oracles::trial_division_is_prime(n));
}

TEST_CASE("sieve_primes at 1e6 matches the independent odd sieve") {
    const auto t = arith::sieve_primes(1000000);
    REQUIRE(t.count() == 78498);
    const auto oracle = oracles::odd_sieve_primes(1000000);
    REQUIRE(t.primes == oracle);
}

TEST_CASE("sieve capacity and domain errors") {
    REQUIRE_THROWS_AS(arith::sieve_primes(1), std::domain_error);
    REQUIRE_THROWS_AS(arith::sieve_primes(2000, 1000), arith::capacity_error);
}

TEST_CASE("factorize") {
    REQUIRE(arith::factorize(1).factors.empty());
    const auto f12 = arith::factorize(12);
    REQUIRE(f12.factors == std::vector<std::pair<std::uint64_t, std::uint32_t>>{{2, 2}, {3, 1}});
    const auto f = arith::factorize(6677);
    REQUIRE(f.factors == std::vector<std::pair<std::uint64_t, std::uint32_t>>{{11, 1}, {607, 1}});
    REQUIRE_THROWS_AS(arith::factorize(0), std::domain_error);

    // reconstruction property on a deterministic sample
    std::mt19937_64 rng(12345);
    for (int i = 0; i < 200; ++i) {
        const std::uint64_t n = rng() % 1000000 + 1;
        const auto fn = arith::factorize(n);
        std::uint64_t prod = 1;
        std::uint64_t last = 0;
        for (auto [p, e] : fn.factors) {
            REQUIRE(p > last);
            REQUIRE(e >= 1);
            REQUIRE(oracles::trial_division_is_prime(p));
            last = p;
            for (std::uint32_t j = 0; j < e; ++j) prod *= p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("multiplicative functions: conventions and hand values") {
    const auto f1 = arith::factorize(1);
    REQUIRE(arith::euler_phi(f1) == 1);
    REQUIRE(arith::mobius(f1) == 1);
    REQUIRE(arith::omega(f1) == 0);

    const auto f12 = arith::factorize(12);
    REQUIRE(arith::euler_phi(f12) == 4);
    REQUIRE(arith::mobius(f12) == 0);
    REQUIRE(arith::omega(f12) == 2);

    const auto f4 = arith::factorize(4);
    REQUIRE(arith::euler_phi(f4) == 2);
    REQUIRE(arith::mobius(f4) == 0);
    REQUIRE(arith::omega(f4) == 1);
}

TEST_CASE("euler_phi equals the gcd count for all n <= 1e4") {
    for (std::uint64_t n = 1; n <= 10000; ++n) REQUIRE(arith::euler_phi(n) == oracles::phi_by_gcd_count(n));
}

TEST_CASE("kronecker: identities and sample values") {
    for (std::int64_t d : {-7, -3, 0, 1, 2, 5, 12}) REQUIRE(arith::kronecker(d, 1) == 1);
    REQUIRE(arith::kronecker(-3, 3) == 0);
    REQUIRE(arith::kronecker(-4, 3) == -1);
    REQUIRE(arith::kronecker(0, 1) == 1);
    REQUIRE(arith::kronecker(0, -1) == 1);
    REQUIRE(arith::kronecker(5, 0) == 0);
    REQUIRE(arith::kronecker(1, 0) == 1);
    REQUIRE_THROWS_AS(arith::kronecker(0, 0), std::domain_error);
}

TEST_CASE("kronecker matches brute-force quadratic residues at odd primes") {
    const auto primes = oracles::odd_sieve_primes(500);
    for (std::int64_t d = -50; d <= 50; ++d) {
        for (std::uint64_t p : primes) {
            if (p == 2) continue;
            REQUIRE(arith::kronecker(d, static_cast<std::int64_t>(p)) ==
                    oracles::legendre_by_squares(d, p));
        }
    }
}

TEST_CASE("kronecker is completely multiplicative in n, zero iff common factor") {
    for (std::int64_t d : {-20, -15, -4, -3, 5, 8, 21}) {
        for (std::int64_t m = 1; m <= 60; ++m)
            for (std::int64_t n = 1; n <= 60; ++n)
                REQUIRE(arith::kronecker(d, m * n) == arith::kronecker(d, m) * arith::kronecker(d, n));
        const std::uint64_t ad = static_cast<std::uint64_t>(d < 0 ? -d : d);
        for (std::int64_t n = 1; n <= 500; ++n) {
            const bool zero = arith::kronecker(d, n) == 0;
            REQUIRE(zero == (std::gcd(ad, static_cast<std::uint64_t>(n)) > 1));
        }
    }
}

TEST_CASE("li: frozen oracle values and domain") {
    REQUIRE(arith::li(2.0) == 0.0);
    REQUIRE_THROWS_AS(arith::li(1.5), std::domain_error);

    // frozen from the adaptive-quadrature oracle (and mpmath li(x) - li(2))
    REQUIRE(std::abs(arith::li(10.0) - 5.1204357246698052) < 1e-9);
    REQUIRE(std::abs(arith::li(1e6) - 78626.503995682064) < 1e-5);

    REQUIRE(std::abs(arith::li(10.0) - oracles::li_oracle(10.0)) < 1e-9);
    REQUIRE(std::abs(arith::li(1000.0) - oracles::li_oracle(1000.0)) < 1e-8);
}

TEST_CASE("li is increasing and asymptotically x/log x") {
    double prev = 0.0;
    for (double x = 2.0; x <= 50.0; x += 0.5) {
        const double v = arith::li(x);
        REQUIRE(v >= prev);
        prev = v;
    }
    const double ratio = arith::li(1e6) * std::log(1e6) / 1e6;
    REQUIRE(ratio > 0.9);
    REQUIRE(ratio < 1.2);
}

TEST_CASE("power_log_integral: beta = 1 reduces to li, oracle cross-check") {
    REQUIRE(std::abs(arith::power_log_integral(1.0, 1e4) - arith::li(1e4)) < 1e-9);
    // frozen from mpmath quad
    REQUIRE(std::abs(arith::power_log_integral(0.5, 4.0) - 1.1485346059473646) < 1e-9);
    REQUIRE(std::abs(arith::power_log_integral(0.7, 1000.0) - 35.202402190335190) < 1e-8);
    const double simpson = oracles::adaptive_simpson(
        [](double u) { return std::pow(u, -0.5) / std::log(u); }, 2.0, 4.0, 1e-11);
    REQUIRE(std::abs(arith::power_log_integral(0.5, 4.0) - simpson) < 1e-8);
}

TEST_CASE("fundamental discriminants") {
    for (std::int64_t d : {-3, -4, -7, -8, -11, -15, -20, -23, -163, 5, 8, 12, 13})
        REQUIRE(arith::is_fundamental_discriminant(d));
    for (std::int64_t d : {1, 0, -1, -9, -12, -16, -18, -25, -27, -45, 9, 16})
        REQUIRE(!arith::is_fundamental_discriminant(d));
}

TEST_CASE("divisors") {
    REQUIRE(arith::divisors(arith::factorize(12)) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    REQUIRE(arith::divisors(arith::factorize(1)) == std::vector<std::uint64_t>{1});
}
