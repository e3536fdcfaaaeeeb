#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "siegel/quadforms.hpp"

using namespace siegel;
using quadforms::enumerate_reduced_forms;

TEST_CASE("reduced forms for q = 3, 4, 23") {
    const auto c3 = enumerate_reduced_forms(3);
    REQUIRE(c3.forms == std::vector<quadforms::QuadForm>{{1, 1, 1}});
    REQUIRE(c3.h == 1);
    REQUIRE(c3.R == 1.0);
    REQUIRE(c3.w == 6);

    const auto c4 = enumerate_reduced_forms(4);
    REQUIRE(c4.forms == std::vector<quadforms::QuadForm>{{1, 0, 1}});
    REQUIRE(c4.h == 1);
    REQUIRE(c4.w == 4);

    const auto c23 = enumerate_reduced_forms(23);
    REQUIRE(c23.h == 3);
    REQUIRE(c23.w == 2);
    REQUIRE(std::abs(c23.R - 2.0) < 1e-15);
    REQUIRE(c23.forms == std::vector<quadforms::QuadForm>{{1, 1, 6}, {2, -1, 3}, {2, 1, 3}});
}

TEST_CASE("reduced form invariants and deterministic order") {
    for (std::uint64_t q : {3, 4, 7, 8, 11, 15, 20, 23, 24, 39, 40, 47, 163, 427, 555}) {
        const auto cd = enumerate_reduced_forms(q);
        quadforms::QuadForm prev{0, 0, 0};
        for (const auto& f : cd.forms) {
            REQUIRE(f.b * f.b - 4 * f.a * f.c == -static_cast<std::int64_t>(q));
            REQUIRE(f.a >= 1);
            REQUIRE(-f.a < f.b);
            REQUIRE(f.b <= f.a);
            REQUIRE(f.a <= f.c);
            if (f.a == f.c) REQUIRE(f.b >= 0);
            REQUIRE((f.a > prev.a || (f.a == prev.a && f.b > prev.b)));
            prev = f;
        }
    }
}

TEST_CASE("quadform domain errors") {
    REQUIRE_THROWS_AS(enumerate_reduced_forms(5), std::domain_error);  // -5 = 3 (mod 4)
    REQUIRE_THROWS_AS(enumerate_reduced_forms(6), std::domain_error);
    REQUIRE_THROWS_AS(enumerate_reduced_forms(20000003), arith::capacity_error);
}

TEST_CASE("class numbers match the divisor-scan oracle for fundamental q <= 2000") {
    for (std::uint64_t q = 3; q <= 2000; ++q) {
        if (!arith::is_fundamental_discriminant(-static_cast<std::int64_t>(q))) continue;
        REQUIRE(enumerate_reduced_forms(q).h == oracles::class_number_oracle(q));
    }
}

TEST_CASE("spot class numbers") {
    REQUIRE(enumerate_reduced_forms(3).h == 1);
    REQUIRE(enumerate_reduced_forms(4).h == 1);
    REQUIRE(enumerate_reduced_forms(163).h == 1);
    REQUIRE(enumerate_reduced_forms(23).h == 3);
}

TEST_CASE("prime q = 3 (mod 4) always carries the form (1,1,(1+q)/4)") {
    for (std::uint64_t q : {3, 7, 11, 19, 23, 31, 43, 67, 163, 499, 1999}) {
        const auto cd = enumerate_reduced_forms(q);
        const quadforms::QuadForm want{1, 1, static_cast<std::int64_t>((1 + q) / 4)};
        bool present = false;
        for (const auto& f : cd.forms)
            if (f == want) present = true;
        REQUIRE(present);
        REQUIRE(cd.R >= 1.0);
    }
}

TEST_CASE("class number formula check") {
    const auto r3 = quadforms::class_number_formula_check(3);
    REQUIRE(std::abs(r3.L_formula - 0.6045997880780726) < 1e-14);
    REQUIRE(std::abs(r3.diff) < 1e-7);

    const auto r4 = quadforms::class_number_formula_check(4);
    REQUIRE(std::abs(r4.L_formula - 3.14159265358979323846 / 4.0) < 1e-14);
    REQUIRE(std::abs(r4.diff) < 1e-7);

    const auto r23 = quadforms::class_number_formula_check(23);
    REQUIRE(r23.h == 3);
    REQUIRE(std::abs(r23.L_formula - 1.9652020541078592) < 1e-12);
    REQUIRE(std::abs(r23.diff) < 1e-7);

    REQUIRE_THROWS_AS(quadforms::class_number_formula_check(12), std::domain_error);
    REQUIRE_THROWS_AS(quadforms::class_number_formula_check(9), std::domain_error);
}

TEST_CASE("goldfeld comparator") {
    // beta constructed so lhs = rhs exactly
    const auto probe = quadforms::goldfeld_comparator(3, 0.5);
    const double beta = 1.0 - probe.rhs;
    const auto g = quadforms::goldfeld_comparator(3, beta);
    REQUIRE(std::abs(g.ratio - 1.0) < 1e-9);

    const auto g23 = quadforms::goldfeld_comparator(23, 0.999);
    REQUIRE(std::abs(g23.lhs - 1e-3) < 1e-15);
    REQUIRE(std::abs(g23.rhs - 0.59735) < 1e-4);
    REQUIRE(std::abs(g23.ratio - 0.0016741) < 1e-6);

    // R_q >= 1 branch for prime q = 3 (mod 4): rhs <= (6/pi^2) L(1,chi)
    const auto g7 = quadforms::goldfeld_comparator(7, 0.9);
    REQUIRE(g7.rhs <= 6.0 / 9.8696044010893586 * g7.L1 + 1e-12);

    REQUIRE_THROWS_AS(quadforms::goldfeld_comparator(3, 1.5), std::domain_error);
    REQUIRE_THROWS_AS(quadforms::goldfeld_comparator(12, 0.9), std::domain_error);
}
