#pragma once

// Reduced binary quadratic forms of discriminant -q, the class number h(-q),
// R_q = sum 1/a over reduced forms, the class number formula cross-check, and
// the Goldfeld asymptotic comparator.
//
// A form (a,b,c) with b^2 - 4ac = -q is reduced iff -a < b <= a <= c and
// b >= 0 whenever a = c.  Enumeration runs a <= sqrt(q/3); correctness is
// anchored to the class number formula rather than to any sharper a-bound.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "siegel/arith.hpp"
#include "siegel/lfunction.hpp"

namespace siegel::quadforms {

inline constexpr std::uint64_t enumeration_cap = 10'000'000;

struct QuadForm {
    std::int64_t a = 0, b = 0, c = 0;
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

struct ClassData {
    std::uint64_t q = 0;  // discriminant is -q
    std::vector<QuadForm> forms;
    std::uint64_t h = 0;
    double R = 0;  // sum of 1/a
    int w = 2;     // unit count: 6 for q=3, 4 for q=4, else 2
};

inline ClassData enumerate_reduced_forms(std::uint64_t q) {
    if (q < 3) throw std::domain_error("enumerate_reduced_forms: requires q >= 3");
    if (q % 4 != 0 && q % 4 != 3)
        throw std::domain_error("enumerate_reduced_forms: -q must be 0 or 1 (mod 4), got q = " + std::to_string(q));
    if (q > enumeration_cap)
        throw arith::capacity_error("enumerate_reduced_forms: q exceeds cap " + std::to_string(enumeration_cap));

    ClassData cd;
    cd.q = q;
    cd.w = q == 3 ? 6 : (q == 4 ? 4 : 2);
    const std::int64_t qi = static_cast<std::int64_t>(q);
    const std::int64_t amax = static_cast<std::int64_t>(std::sqrt(static_cast<double>(q) / 3.0)) + 1;
    for (std::int64_t a = 1; a <= amax; ++a) {
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            const std::int64_t num = b * b + qi;
            if (num % (4 * a) != 0) continue;
            const std::int64_t c = num / (4 * a);
            if (c < a) continue;
            if (a == c && b < 0) continue;
            cd.forms.push_back({a, b, c});
        }
    }
    cd.h = cd.forms.size();
    double r = 0;
    for (const auto& f : cd.forms) r += 1.0 / static_cast<double>(f.a);
    cd.R = r;
    return cd;
}

struct ClassFormulaCheck {
    std::uint64_t q = 0;
    std::uint64_t h = 0;
    int w = 2;
    double L_direct = 0;   // evaluate_L(kronecker(-q, .), 1)
    double L_formula = 0;  // 2 pi h / (w sqrt(q))
    double diff = 0;
};

inline ClassFormulaCheck class_number_formula_check(std::uint64_t q, double tol = 1e-8) {
    if (!arith::is_fundamental_discriminant(-static_cast<std::int64_t>(q)))
        throw std::domain_error("class_number_formula_check: -" + std::to_string(q) +
                                " is not a fundamental discriminant");
    ClassFormulaCheck r;
    const ClassData cd = enumerate_reduced_forms(q);
    r.q = q;
    r.h = cd.h;
    r.w = cd.w;
    r.L_formula = 2.0 * 3.14159265358979323846 * static_cast<double>(cd.h) /
                  (static_cast<double>(cd.w) * std::sqrt(static_cast<double>(q)));
    r.L_direct = lfunction::evaluate_L(lfunction::kronecker_series(-static_cast<std::int64_t>(q)), 1.0, tol)
                     .real_value();
    r.diff = r.L_direct - r.L_formula;
    return r;
}

struct GoldfeldComparator {
    std::uint64_t q = 0;
    double beta = 0;
    double L1 = 0;
    double R = 0;
    double lhs = 0;    // 1 - beta
    double rhs = 0;    // (6/pi^2) L(1,chi_{-q}) / R_q
    double ratio = 0;  // lhs / rhs
};

// Comparator for the asymptotic 1 - beta ~ (6/pi^2) L(1,chi) (sum 1/a)^{-1};
// beta is a hypothetical input, no zero existence is implied.
inline GoldfeldComparator goldfeld_comparator(std::uint64_t q, double beta, std::optional<double> L1 = std::nullopt) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("goldfeld_comparator: requires 0 < beta < 1");
    if (!arith::is_fundamental_discriminant(-static_cast<std::int64_t>(q)))
        throw std::domain_error("goldfeld_comparator: -" + std::to_string(q) + " is not a fundamental discriminant");
    GoldfeldComparator g;
    g.q = q;
    g.beta = beta;
    const ClassData cd = enumerate_reduced_forms(q);
    g.R = cd.R;
    g.L1 = L1 ? *L1
              : lfunction::evaluate_L(lfunction::kronecker_series(-static_cast<std::int64_t>(q)), 1.0, 1e-8)
                    .real_value();
    g.lhs = 1.0 - beta;
    g.rhs = 6.0 / 9.86960440108935861883 * g.L1 / g.R;
    g.ratio = g.lhs / g.rhs;
    return g;
}

}  // namespace siegel::quadforms
