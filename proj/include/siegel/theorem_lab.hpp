#pragma once

// Exact verification of the algebraic skeleton behind the conditional
// Siegel-zero bound: the exponential sum
//
//   S = sum_{k=1}^q ( sum_{2<p<=x} e(kp/q) )^2
//
// computed directly and via the fold q * sum_{n<=2x, q|n} #{p1+p2=n}, the
// Ramanujan/Gauss identities used to expand S, the explicit main-term
// decomposition with a hypothetical zero, the final inequality chain as a
// what-if calculator, and the composite-modulus eligibility criterion.
// Every occurrence of an exceptional beta is a hypothetical input; nothing
// here asserts that such a zero exists.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "siegel/arith.hpp"
#include "siegel/characters.hpp"
#include "siegel/goldbach.hpp"
#include "siegel/parallel.hpp"

namespace siegel::theorem_lab {

struct SumSDecomposition {
    std::uint64_t q = 0;
    double x = 0;
    double S_direct = 0;
    double S_imag_residual = 0;           // |Im| of the direct sum; pairing k <-> q-k makes S real
    std::optional<double> S_folded;       // exact integer route, when computed
    double main_li = 0;                   // (q/phi) li(x)^2
    std::optional<double> main_zero;      // (q/phi) chi(-1) x^(2 beta) / (beta^2 log^2 x)
    double residual = 0;                  // S_direct - main_li - main_zero
    double error_envelope = 0;            // x^2/log^3 x * q^2/phi^2 + q^3 x^2 exp(-ctilde sqrt(log x)); context only
};

// Direct route: prime residue counts first, then z_k = sum_r cnt[r] e(kr/q)
// and S = sum_k z_k^2 with compensated accumulation.
inline SumSDecomposition sum_S_direct(std::uint64_t q, double x, const arith::PrimeTable& table) {
    if (q < 1) throw std::domain_error("sum_S_direct: requires q >= 1");
    if (!(x >= 0)) throw std::domain_error("sum_S_direct: requires x >= 0");
    const std::uint64_t xi = x < 1 ? 0 : static_cast<std::uint64_t>(x);
    if (table.limit < xi) throw arith::capacity_error("sum_S_direct: prime table limit below x");

    std::vector<std::uint64_t> cnt(q, 0);
    for (std::size_t i = table.first_index_at_least(3); i < table.primes.size(); ++i) {
        const std::uint64_t p = table.primes[i];
        if (p > xi) break;
        ++cnt[p % q];
    }

    std::vector<double> cs(q), sn(q);
    for (std::uint64_t j = 0; j < q; ++j) {
        const double a = characters::two_pi * static_cast<double>(j) / static_cast<double>(q);
        cs[j] = std::cos(a);
        sn[j] = std::sin(a);
    }

    std::complex<double> S = 0.0, comp = 0.0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        double re = 0.0, im = 0.0, cre = 0.0, cim = 0.0;
        for (std::uint64_t r = 0; r < q; ++r) {
            if (!cnt[r]) continue;
            const std::uint64_t idx = k * r % q;
            const double c = static_cast<double>(cnt[r]);
            double y = c * cs[idx] - cre;
            double t = re + y;
            cre = (t - re) - y;
            re = t;
            y = c * sn[idx] - cim;
            t = im + y;
            cim = (t - im) - y;
            im = t;
        }
        const std::complex<double> z(re, im);
        const std::complex<double> term = z * z;
        const std::complex<double> y = term - comp;
        const std::complex<double> t = S + y;
        comp = (t - S) - y;
        S = t;
    }

    SumSDecomposition d;
    d.q = q;
    d.x = x;
    d.S_direct = S.real();
    d.S_imag_residual = std::abs(S.imag());
    return d;
}

// Fold route: q * sum over multiples n of q up to 2x of the ordered count of
// p1 + p2 = n with 2 < p1, p2 <= x.  Exact integer arithmetic.
inline std::int64_t sum_S_folded(std::uint64_t q, double x, const arith::PrimeTable& table, int jobs = 0) {
    if (q < 1) throw std::domain_error("sum_S_folded: requires q >= 1");
    if (!(x >= 0)) throw std::domain_error("sum_S_folded: requires x >= 0");
    const std::uint64_t xi = x < 1 ? 0 : static_cast<std::uint64_t>(x);
    if (table.limit < xi) throw arith::capacity_error("sum_S_folded: prime table limit below x");
    if (xi < 3) return 0;

    // odd multiples of q cannot be a sum of two odd primes
    const std::uint64_t step = std::lcm<std::uint64_t>(2, q);
    std::vector<std::uint64_t> ns;
    for (std::uint64_t n = step; n <= 2 * xi; n += step)
        if (n >= 6) ns.push_back(n);

    const std::int64_t total = par::map_reduce<std::int64_t>(
        ns.size(), 64, jobs > 0 ? jobs : par::default_jobs(), 0,
        [&](std::uint64_t b, std::uint64_t e) {
            std::int64_t acc = 0;
            for (std::uint64_t i = b; i < e; ++i)
                acc += static_cast<std::int64_t>(
                    goldbach::goldbach_count(ns[i], goldbach::CountVariant::exclude_two_cap_x, table, xi).count);
            return acc;
        },
        [](std::int64_t a, std::int64_t b) { return a + b; });
    return static_cast<std::int64_t>(q) * total;
}

// ---------------------------------------------------------------------------
// Step-2 identities
// ---------------------------------------------------------------------------

struct Step2Identities {
    std::uint64_t q = 0;
    double dev_mixed = 0;           // max_chi |sum_k c_q(k) tau_k(chi)|, primitive chi
    double dev_ramanujan_sum = 0;   // |sum_k c_q(k)|
    double dev_ramanujan_square = 0;  // |sum_k c_q(k)^2 - q phi(q)|
    double dev_gauss_square = 0;    // max real primitive chi of |(1/phi^2) tau_1^2 sum conj(chi)^2(k) - (q/phi) chi(-1)|
    std::uint64_t n_primitive = 0;
    std::uint64_t n_real_primitive = 0;

    double max_deviation() const {
        return std::max(std::max(dev_mixed, dev_gauss_square), std::max(dev_ramanujan_sum, dev_ramanujan_square));
    }
};

inline Step2Identities step2_identities(std::uint64_t q) {
    if (q < 3) throw std::domain_error("step2_identities: requires q >= 3");
    Step2Identities out;
    out.q = q;

    std::vector<std::int64_t> c(q + 1);
    for (std::uint64_t k = 1; k <= q; ++k) c[k] = characters::ramanujan_sum(q, static_cast<std::int64_t>(k));
    std::int64_t csum = 0, csq = 0;
    for (std::uint64_t k = 1; k <= q; ++k) {
        csum += c[k];
        csq += c[k] * c[k];
    }
    const std::uint64_t phi = arith::euler_phi(q);
    out.dev_ramanujan_sum = std::abs(static_cast<double>(csum));
    out.dev_ramanujan_square = std::abs(static_cast<double>(csq - static_cast<std::int64_t>(q * phi)));

    auto group = characters::unit_group(q);
    auto table = characters::RootTable::build(characters::gauss_root_order(*group));
    for (const auto& chi : characters::enumerate_characters(group)) {
        if (!chi.is_primitive()) continue;
        ++out.n_primitive;
        characters::GaussSummer summer(chi, table);
        std::complex<double> mixed = 0.0;
        for (std::uint64_t k = 1; k <= q; ++k)
            if (c[k] != 0) mixed += static_cast<double>(c[k]) * summer.tau(static_cast<std::int64_t>(k));
        out.dev_mixed = std::max(out.dev_mixed, std::abs(mixed));

        if (chi.is_real()) {
            ++out.n_real_primitive;
            const std::complex<double> tau1 = summer.tau(1);
            std::complex<double> ksum = 0.0;
            const auto conj_chi = chi.conjugate();
            for (std::uint64_t k = 1; k <= q; ++k) {
                const auto v = conj_chi(static_cast<std::int64_t>(k)).value();
                ksum += v * v;
            }
            const double phid = static_cast<double>(phi);
            const std::complex<double> lhs = tau1 * tau1 * ksum / (phid * phid);
            const double rhs = static_cast<double>(q) / phid * chi.parity();
            out.dev_gauss_square = std::max(out.dev_gauss_square, std::abs(lhs - rhs));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Explicit decomposition (main terms of S)
// ---------------------------------------------------------------------------

struct HypotheticalZero {
    int parity = -1;  // chi(-1) of the exceptional character
    double beta = 0;
};

inline SumSDecomposition explicit_decomposition(std::uint64_t q, double x, const arith::PrimeTable& table,
                                                std::optional<HypotheticalZero> zero = std::nullopt,
                                                double ctilde = 1.0) {
    if (q < 3) throw std::domain_error("explicit_decomposition: requires q >= 3");
    if (!(x >= 2.0)) throw std::domain_error("explicit_decomposition: requires x >= 2");
    if (zero && !(zero->beta > 0.0 && zero->beta <= 1.0))
        throw std::domain_error("explicit_decomposition: requires 0 < beta <= 1");
    if (zero && !(zero->parity == 1 || zero->parity == -1))
        throw std::domain_error("explicit_decomposition: parity must be +1 or -1");

    SumSDecomposition d = sum_S_direct(q, x, table);
    const double phi = static_cast<double>(arith::euler_phi(q));
    const double ratio = static_cast<double>(q) / phi;
    const double lx = std::log(x);
    const double lival = arith::li(x);
    d.main_li = ratio * lival * lival;
    double main_zero = 0.0;
    if (zero) {
        const double beta = zero->beta;
        main_zero = ratio * zero->parity * std::pow(x, 2.0 * beta) / (beta * beta * lx * lx);
        d.main_zero = main_zero;
    }
    d.residual = d.S_direct - d.main_li - main_zero;
    d.error_envelope = x * x / (lx * lx * lx) * ratio * ratio +
                       std::pow(static_cast<double>(q), 3.0) * x * x * std::exp(-ctilde * std::sqrt(lx));
    return d;
}

// ---------------------------------------------------------------------------
// Step-3 inequality chain (what-if calculator)
// ---------------------------------------------------------------------------

struct Step3Audit {
    std::uint64_t q = 0;
    double x = 0, delta = 0, beta = 0, c3 = 0, ctilde = 0, c1 = 0, C = 0;
    double phi_ratio = 0;       // phi(q)/q
    double lhs = 0;             // x^(2 beta - 2)
    double rhs_base = 0;        // 1 - (delta/8) phi/q
    double rhs_with_error = 0;  // rhs_base + c1 q / (phi log^2 q)
    double rhs_final = 0;       // 1 - (delta/16) phi/q
    bool eq5_ok = false;        // q <= x/4
    bool eq7_ok = false;        // q <= exp(C sqrt(log x))
    bool window_ok = false;     // (4 log q / ctilde)^2 <= log x <= c3 log^2 q
    bool largeq_ok = false;     // 16 c1 / log^2 q <= delta phi^2/q^2
    bool chain_lhs_ok = false;  // lhs <= rhs_with_error
    bool chain_rhs_ok = false;  // rhs_with_error <= rhs_final
    double implied_gap = 0;     // (delta/(32 c3)) phi/(q log^2 q)
    bool verdict = false;       // 1 - beta >= implied_gap
};

inline Step3Audit step3_audit(std::uint64_t q, double x, double delta, double beta, double c3 = 17.0,
                              double ctilde = 1.0, double c1 = 1.0, double C = 1.0) {
    if (q < 3) throw std::domain_error("step3_audit: requires q >= 3");
    if (!(x >= 3.0)) throw std::domain_error("step3_audit: requires x >= 3");
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("step3_audit: requires 0 < beta < 1");
    if (!(delta > 0.0 && delta < 8.0)) throw std::domain_error("step3_audit: requires 0 < delta < 8");
    if (!(ctilde > 0.0)) throw std::domain_error("step3_audit: requires ctilde > 0");
    if (!(c3 > (4.0 / ctilde) * (4.0 / ctilde)))
        throw std::domain_error("step3_audit: requires c3 > (4/ctilde)^2");
    if (!(c1 > 0.0)) throw std::domain_error("step3_audit: requires c1 > 0");
    if (!(C > 0.0)) throw std::domain_error("step3_audit: requires C > 0");

    Step3Audit a;
    a.q = q;
    a.x = x;
    a.delta = delta;
    a.beta = beta;
    a.c3 = c3;
    a.ctilde = ctilde;
    a.c1 = c1;
    a.C = C;
    const double qd = static_cast<double>(q);
    const double phi = static_cast<double>(arith::euler_phi(q));
    const double lq = std::log(qd), lx = std::log(x);
    a.phi_ratio = phi / qd;
    a.lhs = std::exp((2.0 * beta - 2.0) * lx);
    a.rhs_base = 1.0 - delta / 8.0 * a.phi_ratio;
    a.rhs_with_error = a.rhs_base + c1 * qd / (phi * lq * lq);
    a.rhs_final = 1.0 - delta / 16.0 * a.phi_ratio;
    a.eq5_ok = 4 * q <= static_cast<std::uint64_t>(x);
    a.eq7_ok = qd <= std::exp(C * std::sqrt(lx));
    const double wlo = std::pow(4.0 * lq / ctilde, 2.0);
    a.window_ok = (wlo <= lx) && (lx <= c3 * lq * lq);
    a.largeq_ok = 16.0 * c1 / (lq * lq) <= delta * a.phi_ratio * a.phi_ratio;
    a.chain_lhs_ok = a.lhs <= a.rhs_with_error;
    a.chain_rhs_ok = a.rhs_with_error <= a.rhs_final;
    a.implied_gap = delta / (32.0 * c3) * a.phi_ratio / (lq * lq);
    a.verdict = (1.0 - beta) >= a.implied_gap;
    return a;
}

// ---------------------------------------------------------------------------
// Composite-modulus eligibility
// ---------------------------------------------------------------------------

struct EligibilityResult {
    std::uint64_t q = 0;
    std::vector<std::uint64_t> qualifying;  // divisors of q in {4} u {p prime, p = 3 mod 4}
    bool eligible = false;                  // exactly one qualifying divisor
    std::uint64_t odd_real_count = 0;       // real characters mod q with chi(-1) = -1
};

inline EligibilityResult eligible_modulus(std::uint64_t q) {
    if (q < 3) throw std::domain_error("eligible_modulus: requires q >= 3");
    EligibilityResult r;
    r.q = q;
    const auto fac = arith::factorize(q);
    for (std::uint64_t d : arith::divisors(fac)) {
        if (d == 4) {
            r.qualifying.push_back(d);
        } else if (d % 4 == 3) {
            const auto fd = arith::factorize(d);
            if (fd.factors.size() == 1 && fd.factors[0].second == 1) r.qualifying.push_back(d);
        }
    }
    r.eligible = r.qualifying.size() == 1;
    r.odd_real_count = characters::real_odd_characters(q).size();
    return r;
}

}  // namespace siegel::theorem_lab
