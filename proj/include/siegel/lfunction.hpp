#pragma once

// Numerical evaluation of L(sigma, chi) on the real segment 0 < sigma <= 2,
// real-zero scanning, the Landau-Page region predicate (with T = q), prime
// counts in progressions against li(x)/phi(q), and the L(1,chi) bounds report.
//
// evaluate_L sums the series to a cutoff N (a multiple of the period) and
// handles the tail by iterated Abel summation: each summation-by-parts level
// trades the character for its periodic cumulative sum, whose running mean
// produces an explicit correction term and whose exact per-period maximum
// gives a certified bound
//
//     |tail after J levels| <= max_r |A_J(r) - mean(A_J)| * D^{J-1}f(N+1),
//
// where D^j f is the j-th forward difference of f(n) = n^(-sigma) (positive,
// since f is completely monotone).  Levels multiply the bound by roughly
// q*(sigma+j)/(2*pi*N), so a handful of levels reaches 1e-12 at desk scale.

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "siegel/arith.hpp"
#include "siegel/characters.hpp"

namespace siegel::lfunction {

// Periodic completely multiplicative coefficient sequence (a character given
// by its value table).
struct CharSeries {
    std::uint64_t period = 0;
    std::vector<std::complex<double>> vals;  // index n mod period
    bool real = true;
    bool principal = false;
    std::string id;

    std::complex<double> at(std::uint64_t n) const { return vals[n % period]; }
};

inline CharSeries make_series(const characters::DirichletCharacter& chi) {
    CharSeries s;
    s.period = chi.modulus();
    s.vals.resize(s.period);
    for (std::uint64_t r = 0; r < s.period; ++r) s.vals[r] = chi.value(static_cast<std::int64_t>(r));
    s.real = chi.is_real();
    s.principal = chi.is_principal();
    s.id = chi.label();
    return s;
}

// chi_d(n) = (d/n); requires d = 0,1 (mod 4) so the period is |d|.
inline CharSeries kronecker_series(std::int64_t d) {
    const std::int64_t m4 = ((d % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) throw std::domain_error("kronecker_series: need d = 0 or 1 (mod 4)");
    const std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    if (q < 3) throw std::domain_error("kronecker_series: need |d| >= 3");
    CharSeries s;
    s.period = q;
    s.vals.resize(q);
    bool all_one = true;
    for (std::uint64_t r = 0; r < q; ++r) {
        const int v = arith::kronecker(d, static_cast<std::int64_t>(r));
        s.vals[r] = static_cast<double>(v);
        if (v != 0 && v != 1) all_one = false;
    }
    s.real = true;
    s.principal = all_one;
    s.id = "kronecker(" + std::to_string(d) + ")";
    return s;
}

struct LEvalResult {
    std::complex<double> value;
    double sigma = 0;
    double tol = 0;
    std::uint64_t truncation_n = 0;
    double certified_tail = 0;  // rigorous bound on |series - value|
    int abel_levels = 0;
    bool real = true;

    double real_value() const { return value.real(); }
};

namespace detail {

// D^j f(n0) for f(t) = t^(-sigma), via the Irwin-Hall moment expansion
//   D^j f(n) = (sigma)_j * E[(n + U_j)^(-sigma-j)],  U_j = sum of j U(0,1).
// A central expansion to sixth order leaves a relative error O((j/n)^8),
// negligible for n >= 4096; naive difference triangles would lose everything
// to cancellation at these depths.
inline double forward_difference_powlaw(double n0, int j, double sigma) {
    if (j == 0) return std::pow(n0, -sigma);
    const double s = sigma + j;
    const double c = n0 + 0.5 * j;
    const double k2 = j / 12.0, k4 = -j / 120.0, k6 = j / 252.0;
    const double m2 = k2;
    const double m4 = k4 + 3 * k2 * k2;
    const double m6 = k6 + 15 * k4 * k2 + 15 * k2 * k2 * k2;
    double rising = 1.0;
    for (int i = 0; i < j; ++i) rising *= sigma + i;
    const double c2 = s * (s + 1) / 2.0 * m2 / (c * c);
    const double c4 = s * (s + 1) * (s + 2) * (s + 3) / 24.0 * m4 / std::pow(c, 4);
    const double c6 = s * (s + 1) * (s + 2) * (s + 3) * (s + 4) * (s + 5) / 720.0 * m6 / std::pow(c, 6);
    return rising * std::pow(c, -s) * (1.0 + c2 + c4 + c6);
}

struct AbelTables {
    // level j in [1, J]: mean of the j-th cumulative over one period and the
    // exact max deviation from that mean
    std::vector<std::complex<double>> mean;
    std::vector<double> maxdev;

    static AbelTables build(const CharSeries& s, int levels) {
        AbelTables t;
        const std::uint64_t q = s.period;
        std::vector<std::complex<double>> cur(q + 1), next(q + 1);
        cur[0] = 0.0;
        for (std::uint64_t r = 1; r <= q; ++r) cur[r] = cur[r - 1] + s.at(r);
        for (int j = 1; j <= levels; ++j) {
            std::complex<double> mean = 0.0;
            for (std::uint64_t r = 1; r <= q; ++r) mean += cur[r];
            mean /= static_cast<double>(q);
            double dev = 0.0;
            for (std::uint64_t r = 1; r <= q; ++r) dev = std::max(dev, std::abs(cur[r] - mean));
            t.mean.push_back(mean);
            t.maxdev.push_back(dev);
            if (j == levels) break;
            next[0] = 0.0;
            for (std::uint64_t r = 1; r <= q; ++r) next[r] = next[r - 1] + (cur[r] - mean);
            std::swap(cur, next);
        }
        return t;
    }
};

}  // namespace detail

inline LEvalResult evaluate_L(const CharSeries& s, double sigma, double tol) {
    if (s.principal) throw std::domain_error("evaluate_L: principal character has a pole at s = 1");
    if (!(sigma > 0.0 && sigma <= 2.0)) throw std::domain_error("evaluate_L: requires 0 < sigma <= 2");
    if (!(tol >= 1e-12)) throw std::domain_error("evaluate_L: requires tol >= 1e-12");

    constexpr int max_levels = 16;
    const std::uint64_t q = s.period;
    const auto tables = detail::AbelTables::build(s, max_levels);

    std::uint64_t n_trunc = q * std::max<std::uint64_t>(16, (4096 + q - 1) / q);
    int levels = 0;
    double bound = 0.0;
    for (int attempt = 0;; ++attempt) {
        levels = 0;
        for (int j = 1; j <= max_levels; ++j) {
            const double b = tables.maxdev[j - 1] *
                             detail::forward_difference_powlaw(static_cast<double>(n_trunc) + 1.0, j - 1, sigma) *
                             (1.0 + 1e-9);
            if (!std::isfinite(b)) break;
            if (b <= tol * 0.5) {
                levels = j;
                bound = b;
                break;
            }
        }
        if (levels > 0 || attempt >= 12) break;
        n_trunc *= 2;
    }
    if (levels == 0) throw std::runtime_error("evaluate_L: certified tail bound unreachable");

    // partial sum with compensated accumulation
    std::complex<double> sum = 0.0, comp = 0.0;
    for (std::uint64_t n = 1; n <= n_trunc; ++n) {
        const std::complex<double> v = s.at(n);
        if (v.real() == 0.0 && v.imag() == 0.0) continue;
        const std::complex<double> term = v * std::pow(static_cast<double>(n), -sigma);
        const std::complex<double> y = term - comp;
        const std::complex<double> t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    // tail corrections: N is a multiple of q, so every cumulative vanishes at
    // N and only the period means survive
    for (int j = 1; j <= levels; ++j)
        sum += tables.mean[j - 1] *
               detail::forward_difference_powlaw(static_cast<double>(n_trunc) + 1.0, j - 1, sigma);

    LEvalResult r;
    r.value = s.real ? std::complex<double>(sum.real(), 0.0) : sum;
    r.sigma = sigma;
    r.tol = tol;
    r.truncation_n = n_trunc;
    r.certified_tail = bound;
    r.abel_levels = levels;
    r.real = s.real;
    return r;
}

inline LEvalResult evaluate_L(const characters::DirichletCharacter& chi, double sigma, double tol) {
    return evaluate_L(make_series(chi), sigma, tol);
}

// ---------------------------------------------------------------------------
// Real-zero scanning
// ---------------------------------------------------------------------------

struct ZeroBracket {
    double lo = 0, hi = 0;
    double beta = 0;
    double residual = 0;
    bool exceptional = false;  // Landau-Page region test with T = q, c = 1
};

struct ZeroScanReport {
    std::string char_id;
    std::uint64_t q = 0;
    double sigma_lo = 0, sigma_hi = 0, step = 0, refine_tol = 0;
    std::uint64_t grid_points = 0;
    std::vector<ZeroBracket> zeros;
};

// true iff 1 - beta <= c / (2 log q)   (T = q, boundary inclusive; the
// comparison carries a 1-part-in-1e12 slack so that a beta sitting exactly on
// the boundary tests true regardless of rounding)
inline bool exceptional_region_test(double beta, std::uint64_t q, double c = 1.0) {
    if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("exceptional_region_test: requires 0 < beta < 1");
    if (q < 3) throw std::domain_error("exceptional_region_test: requires q >= 3");
    if (!(c > 0.0)) throw std::domain_error("exceptional_region_test: requires c > 0");
    const double bound = c / (2.0 * std::log(static_cast<double>(q)));
    return 1.0 - beta <= bound * (1.0 + 1e-12);
}

// Grid scan + bisection refinement for an arbitrary real evaluator; the
// injectable hook that the character scan wraps.
inline ZeroScanReport scan_function_zeros(const std::function<double(double)>& f, const std::string& id,
                                          std::uint64_t q, double sigma_lo, double sigma_hi, double step,
                                          double refine_tol) {
    if (!(sigma_lo > 0.0 && sigma_lo < sigma_hi && sigma_hi <= 1.0))
        throw std::domain_error("scan_real_zeros: requires 0 < sigma_lo < sigma_hi <= 1");
    if (!(step > 0.0)) throw std::domain_error("scan_real_zeros: requires step > 0");
    if (!(refine_tol > 0.0)) throw std::domain_error("scan_real_zeros: requires refine_tol > 0");

    ZeroScanReport rep;
    rep.char_id = id;
    rep.q = q;
    rep.sigma_lo = sigma_lo;
    rep.sigma_hi = sigma_hi;
    rep.step = step;
    rep.refine_tol = refine_tol;

    std::vector<double> grid;
    const std::uint64_t nsteps = static_cast<std::uint64_t>((sigma_hi - sigma_lo) / step + 1e-9);
    for (std::uint64_t i = 0; i <= nsteps; ++i) grid.push_back(sigma_lo + static_cast<double>(i) * step);
    if (grid.back() < sigma_hi - 1e-12) grid.push_back(sigma_hi);
    rep.grid_points = grid.size();

    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if ((prev < 0.0 && cur > 0.0) || (prev > 0.0 && cur < 0.0) || prev == 0.0) {
            double lo = grid[i - 1], hi = grid[i];
            double flo = prev;
            if (flo == 0.0) {
                rep.zeros.push_back({lo, lo, lo, 0.0, q >= 3 && exceptional_region_test(lo, q)});
            } else {
                while (hi - lo > refine_tol) {
                    const double mid = 0.5 * (lo + hi);
                    const double fm = f(mid);
                    if (fm == 0.0) { lo = hi = mid; break; }
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                const double beta = 0.5 * (lo + hi);
                ZeroBracket z;
                z.lo = grid[i - 1];
                z.hi = grid[i];
                z.beta = beta;
                z.residual = std::abs(f(beta));
                z.exceptional = q >= 3 && exceptional_region_test(beta, q);
                rep.zeros.push_back(z);
            }
        }
        prev = cur;
    }
    return rep;
}

inline ZeroScanReport scan_real_zeros(const CharSeries& s, double sigma_lo, double sigma_hi, double step,
                                      double refine_tol, double eval_tol = 1e-10) {
    if (!s.real) throw std::domain_error("scan_real_zeros: character must be real");
    auto f = [&](double sigma) { return evaluate_L(s, sigma, eval_tol).real_value(); };
    return scan_function_zeros(f, s.id, s.period, sigma_lo, sigma_hi, step, refine_tol);
}

inline ZeroScanReport scan_real_zeros(const characters::DirichletCharacter& chi, double sigma_lo, double sigma_hi,
                                      double step, double refine_tol, double eval_tol = 1e-10) {
    return scan_real_zeros(make_series(chi), sigma_lo, sigma_hi, step, refine_tol, eval_tol);
}

// ---------------------------------------------------------------------------
// Primes in arithmetic progressions vs li(x)/phi(q)
// ---------------------------------------------------------------------------

struct PntApResidual {
    std::uint64_t exact_count = 0;
    double main_term = 0;
    double exceptional_term = 0;
    double residual = 0;
};

// exact_count = #{2 < p <= x : p = a (mod q)}; main term li(x)/phi(q); the
// optional (chi, beta) pair adds the hypothetical-zero term
// -chi(a)/phi(q) * int_2^x u^(beta-1)/log u du.
inline PntApResidual pnt_ap_residual(double x, std::uint64_t q, std::uint64_t a, const arith::PrimeTable& table,
                                     const CharSeries* chi = nullptr, std::optional<double> beta = std::nullopt) {
    if (!(x >= 100.0)) throw std::domain_error("pnt_ap_residual: requires x >= 100");
    if (q < 2) throw std::domain_error("pnt_ap_residual: requires q >= 2");
    if (std::gcd(a % q, q) != 1) throw std::domain_error("pnt_ap_residual: requires gcd(a,q) = 1");
    const std::uint64_t xi = static_cast<std::uint64_t>(x);
    if (table.limit < xi) throw arith::capacity_error("pnt_ap_residual: prime table smaller than x");
    if (beta && !chi) throw std::domain_error("pnt_ap_residual: beta supplied without a character");

    PntApResidual r;
    for (std::size_t i = table.first_index_at_least(3); i < table.primes.size(); ++i) {
        const std::uint64_t p = table.primes[i];
        if (p > xi) break;
        if (p % q == a % q) ++r.exact_count;
    }
    const double phi = static_cast<double>(arith::euler_phi(q));
    r.main_term = arith::li(x) / phi;
    if (chi && beta) {
        const double chi_a = chi->at(a).real();
        r.exceptional_term = -chi_a / phi * arith::power_log_integral(*beta, x);
    }
    r.residual = static_cast<double>(r.exact_count) - r.main_term - r.exceptional_term;
    return r;
}

struct IntegralTerm {
    double integral = 0;   // int_2^x u^(beta-1)/log u du
    double leading = 0;    // x^beta / (beta log x)
    double remainder = 0;  // integral - leading
};

inline IntegralTerm integral_term(double beta, double x) {
    if (!(beta > 0.0 && beta <= 1.0)) throw std::domain_error("integral_term: requires 0 < beta <= 1");
    if (!(x >= 4.0)) throw std::domain_error("integral_term: requires x >= 4");
    IntegralTerm t;
    t.integral = arith::power_log_integral(beta, x);
    t.leading = std::pow(x, beta) / (beta * std::log(x));
    t.remainder = t.integral - t.leading;
    return t;
}

// ---------------------------------------------------------------------------
// L(1,chi) bounds report
// ---------------------------------------------------------------------------

struct BoundsRow {
    std::string name;
    double value = 0;       // the comparator
    bool lower = true;      // comparator is a lower bound for L(1,chi)
    bool applicable = true;
    bool heuristic = false; // asymptotic constant with o(1) dropped
    bool pass = false;
    std::string note;
};

struct BoundsReport {
    std::string char_id;
    std::uint64_t q = 0;
    int parity = 1;
    double L1 = 0;
    std::vector<BoundsRow> rows;
    std::string info;
};

inline constexpr double euler_gamma = 0.57721566490153286060651209;

namespace detail {

inline BoundsReport bounds_report_impl(const CharSeries& s, std::uint64_t q, int parity) {
    BoundsReport rep;
    rep.char_id = s.id;
    rep.q = q;
    rep.parity = parity;
    rep.L1 = evaluate_L(s, 1.0, 1e-8).real_value();
    const double sq = std::sqrt(static_cast<double>(q));
    const double lq = std::log(static_cast<double>(q));
    const double llq = std::log(lq);

    auto add = [&](BoundsRow row) {
        row.pass = row.applicable && (row.lower ? rep.L1 > row.value : rep.L1 < row.value);
        rep.rows.push_back(std::move(row));
    };

    add({"elementary", 1.0 / sq, true, true, false, false, "class-number-formula lower bound 1/sqrt(q)"});

    double oest = 3.14159265358979323846 / (55.0 * sq) * lq;
    for (auto [p, e] : arith::factorize(q).factors)
        oest *= 1.0 - 2.0 * std::sqrt(static_cast<double>(p)) / (static_cast<double>(p) + 1.0);
    add({"oesterle", oest, true, true, false, false, "pi/(55 sqrt(q)) log q prod_{p|q}(1 - 2 sqrt(p)/(p+1))"});

    add({"bennett", 12.0 / sq, true, q > 6677, false, false,
         q > 6677 ? "12/sqrt(q), conductor > 6677" : "not applicable: conductor <= 6677"});

    add({"littlewood_lower", 0.5 * 9.86960440108935861883 / (6.0 * std::exp(euler_gamma) * llq), true, llq > 0.0, true,
         false, "GRH window lower endpoint, o(1) dropped"});
    add({"littlewood_upper", 2.0 * std::exp(euler_gamma) * llq, false, llq > 0.0, true, false,
         "GRH window upper endpoint, o(1) dropped"});

    add({"siegel", 1.0 / sq, true, true, true, false,
         "1 - beta >= c(eps)/q^eps with eps = 1/2 and the ineffective c set to 1"});

    rep.info =
        "two-sided relation (GRH with one exception, beta > 3/4): 1-beta << L(1,chi) << (1-beta)(log log q)^2";
    return rep;
}

}  // namespace detail

inline BoundsReport bounds_report(const characters::DirichletCharacter& chi) {
    if (!chi.is_real() || chi.is_principal()) throw std::domain_error("bounds_report: requires a real non-principal character");
    if (!chi.is_primitive()) throw std::domain_error("bounds_report: requires a primitive character");
    return detail::bounds_report_impl(make_series(chi), chi.modulus(), chi.parity());
}

inline BoundsReport bounds_report_kronecker(std::int64_t d) {
    if (!arith::is_fundamental_discriminant(d))
        throw std::domain_error("bounds_report: " + std::to_string(d) + " is not a fundamental discriminant");
    const std::uint64_t q = static_cast<std::uint64_t>(d < 0 ? -d : d);
    return detail::bounds_report_impl(kronecker_series(d), q, d < 0 ? -1 : 1);
}

}  // namespace siegel::lfunction
