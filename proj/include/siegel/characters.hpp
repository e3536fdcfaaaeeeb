#pragma once

// The Dirichlet character group mod q.  (Z/qZ)^x is decomposed into cyclic
// components via CRT (2-part first, with generators -1 and 5 for 2^e, e >= 3;
// a primitive root per odd prime power).  Full per-component discrete-log
// tables are built once, so character evaluation is a table lookup.  Character
// values are carried as exact rational exponents of roots of unity; conversion
// to floating complex happens only at sum boundaries, which keeps the
// orthogonality and Gauss-sum identities exact up to final rounding.

#include <cassert>
#include <complex>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "siegel/arith.hpp"

namespace siegel::characters {

inline constexpr std::uint64_t unit_group_cap = 1'000'000;
inline constexpr double two_pi = 6.283185307179586476925286766559;

// e(num/den) = exp(2*pi*i*num/den), stored reduced with 0 <= num < den.
struct RootOfUnity {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static RootOfUnity make(std::int64_t t, std::int64_t m) {
        t %= m;
        if (t < 0) t += m;
        const std::int64_t g = std::gcd(t, m);
        return RootOfUnity{t / g, m / g};
    }
    std::complex<double> value() const {
        const double a = two_pi * static_cast<double>(num) / static_cast<double>(den);
        return {std::cos(a), std::sin(a)};
    }
    bool is_one() const { return num == 0; }
    bool is_minus_one() const { return den == 2 && num == 1; }
    friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

// A character value: zero off the units, a root of unity on them.
struct CharValue {
    bool zero = true;
    RootOfUnity root{};

    std::complex<double> value() const { return zero ? std::complex<double>(0.0, 0.0) : root.value(); }
    friend bool operator==(const CharValue&, const CharValue&) = default;
};

namespace detail {

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = r * b % m;  // m <= 1e6, products stay below 2^63
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, newt = 1, r = static_cast<std::int64_t>(m), newr = static_cast<std::int64_t>(a % m);
    while (newr != 0) {
        const std::int64_t qq = r / newr;
        t = std::exchange(newt, t - qq * newt);
        r = std::exchange(newr, r - qq * newr);
    }
    if (r != 1) throw std::domain_error("invmod: not invertible");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

// Smallest primitive root mod p^k (odd p); lifted so it generates mod p^k.
inline std::uint64_t primitive_root(std::uint64_t p, std::uint32_t k) {
    const auto fac = arith::factorize(p - 1);
    std::uint64_t g = 2;
    for (;; ++g) {
        bool ok = true;
        for (auto [r, e] : fac.factors)
            if (powmod(g, (p - 1) / r, p) == 1) { ok = false; break; }
        if (ok) break;
    }
    if (k >= 2) {
        const std::uint64_t p2 = p * p;
        if (powmod(g, p - 1, p2) == 1) g += p;
    }
    return g;
}

}  // namespace detail

// CRT-cyclic structure of (Z/qZ)^x with complete discrete-log tables.
class UnitGroup {
  public:
    struct Component {
        std::uint64_t prime;       // underlying prime of this factor
        std::uint32_t prime_exp;   // k for the factor p^k
        std::uint64_t generator;   // CRT-lifted generator (a residue mod q)
        std::uint64_t order;
        enum class Kind { odd_prime_power, two_minus_one, two_five } kind;
    };

    std::uint64_t modulus() const { return q_; }
    std::uint64_t phi() const { return phi_; }
    std::uint64_t exponent() const { return lambda_; }
    const std::vector<Component>& components() const { return comps_; }

    bool is_unit(std::uint64_t residue) const { return unit_[residue % q_] != 0; }
    std::uint32_t dlog(std::size_t comp, std::uint64_t residue) const { return dlog_[comp][residue % q_]; }

    static std::shared_ptr<const UnitGroup> build(std::uint64_t q) {
        if (q == 0 || q > unit_group_cap)
            throw arith::capacity_error("unit_group: modulus " + std::to_string(q) + " out of range [1," +
                                        std::to_string(unit_group_cap) + "]");
        return std::shared_ptr<const UnitGroup>(new UnitGroup(q));
    }

  private:
    explicit UnitGroup(std::uint64_t q) : q_(q) {
        const auto fac = arith::factorize(q);
        std::uint32_t e2 = 0;
        for (auto [p, e] : fac.factors)
            if (p == 2) e2 = e;

        auto lift = [&](std::uint64_t g, std::uint64_t pk) -> std::uint64_t {
            // G = g (mod pk), G = 1 (mod q/pk)
            const std::uint64_t rest = q / pk;
            if (rest == 1) return g % q;
            const std::uint64_t t = (g % pk + pk - 1 % pk) % pk * detail::invmod(rest % pk, pk) % pk;
            return (1 + rest * t) % q;
        };

        if (e2 == 2) {
            comps_.push_back({2, 2, lift(3, 4), 2, Component::Kind::two_minus_one});
        } else if (e2 >= 3) {
            const std::uint64_t pk = std::uint64_t(1) << e2;
            comps_.push_back({2, e2, lift(pk - 1, pk), 2, Component::Kind::two_minus_one});
            comps_.push_back({2, e2, lift(5, pk), pk >> 2, Component::Kind::two_five});
        }
        for (auto [p, e] : fac.factors) {
            if (p == 2) continue;
            std::uint64_t pk = 1;
            for (std::uint32_t i = 0; i < e; ++i) pk *= p;
            const std::uint64_t g = detail::primitive_root(p, e);
            comps_.push_back({p, e, lift(g, pk), pk / p * (p - 1), Component::Kind::odd_prime_power});
        }

        phi_ = arith::euler_phi(fac);
        lambda_ = 1;
        for (const auto& c : comps_) lambda_ = std::lcm(lambda_, c.order);

        unit_.assign(q_, 0);
        dlog_.assign(comps_.size(), std::vector<std::uint32_t>(q_, 0));
        std::vector<std::uint32_t> stack(comps_.size(), 0);
        std::uint64_t seen = 0;
        // enumerate all exponent tuples, maintaining the running product
        auto rec = [&](auto&& self, std::size_t i, std::uint64_t r) -> void {
            if (i == comps_.size()) {
                const std::uint64_t idx = r % q_;
                unit_[idx] = 1;
                for (std::size_t j = 0; j < comps_.size(); ++j) dlog_[j][idx] = stack[j];
                ++seen;
                return;
            }
            std::uint64_t cur = r;
            for (std::uint32_t t = 0; t < comps_[i].order; ++t) {
                stack[i] = t;
                self(self, i + 1, cur);
                cur = cur * comps_[i].generator % q_;
            }
        };
        rec(rec, 0, 1 % q_);
        assert(seen == phi_);
    }

    std::uint64_t q_;
    std::uint64_t phi_ = 1;
    std::uint64_t lambda_ = 1;
    std::vector<Component> comps_;
    std::vector<std::uint8_t> unit_;
    std::vector<std::vector<std::uint32_t>> dlog_;
};

// Public constructor honouring the documented modulus range.
inline std::shared_ptr<const UnitGroup> unit_group(std::uint64_t q) {
    if (q < 3 || q > unit_group_cap)
        throw arith::capacity_error("unit_group: modulus " + std::to_string(q) + " out of range [3," +
                                    std::to_string(unit_group_cap) + "]");
    return UnitGroup::build(q);
}

class DirichletCharacter {
  public:
    DirichletCharacter(std::shared_ptr<const UnitGroup> group, std::vector<std::uint32_t> exps)
        : group_(std::move(group)), exps_(std::move(exps)) {
        assert(exps_.size() == group_->components().size());
    }

    std::uint64_t modulus() const { return group_->modulus(); }
    const UnitGroup& group() const { return *group_; }
    const std::shared_ptr<const UnitGroup>& group_ptr() const { return group_; }
    const std::vector<std::uint32_t>& exponents() const { return exps_; }

    CharValue operator()(std::int64_t n) const {
        const std::uint64_t q = group_->modulus();
        std::uint64_t r = static_cast<std::uint64_t>(((n % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q)) %
                                                     static_cast<std::int64_t>(q));
        if (!group_->is_unit(r)) return CharValue{true, {}};
        const std::uint64_t lam = group_->exponent();
        std::uint64_t t = 0;
        const auto& comps = group_->components();
        for (std::size_t i = 0; i < comps.size(); ++i)
            t = (t + static_cast<std::uint64_t>(exps_[i]) * group_->dlog(i, r) % lam * (lam / comps[i].order)) % lam;
        return CharValue{false, RootOfUnity::make(static_cast<std::int64_t>(t), static_cast<std::int64_t>(lam))};
    }

    std::complex<double> value(std::int64_t n) const { return (*this)(n).value(); }

    bool is_principal() const {
        for (auto c : exps_)
            if (c != 0) return false;
        return true;
    }

    std::uint64_t order() const {
        std::uint64_t o = 1;
        const auto& comps = group_->components();
        for (std::size_t i = 0; i < comps.size(); ++i)
            o = std::lcm(o, comps[i].order / std::gcd<std::uint64_t>(comps[i].order, exps_[i]));
        return o;
    }

    bool is_real() const { return order() <= 2; }

    // chi(-1), +1 or -1
    int parity() const {
        if (modulus() <= 2) return 1;
        const CharValue v = (*this)(static_cast<std::int64_t>(modulus()) - 1);
        assert(!v.zero);
        return v.root.is_one() ? 1 : -1;
    }
    bool is_odd() const { return parity() == -1; }

    // Smallest f | q with chi trivial on units = 1 (mod f); local closed form
    // per CRT component (the brute-force kernel check is the test oracle).
    std::uint64_t conductor() const {
        if (cond_) return cond_;
        std::uint64_t f = 1;
        const auto& comps = group_->components();
        std::uint64_t two_part = 1;
        bool neg_one_nontrivial = false;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            const auto& c = comps[i];
            const std::uint32_t e = exps_[i];
            switch (c.kind) {
                case UnitGroup::Component::Kind::odd_prime_power: {
                    if (e == 0) break;
                    std::uint32_t v = 0;
                    std::uint64_t ee = e;
                    while (ee % c.prime == 0) { ee /= c.prime; ++v; }
                    std::uint32_t j = (v + 1 >= c.prime_exp) ? 1 : c.prime_exp - v;
                    std::uint64_t pj = 1;
                    for (std::uint32_t i2 = 0; i2 < j; ++i2) pj *= c.prime;
                    f *= pj;
                    break;
                }
                case UnitGroup::Component::Kind::two_minus_one:
                    if (e != 0) neg_one_nontrivial = true;
                    if (c.prime_exp == 2 && e != 0) two_part = std::max<std::uint64_t>(two_part, 4);
                    break;
                case UnitGroup::Component::Kind::two_five: {
                    if (e == 0) break;
                    std::uint32_t v = 0;
                    std::uint32_t ee = e;
                    while ((ee & 1) == 0) { ee >>= 1; ++v; }
                    two_part = std::max<std::uint64_t>(two_part, std::uint64_t(1) << (c.prime_exp - v));
                    break;
                }
            }
        }
        if (two_part == 1 && neg_one_nontrivial) two_part = 4;
        cond_ = f * two_part;
        return cond_;
    }

    bool is_primitive() const { return conductor() == modulus(); }

    DirichletCharacter conjugate() const {
        std::vector<std::uint32_t> e(exps_.size());
        const auto& comps = group_->components();
        for (std::size_t i = 0; i < comps.size(); ++i)
            e[i] = exps_[i] == 0 ? 0 : static_cast<std::uint32_t>(comps[i].order - exps_[i]);
        return DirichletCharacter(group_, std::move(e));
    }

    // The primitive character mod conductor() agreeing with chi on the units.
    DirichletCharacter primitive_inducer() const;

    // lexicographic rank of the exponent tuple; stable across runs
    std::uint64_t index() const {
        std::uint64_t idx = 0;
        const auto& comps = group_->components();
        for (std::size_t i = 0; i < comps.size(); ++i) idx = idx * comps[i].order + exps_[i];
        return idx;
    }

    std::string label() const { return "chi(" + std::to_string(modulus()) + "," + std::to_string(index()) + ")"; }

  private:
    std::shared_ptr<const UnitGroup> group_;
    std::vector<std::uint32_t> exps_;
    mutable std::uint64_t cond_ = 0;
};

// Exactly phi(q) characters, lexicographic on exponent tuples (principal first).
inline std::vector<DirichletCharacter> enumerate_characters(const std::shared_ptr<const UnitGroup>& g) {
    std::vector<DirichletCharacter> out;
    out.reserve(g->phi());
    std::vector<std::uint32_t> exps(g->components().size(), 0);
    for (;;) {
        out.emplace_back(g, exps);
        std::size_t i = exps.size();
        while (i > 0) {
            --i;
            if (++exps[i] < g->components()[i].order) break;
            exps[i] = 0;
            if (i == 0) return out;
        }
        if (exps.empty()) return out;
    }
}

inline std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q) {
    return enumerate_characters(unit_group(q));
}

inline DirichletCharacter principal_character(std::uint64_t q) {
    auto g = unit_group(q);
    return DirichletCharacter(g, std::vector<std::uint32_t>(g->components().size(), 0));
}

inline std::vector<DirichletCharacter> real_odd_characters(std::uint64_t q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(q))
        if (chi.is_real() && chi.is_odd()) out.push_back(chi);
    return out;
}

inline DirichletCharacter DirichletCharacter::primitive_inducer() const {
    const std::uint64_t f = conductor();
    if (f == modulus()) return *this;
    auto gf = UnitGroup::build(f);
    const auto& comps = group_->components();
    std::optional<DirichletCharacter> found;
    for (auto& psi : enumerate_characters(gf)) {
        bool match = true;
        for (std::size_t i = 0; i < comps.size() && match; ++i) {
            if (psi(static_cast<std::int64_t>(comps[i].generator)) !=
                (*this)(static_cast<std::int64_t>(comps[i].generator)))
                match = false;
        }
        if (match) {
            assert(!found);
            found = psi;
        }
    }
    if (!found) throw std::logic_error("primitive_inducer: no matching character (conductor bug)");
    assert(found->conductor() == f);
    return *found;
}

// ---------------------------------------------------------------------------
// Ramanujan sums
// ---------------------------------------------------------------------------

// c_q(k) = mu(q/g) * phi(q)/phi(q/g), g = gcd(k,q); exact integer.
inline std::int64_t ramanujan_sum(std::uint64_t q, std::int64_t k) {
    if (q == 0) throw std::domain_error("ramanujan_sum: q must be positive");
    std::uint64_t kr = static_cast<std::uint64_t>(((k % static_cast<std::int64_t>(q)) + static_cast<std::int64_t>(q)) %
                                                  static_cast<std::int64_t>(q));
    const std::uint64_t g = (kr == 0) ? q : std::gcd(kr, q);
    const std::uint64_t m = q / g;
    const auto fm = arith::factorize(m);
    const int mu = arith::mobius(fm);
    if (mu == 0) return 0;
    const std::uint64_t phi_q = arith::euler_phi(q);
    const std::uint64_t phi_m = arith::euler_phi(fm);
    assert(phi_q % phi_m == 0);
    return static_cast<std::int64_t>(phi_q / phi_m) * mu;
}

// ---------------------------------------------------------------------------
// Gauss sums  tau_k(chi) = sum_{a mod q} e(ak/q) chi(a)
// ---------------------------------------------------------------------------

// Shared table of the L-th roots of unity (cos/sin), reusable across all
// characters of one modulus.
struct RootTable {
    std::uint64_t order = 0;
    std::vector<double> cs, sn;

    static std::shared_ptr<const RootTable> build(std::uint64_t L) {
        auto t = std::make_shared<RootTable>();
        t->order = L;
        t->cs.resize(L);
        t->sn.resize(L);
        for (std::uint64_t j = 0; j < L; ++j) {
            const double a = two_pi * static_cast<double>(j) / static_cast<double>(L);
            t->cs[j] = std::cos(a);
            t->sn[j] = std::sin(a);
        }
        return t;
    }
};

inline std::uint64_t gauss_root_order(const UnitGroup& g) { return std::lcm(g.modulus(), g.exponent()); }

// Accumulates e(ak/q)chi(a) exactly as integer multiplicities of L-th roots
// of unity; conversion to complex happens once per sum.  Falls back to
// compensated floating accumulation if L would be unreasonably large.
class GaussSummer {
  public:
    explicit GaussSummer(const DirichletCharacter& chi, std::shared_ptr<const RootTable> table = nullptr,
                         std::uint64_t exact_cap = std::uint64_t(1) << 24)
        : q_(chi.modulus()) {
        const auto& g = chi.group();
        const std::uint64_t L = gauss_root_order(g);
        exact_ = (L <= exact_cap);
        if (exact_) {
            if (table && table->order == L)
                table_ = std::move(table);
            else
                table_ = RootTable::build(L);
            L_ = L;
            lq_ = L / q_;
            counts_.assign(L_, 0);
            units_.reserve(g.phi());
            tnum_.reserve(g.phi());
            const std::uint64_t lam = g.exponent();
            const std::uint64_t llam = L / lam;
            for (std::uint64_t a = 1; a <= q_; ++a) {
                if (!g.is_unit(a % q_)) continue;
                const CharValue v = chi(static_cast<std::int64_t>(a));
                units_.push_back(a % q_);
                tnum_.push_back(static_cast<std::uint64_t>(v.root.num) * (static_cast<std::uint64_t>(lam) / v.root.den) %
                                lam * llam);
            }
        } else {
            const auto& gg = chi.group();
            for (std::uint64_t a = 1; a <= q_; ++a) {
                if (!gg.is_unit(a % q_)) continue;
                units_.push_back(a % q_);
                vals_.push_back(chi(static_cast<std::int64_t>(a)).value());
            }
        }
    }

    std::complex<double> tau(std::int64_t k) const {
        std::uint64_t kr = static_cast<std::uint64_t>(
            ((k % static_cast<std::int64_t>(q_)) + static_cast<std::int64_t>(q_)) % static_cast<std::int64_t>(q_));
        if (exact_) {
            touched_.clear();
            for (std::size_t i = 0; i < units_.size(); ++i) {
                const std::uint64_t idx = (units_[i] * kr % q_ * lq_ + tnum_[i]) % L_;
                if (counts_[idx]++ == 0) touched_.push_back(idx);
            }
            double re = 0.0, im = 0.0;
            for (std::uint64_t idx : touched_) {
                const double c = static_cast<double>(counts_[idx]);
                re += c * table_->cs[idx];
                im += c * table_->sn[idx];
                counts_[idx] = 0;
            }
            return {re, im};
        }
        // compensated accumulation
        std::complex<double> sum = 0.0, comp = 0.0;
        for (std::size_t i = 0; i < units_.size(); ++i) {
            const double a = two_pi * static_cast<double>(units_[i] * kr % q_) / static_cast<double>(q_);
            const std::complex<double> term = std::complex<double>(std::cos(a), std::sin(a)) * vals_[i];
            const std::complex<double> y = term - comp;
            const std::complex<double> t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        return sum;
    }

  private:
    std::uint64_t q_;
    bool exact_ = true;
    std::uint64_t L_ = 0, lq_ = 0;
    std::shared_ptr<const RootTable> table_;
    std::vector<std::uint64_t> units_;
    std::vector<std::uint64_t> tnum_;              // exact path: exponent offsets
    std::vector<std::complex<double>> vals_;       // fallback path
    mutable std::vector<std::int32_t> counts_;
    mutable std::vector<std::uint64_t> touched_;
};

inline std::complex<double> gauss_sum(const DirichletCharacter& chi, std::int64_t k) {
    return GaussSummer(chi).tau(k);
}

}  // namespace siegel::characters
