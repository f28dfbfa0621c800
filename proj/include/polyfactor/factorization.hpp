#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polyfactor/errors.hpp"
#include "polyfactor/integers.hpp"
#include "polyfactor/poly.hpp"

namespace polyfactor {

// Caps that keep the exponential pieces desk-scale. Kronecker interpolation is
// exponential by nature and trial division of evaluation values is unbounded
// for adversarial coefficients; both fail fast instead of running forever.
struct FactorizeLimits {
    int degree_cap = 16;
    std::uint64_t trial_division_steps = 1u << 22;
    std::uint64_t kronecker_nodes = 1u << 22;
};

struct FactorPower {
    Poly poly; // monic, irreducible over the integers
    int mult;  // >= 1
};

// unit * prod factors[i].poly^factors[i].mult reconstructs the input exactly.
// Factors are sorted by degree then lexicographic coefficients, no repeats.
struct Factorization {
    int unit = 1;
    std::vector<FactorPower> factors;

    Poly monic_part() const {
        Poly p = poly_one();
        for (const auto& f : factors)
            for (int e = 0; e < f.mult; ++e) p = mul(p, f.poly);
        return p;
    }

    Poly reconstruct() const {
        Poly p = monic_part();
        return unit < 0 ? neg(p) : p;
    }

    Int divisor_count() const {
        Int c = 1;
        for (const auto& f : factors) c *= f.mult + 1;
        return c;
    }
};

namespace detail {

// Prime-power decomposition of |v| by trial division. Smooth values (the only
// ones arising from products of small roots) exit quickly; a huge semiprime
// would not, hence the step budget.
inline std::vector<std::pair<Int, int>> factor_magnitude(Int v, std::uint64_t budget) {
    std::vector<std::pair<Int, int>> out;
    v = abs_int(v);
    if (v <= 1) return out;
    std::uint64_t steps = 0;
    auto strip = [&](const Int& d) {
        int e = 0;
        while (divides(d, v)) {
            v = div_exact(v, d);
            ++e;
        }
        if (e > 0) out.emplace_back(d, e);
    };
    strip(2);
    for (Int d = 3; d * d <= v; d += 2) {
        if (++steps > budget)
            throw BudgetExceeded("trial division budget exhausted factoring a constant");
        strip(d);
    }
    if (v > 1) out.emplace_back(v, 1);
    return out;
}

// All positive divisors <= bound, ascending.
inline std::vector<Int> divisors_up_to(const std::vector<std::pair<Int, int>>& pf,
                                       const Int& bound) {
    std::vector<Int> out;
    std::vector<Int> stack{Int(1)};
    for (const auto& [p, e] : pf) {
        std::vector<Int> next;
        for (const Int& d : stack) {
            Int v = d;
            for (int i = 0; i <= e; ++i) {
                if (v > bound) break; // children only grow
                next.push_back(v);
                if (i < e) v *= p;
            }
        }
        stack = std::move(next);
    }
    for (const Int& d : stack)
        if (d <= bound) out.push_back(d);
    std::sort(out.begin(), out.end());
    return out;
}

// Candidate root magnitudes for a monic q with q(0) != 0: positive divisors of
// |q(0)| that respect the Cauchy bound 1 + max|c_i| on any root. For small
// bounds a direct divisibility scan avoids factoring altogether.
inline std::vector<Int> root_candidate_magnitudes(const Poly& q, const FactorizeLimits& lim) {
    Int c0 = abs_int(q.coeffs[0]);
    Int cauchy = 1;
    for (const Int& c : q.coeffs) cauchy = std::max(cauchy, abs_int(c));
    cauchy += 1;
    Int limit = std::min(c0, cauchy);
    const unsigned long direct_cap = 1u << 17;
    std::vector<Int> mags;
    if (limit <= direct_cap) {
        for (unsigned long d = 1; Int(d) <= limit; ++d)
            if (mpz_divisible_ui_p(c0.get_mpz_t(), d)) mags.emplace_back(d);
        return mags;
    }
    return divisors_up_to(factor_magnitude(c0, lim.trial_division_steps), limit);
}

// Deflation by a known root: q = (x - v) * q'. Caller guarantees q(v) = 0.
inline Poly deflate(const Poly& q, const Int& v) {
    std::vector<Int> out(q.coeffs.size() - 1);
    Int carry = q.lead();
    for (std::size_t i = q.coeffs.size() - 1; i-- > 0;) {
        out[i] = carry;
        if (i > 0) carry = q.coeffs[i] + v * carry;
    }
    return Poly(std::move(out));
}

} // namespace detail

// Every integer root with its multiplicity, ascending by root value.
// Found by testing divisor candidates of the trailing nonzero coefficient
// (x^k stripped first), deflating as roots are found.
inline std::vector<std::pair<Int, int>> integer_roots(const Poly& p,
                                                      const FactorizeLimits& lim = {}) {
    if (p.is_zero()) throw Error("integer_roots: zero polynomial");
    if (!p.is_monic()) throw NotMonic("integer_roots requires a monic polynomial");
    std::vector<std::pair<Int, int>> roots;
    Poly q = p;
    std::size_t k = 0;
    while (k < q.coeffs.size() && q.coeffs[k] == 0) ++k;
    if (k > 0) {
        roots.emplace_back(0, static_cast<int>(k));
        q.coeffs.erase(q.coeffs.begin(), q.coeffs.begin() + static_cast<long>(k));
    }
    if (q.degree() == 1) { // root is -c0 directly; no candidate enumeration
        roots.emplace_back(-q.coeffs[0], 1);
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    if (q.degree() >= 2) {
        for (const Int& d : detail::root_candidate_magnitudes(q, lim)) {
            for (const Int& v : {d, Int(-d)}) {
                int m = 0;
                while (q.degree() >= 1 && eval(q, v) == 0) {
                    q = detail::deflate(q, v);
                    ++m;
                }
                if (m > 0) roots.emplace_back(v, m);
            }
            if (q.degree() <= 0) break;
            if (q.degree() == 1) { // cheap endgame, same as the fast path above
                roots.emplace_back(-q.coeffs[0], 1);
                break;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

namespace detail {

// Lagrange basis over the fixed evaluation points, as exact rationals.
// basis[j] has degree d and basis[j](points[l]) = (j == l).
inline std::vector<std::vector<mpq_class>> lagrange_basis(const std::vector<Int>& points) {
    std::size_t n = points.size();
    std::vector<std::vector<mpq_class>> basis;
    basis.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<mpq_class> num{1}; // running product of (x - x_l)
        mpq_class den = 1;
        for (std::size_t l = 0; l < n; ++l) {
            if (l == j) continue;
            num.push_back(0);
            for (std::size_t i = num.size(); i-- > 1;)
                num[i] = num[i - 1] - mpq_class(points[l]) * num[i];
            num[0] = -mpq_class(points[l]) * num[0];
            den *= mpq_class(points[j] - points[l]);
        }
        for (auto& c : num) c /= den;
        basis.push_back(std::move(num));
    }
    return basis;
}

// Kronecker evaluation points in canonical order: 0, 1, -1, 2, -2, ...
inline std::vector<Int> kronecker_points(std::size_t count) {
    std::vector<Int> pts;
    pts.emplace_back(0);
    for (long j = 1; pts.size() < count; ++j) {
        pts.emplace_back(j);
        if (pts.size() < count) pts.emplace_back(-j);
    }
    pts.resize(count);
    return pts;
}

// Signed divisor candidates for one evaluation value, ordered |w| ascending
// with positive first; the w_0 > 0 restriction at index 0 halves the tuple
// space (g and -g interpolate from negated tuples and normalize identically).
inline std::vector<Int> tuple_candidates(const Int& value, bool positive_only,
                                         const FactorizeLimits& lim) {
    auto divs = divisors_up_to(factor_magnitude(value, lim.trial_division_steps),
                               abs_int(value));
    std::vector<Int> out;
    out.reserve(divs.size() * (positive_only ? 1 : 2));
    for (const Int& d : divs) {
        out.push_back(d);
        if (!positive_only) out.push_back(-d);
    }
    return out;
}

// Splits a monic root-free q (degree >= 2) into monic irreducible factors,
// appended to `out`. Ascending candidate degree d guarantees each hit is
// itself irreducible: a reducible hit would contain a smaller-degree factor
// of q already ruled out.
inline void kronecker_split(Poly q, std::vector<Poly>& out, const FactorizeLimits& lim,
                            std::uint64_t& nodes) {
    while (true) {
        long n = q.degree();
        if (n <= 0) return;
        if (n <= 3) { // root-free quadratics/cubics are irreducible
            out.push_back(q);
            return;
        }
        bool split = false;
        for (long d = 2; d <= n / 2 && !split; ++d) {
            auto points = kronecker_points(static_cast<std::size_t>(d) + 1);
            auto basis = lagrange_basis(points);
            std::vector<std::vector<Int>> cand(points.size());
            for (std::size_t j = 0; j < points.size(); ++j) {
                Int v = eval(q, points[j]);
                if (v == 0)
                    throw Error("internal: kronecker_split expects a root-free polynomial");
                cand[j] = tuple_candidates(v, j == 0, lim);
            }
            // Odometer over candidate tuples, rightmost index fastest.
            std::vector<std::size_t> idx(points.size(), 0);
            while (true) {
                if (++nodes > lim.kronecker_nodes)
                    throw BudgetExceeded("kronecker tuple budget exhausted");
                // Interpolate sum w_j * basis_j and test integrality.
                std::vector<mpq_class> g(static_cast<std::size_t>(d) + 1, 0);
                for (std::size_t j = 0; j < points.size(); ++j) {
                    mpq_class w(cand[j][idx[j]]);
                    for (std::size_t i = 0; i < basis[j].size(); ++i) g[i] += w * basis[j][i];
                }
                bool ok = true;
                for (const auto& c : g)
                    if (c.get_den() != 1) { ok = false; break; }
                if (ok) {
                    Poly cand_poly;
                    cand_poly.coeffs.reserve(g.size());
                    for (const auto& c : g) cand_poly.coeffs.push_back(c.get_num());
                    cand_poly.normalize();
                    if (cand_poly.degree() == d) {
                        if (cand_poly.lead() == -1) cand_poly = neg(cand_poly);
                        if (cand_poly.is_monic()) {
                            if (auto rest = exact_div(q, cand_poly)) {
                                out.push_back(cand_poly); // irreducible, see above
                                q = *rest;
                                split = true;
                                break;
                            }
                        }
                    }
                }
                std::size_t pos = idx.size();
                while (pos > 0 && ++idx[pos - 1] == cand[pos - 1].size()) idx[--pos] = 0;
                if (pos == 0) break;
            }
        }
        if (!split) {
            out.push_back(q);
            return;
        }
    }
}

inline Factorization assemble(int unit, std::vector<Poly> irreducibles) {
    std::sort(irreducibles.begin(), irreducibles.end());
    Factorization f;
    f.unit = unit;
    for (auto& q : irreducibles) {
        if (!f.factors.empty() && f.factors.back().poly == q)
            ++f.factors.back().mult;
        else
            f.factors.push_back({std::move(q), 1});
    }
    return f;
}

// Shared pipeline for a +/- monic input: strip the unit, extract x^k and
// integer roots, hand the root-free remainder to Kronecker interpolation.
inline Factorization factorize_pm_monic(const Poly& p, const FactorizeLimits& lim) {
    int unit = sign(p.lead());
    Poly m = unit < 0 ? neg(p) : p;
    if (!m.is_monic()) throw NotMonic("factorization requires a +/- monic polynomial");
    if (m.degree() == 0) return Factorization{unit, {}};
    std::vector<Poly> irr;
    Poly q = m;
    for (const auto& [root, mult] : integer_roots(m, lim)) {
        Poly lin({-root, Int(1)});
        for (int e = 0; e < mult; ++e) {
            irr.push_back(lin);
            q = *exact_div(q, lin);
        }
    }
    if (q.degree() > lim.degree_cap)
        throw DegreeTooLarge("root-free remainder of degree " + std::to_string(q.degree()) +
                             " exceeds the cap " + std::to_string(lim.degree_cap));
    std::uint64_t nodes = 0;
    detail::kronecker_split(q, irr, lim, nodes);
    return assemble(unit, std::move(irr));
}

} // namespace detail

// Complete irreducible factorization by Kronecker's method (linear factors are
// found by the d=1 specialization, divisor testing on the trailing
// coefficient, before interpolation takes over for degree >= 2).
inline Factorization kronecker_factor(const Poly& p, const FactorizeLimits& lim = {}) {
    if (p.is_zero()) throw Error("kronecker_factor: zero polynomial");
    if (p.degree() > lim.degree_cap)
        throw DegreeTooLarge("degree " + std::to_string(p.degree()) +
                             " exceeds the cap " + std::to_string(lim.degree_cap));
    return detail::factorize_pm_monic(p, lim);
}

// Canonical factorization of a monic polynomial: integer roots first (no
// degree cap on that part), Kronecker on the root-free remainder.
inline Factorization factorize(const Poly& p, const FactorizeLimits& lim = {}) {
    if (p.is_zero()) throw Error("factorize: zero polynomial");
    if (!p.is_monic()) throw NotMonic("factorize requires a monic polynomial");
    return detail::factorize_pm_monic(p, lim);
}

inline bool is_irreducible(const Poly& p, const FactorizeLimits& lim = {}) {
    if (p.is_zero() || p.degree() == 0) return false;
    Factorization f = factorize(p, lim);
    return f.factors.size() == 1 && f.factors[0].mult == 1;
}

// Streams every monic divisor of the factored polynomial exactly once, in
// ascending lexicographic order of the exponent vector (leftmost factor most
// significant). The order is load-bearing: deciders pick the lexicographically
// smallest witness, so first hit in this stream is already canonical.
class DivisorStream {
public:
    struct Item {
        Poly divisor;
        std::vector<int> exponents;
    };

    explicit DivisorStream(const Factorization& f) : fac_(&f) {
        exps_.assign(f.factors.size(), 0);
        powers_.reserve(f.factors.size());
        for (const auto& fp : f.factors) {
            std::vector<Poly> pw{poly_one()};
            for (int e = 1; e <= fp.mult; ++e) pw.push_back(mul(pw.back(), fp.poly));
            powers_.push_back(std::move(pw));
        }
        prefix_.assign(f.factors.size(), poly_one());
        recompute_from(0);
    }

    Int count() const { return fac_->divisor_count(); }

    std::optional<Item> next() {
        if (done_) return std::nullopt;
        Item item{current(), exps_};
        advance();
        return item;
    }

private:
    Poly current() const { return prefix_.empty() ? poly_one() : prefix_.back(); }

    void recompute_from(std::size_t pos) {
        for (std::size_t i = pos; i < prefix_.size(); ++i) {
            const Poly& pw = powers_[i][static_cast<std::size_t>(exps_[i])];
            prefix_[i] = (i == 0) ? pw : mul(prefix_[i - 1], pw);
        }
    }

    void advance() {
        // Rightmost exponent fastest == ascending lex on the vector.
        std::size_t pos = exps_.size();
        while (pos > 0) {
            if (exps_[pos - 1] < fac_->factors[pos - 1].mult) {
                ++exps_[pos - 1];
                recompute_from(pos - 1);
                return;
            }
            exps_[--pos] = 0;
        }
        done_ = true;
    }

    const Factorization* fac_;
    std::vector<int> exps_;
    std::vector<std::vector<Poly>> powers_;
    std::vector<Poly> prefix_;
    bool done_ = false;
};

inline std::vector<DivisorStream::Item> all_divisors(const Factorization& f,
                                                     std::uint64_t budget = 1u << 22) {
    DivisorStream stream(f);
    if (stream.count() > budget)
        throw BudgetExceeded("divisor count " + int_to_string(stream.count()) +
                             " exceeds budget " + std::to_string(budget));
    std::vector<DivisorStream::Item> out;
    while (auto item = stream.next()) out.push_back(std::move(*item));
    return out;
}

} // namespace polyfactor
