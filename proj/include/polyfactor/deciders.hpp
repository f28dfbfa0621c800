#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyfactor/combinat.hpp"
#include "polyfactor/errors.hpp"
#include "polyfactor/factorization.hpp"
#include "polyfactor/integers.hpp"
#include "polyfactor/poly.hpp"

namespace polyfactor::deciders {

enum class TrivialFactors { Allowed, Forbidden };
enum class SignedFactors { MonicOnly, AllowSign };
enum class SearchStrategy { Exhaustive, MITM };
// Which end of the coefficient list factor_with_coefficients indexes from.
// Absolute reads coef(q, m); FromLeading reads coef(q, deg(q) - m), the
// Vieta-consistent convention certified by the reduction sweeps.
enum class CoefIndex { Absolute, FromLeading };

struct DeciderConfig {
    TrivialFactors trivial_factors = TrivialFactors::Allowed;
    SignedFactors signed_factors = SignedFactors::MonicOnly;
    SearchStrategy strategy = SearchStrategy::MITM;
    int degree_cap = 16;
    CoefIndex coef_index = CoefIndex::Absolute;
    std::uint64_t node_budget = std::uint64_t(1) << 22;
};

struct FactorWitness {
    Poly q;
    std::optional<Poly> r;   // pair problems: p = q * r
    std::vector<int> cursor; // exponent vector over the canonical factor list
    Int certified_value;     // the constrained quantity, re-derived from q
};

struct Decision {
    bool yes = false;
    std::optional<FactorWitness> witness;
    std::uint64_t nodes = 0;
    std::string strategy;
};

namespace detail {

inline FactorizeLimits limits_for(const DeciderConfig& cfg) {
    FactorizeLimits lim;
    lim.degree_cap = cfg.degree_cap;
    return lim;
}

// ---- value-domain helpers so the searches run on int64 when the precomputed
// ---- product bound allows it, and on GMP integers otherwise.

inline bool value_divides(std::int64_t d, std::int64_t v) { return v % d == 0; }
inline std::int64_t value_div(std::int64_t v, std::int64_t d) { return v / d; }
inline bool value_divides(const Int& d, const Int& v) { return divides(d, v); }
inline Int value_div(const Int& v, const Int& d) { return div_exact(v, d); }

inline bool is_zero_vec(const std::vector<int>& e) {
    return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

inline bool is_full_vec(const std::vector<int>& e, const std::vector<int>& mults) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != mults[i]) return false;
    return true;
}

// Lexicographically ascending odometer (rightmost position fastest).
// Returns false once the space is exhausted.
inline bool odometer_advance(std::vector<int>& e, const std::vector<int>& mults,
                             std::size_t& changed_from) {
    std::size_t pos = e.size();
    while (pos > 0) {
        if (e[pos - 1] < mults[pos - 1]) {
            ++e[pos - 1];
            changed_from = pos - 1;
            return true;
        }
        e[--pos] = 0;
    }
    return false;
}

// Exhaustive scan over exponent vectors with running products, zeros allowed
// in the values. Matches any of the targets; reports which one. First hit in
// this order is the lexicographically smallest witness.
template <class V>
std::optional<std::pair<std::vector<int>, std::size_t>> exhaustive_product_scan(
    const std::vector<V>& vals, const std::vector<int>& mults, const std::vector<V>& targets,
    bool excl_zero, bool excl_full, std::uint64_t& nodes, std::uint64_t budget) {
    const std::size_t n = vals.size();
    std::vector<int> e(n, 0);
    std::vector<V> prefix(n, V(1));
    auto recompute = [&](std::size_t from) {
        for (std::size_t i = from; i < n; ++i) {
            V base = (i == 0) ? V(1) : prefix[i - 1];
            for (int j = 0; j < e[i]; ++j) base = base * vals[i];
            prefix[i] = base;
        }
    };
    recompute(0);
    while (true) {
        if (++nodes > budget) throw BudgetExceeded("decider enumeration budget exhausted");
        V value = n == 0 ? V(1) : prefix[n - 1];
        bool admissible = !(excl_zero && is_zero_vec(e)) && !(excl_full && is_full_vec(e, mults));
        if (admissible)
            for (std::size_t t = 0; t < targets.size(); ++t)
                if (value == targets[t]) return std::make_pair(e, t);
        std::size_t from = 0;
        if (!odometer_advance(e, mults, from)) return std::nullopt;
        recompute(from);
    }
}

// Meet-in-the-middle over an exponent-vector space with nonzero values.
// Left half = a prefix of the positions, iterated in ascending lex order;
// right half = the rest, tabulated value -> vectors in ascending lex order.
// The first left prefix with any admissible completion therefore yields the
// globally lex-smallest solution vector.
template <class V>
std::optional<std::pair<std::vector<int>, std::size_t>> mitm_product_search(
    const std::vector<V>& vals, const std::vector<int>& mults, const std::vector<V>& targets,
    bool excl_zero, bool excl_full, std::uint64_t& nodes, std::uint64_t budget) {
    const std::size_t n = vals.size();
    // Balance the two halves by enumeration size.
    double total = 1, acc = 1;
    for (int m : mults) total *= m + 1;
    std::size_t mid = 0;
    while (mid < n && acc * acc < total) acc *= mults[mid++] + 1;

    struct Entry {
        V value;
        std::vector<int> exps;
    };
    std::vector<Entry> table;
    {
        std::vector<int> e(n - mid, 0);
        std::vector<int> m(mults.begin() + static_cast<long>(mid), mults.end());
        std::vector<V> prefix(e.size(), V(1));
        auto recompute = [&](std::size_t from) {
            for (std::size_t i = from; i < e.size(); ++i) {
                V base = (i == 0) ? V(1) : prefix[i - 1];
                for (int j = 0; j < e[i]; ++j) base = base * vals[mid + i];
                prefix[i] = base;
            }
        };
        recompute(0);
        while (true) {
            if (++nodes > budget) throw BudgetExceeded("decider enumeration budget exhausted");
            table.push_back({e.empty() ? V(1) : prefix.back(), e});
            std::size_t from = 0;
            if (!odometer_advance(e, m, from)) break;
            recompute(from);
        }
        // stable: within one value, entries stay in ascending lex order
        std::stable_sort(table.begin(), table.end(),
                         [](const Entry& a, const Entry& b) { return a.value < b.value; });
    }

    std::vector<int> e(mid, 0);
    std::vector<int> lm(mults.begin(), mults.begin() + static_cast<long>(mid));
    const std::vector<int> rm(mults.begin() + static_cast<long>(mid), mults.end());
    std::vector<V> prefix(mid, V(1));
    auto recompute = [&](std::size_t from) {
        for (std::size_t i = from; i < mid; ++i) {
            V base = (i == 0) ? V(1) : prefix[i - 1];
            for (int j = 0; j < e[i]; ++j) base = base * vals[i];
            prefix[i] = base;
        }
    };
    recompute(0);
    while (true) {
        if (++nodes > budget) throw BudgetExceeded("decider enumeration budget exhausted");
        V left = mid == 0 ? V(1) : prefix[mid - 1];
        const std::vector<int>* best = nullptr;
        std::size_t best_target = 0;
        bool left_zero = is_zero_vec(e);
        bool left_full = is_full_vec(e, lm);
        for (std::size_t t = 0; t < targets.size(); ++t) {
            if (!value_divides(left, targets[t])) continue;
            V need = value_div(targets[t], left);
            auto lo = std::lower_bound(table.begin(), table.end(), need,
                                       [](const Entry& a, const V& v) { return a.value < v; });
            for (auto it = lo; it != table.end() && it->value == need; ++it) {
                // At most the all-zero and all-max right vectors can be
                // inadmissible, so this scan ends within three steps.
                if (excl_zero && left_zero && is_zero_vec(it->exps)) continue;
                if (excl_full && left_full && is_full_vec(it->exps, rm)) continue;
                if (!best || std::lexicographical_compare(it->exps.begin(), it->exps.end(),
                                                          best->begin(), best->end())) {
                    best = &it->exps;
                    best_target = t;
                }
                break; // first admissible entry is lex-min for this target
            }
        }
        if (best) {
            std::vector<int> full(e);
            full.insert(full.end(), best->begin(), best->end());
            return std::make_pair(full, best_target);
        }
        std::size_t from = 0;
        if (!odometer_advance(e, lm, from)) return std::nullopt;
        recompute(from);
    }
}

// Dispatch on the value domain: run on int64 when every value magnitude and
// the worst-case product bound fit, identical algorithm otherwise on Int.
struct ProductSearchInput {
    std::vector<Int> vals;
    std::vector<int> mults;
    std::vector<Int> targets;
    bool excl_zero = false;
    bool excl_full = false;
    bool allow_zero_values = false; // exhaustive scan only
};

inline std::optional<std::pair<std::vector<int>, std::size_t>> run_product_search(
    const ProductSearchInput& in, bool use_mitm, std::uint64_t& nodes, std::uint64_t budget) {
    Int bound = 1;
    for (std::size_t i = 0; i < in.vals.size(); ++i) {
        Int a = abs_int(in.vals[i]);
        if (a < 1) a = 1;
        for (int j = 0; j < in.mults[i]; ++j) bound *= a;
    }
    bool small = bound < Int(std::numeric_limits<std::int64_t>::max() / 2);
    if (small) {
        std::vector<std::int64_t> vals(in.vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = to_int64(in.vals[i]);
        std::vector<std::int64_t> targets;
        std::vector<std::size_t> target_map;
        for (std::size_t t = 0; t < in.targets.size(); ++t) {
            if (abs_int(in.targets[t]) > bound) continue; // unreachable magnitude
            targets.push_back(to_int64(in.targets[t]));
            target_map.push_back(t);
        }
        if (targets.empty()) return std::nullopt;
        auto hit = use_mitm ? mitm_product_search<std::int64_t>(vals, in.mults, targets,
                                                               in.excl_zero, in.excl_full,
                                                               nodes, budget)
                            : exhaustive_product_scan<std::int64_t>(vals, in.mults, targets,
                                                                    in.excl_zero, in.excl_full,
                                                                    nodes, budget);
        if (!hit) return std::nullopt;
        return std::make_pair(hit->first, target_map[hit->second]);
    }
    return use_mitm ? mitm_product_search<Int>(in.vals, in.mults, in.targets, in.excl_zero,
                                               in.excl_full, nodes, budget)
                    : exhaustive_product_scan<Int>(in.vals, in.mults, in.targets, in.excl_zero,
                                                   in.excl_full, nodes, budget);
}

// Materialize the divisor for an exponent vector over the canonical factors.
inline Poly divisor_for(const Factorization& fac, const std::vector<int>& exps) {
    Poly q = poly_one();
    for (std::size_t i = 0; i < exps.size(); ++i)
        for (int j = 0; j < exps[i]; ++j) q = mul(q, fac.factors[i].poly);
    return q;
}

inline std::vector<int> complement_vec(const Factorization& fac, const std::vector<int>& exps) {
    std::vector<int> c(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) c[i] = fac.factors[i].mult - exps[i];
    return c;
}

inline void require_monic(const Poly& p, const char* who) {
    if (p.is_zero()) throw Error(std::string(who) + ": zero polynomial");
    if (!p.is_monic()) throw NotMonic(std::string(who) + " requires a monic polynomial");
}

} // namespace detail

// ---------------------------------------------------------------------------
// Q1: k-factor. Does p have an admissible factor q with q(k) = h?
// ---------------------------------------------------------------------------

inline Decision k_factor_decide(const Poly& p, const Factorization& fac, const Int& k,
                                const Int& h, const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "k_factor");
    Decision dec;
    const bool forbid = cfg.trivial_factors == TrivialFactors::Forbidden;
    const bool sign_ok = cfg.signed_factors == SignedFactors::AllowSign;
    const std::size_t nf = fac.factors.size();
    std::vector<Int> vals(nf);
    std::vector<int> mults(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        vals[i] = eval(fac.factors[i].poly, k);
        mults[i] = fac.factors[i].mult;
    }

    auto finish = [&](const std::vector<int>& exps, int unit) {
        Poly q = detail::divisor_for(fac, exps);
        if (unit < 0) q = neg(q);
        dec.yes = true;
        dec.witness = FactorWitness{q, std::nullopt, exps, eval(q, k)};
    };

    if (cfg.strategy == SearchStrategy::Exhaustive) {
        dec.strategy = "exhaustive";
        detail::ProductSearchInput in;
        in.vals = vals;
        in.mults = mults;
        in.targets = {h};
        if (sign_ok && h != 0) in.targets.push_back(-h);
        in.excl_zero = in.excl_full = forbid;
        in.allow_zero_values = true;
        auto hit = detail::run_product_search(in, false, dec.nodes, cfg.node_budget);
        if (hit) finish(hit->first, hit->second == 1 ? -1 : 1);
        return dec;
    }

    dec.strategy = "mitm";
    if (h == 0) {
        // Only factors vanishing at k can produce q(k) = 0; the lex-smallest
        // witness is the unit vector at the last vanishing factor.
        std::optional<std::size_t> jmax;
        for (std::size_t i = 0; i < nf; ++i)
            if (vals[i] == 0) jmax = i;
        if (!jmax) return dec;
        std::vector<int> exps(nf, 0);
        exps[*jmax] = 1;
        if (forbid && detail::is_full_vec(exps, mults)) return dec; // p=(x-k), nothing left
        finish(exps, 1);
        return dec;
    }

    // h != 0: vanishing factors are pinned to exponent 0; search the rest.
    std::vector<std::size_t> active;
    for (std::size_t i = 0; i < nf; ++i)
        if (vals[i] != 0) active.push_back(i);
    detail::ProductSearchInput in;
    for (std::size_t i : active) {
        in.vals.push_back(vals[i]);
        in.mults.push_back(mults[i]);
    }
    in.targets = {h};
    if (sign_ok) in.targets.push_back(-h);
    in.excl_zero = forbid; // pinned zeros: active-zero == global-zero
    in.excl_full = forbid && active.size() == nf; // full unreachable if anything vanishes
    auto hit = detail::run_product_search(in, true, dec.nodes, cfg.node_budget);
    if (hit) {
        std::vector<int> exps(nf, 0);
        for (std::size_t j = 0; j < active.size(); ++j) exps[active[j]] = hit->first[j];
        finish(exps, hit->second == 1 ? -1 : 1);
    }
    return dec;
}

inline Decision k_factor_decide(const Poly& p, const Int& k, const Int& h,
                                const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "k_factor");
    Factorization fac = factorize(p, detail::limits_for(cfg));
    return k_factor_decide(p, fac, k, h, cfg);
}

// Specializations of k-factor at k=1 and k=0.

inline Decision sum_of_coefficients_decide(const Poly& p, const Int& s,
                                           const DeciderConfig& cfg = {}) {
    return k_factor_decide(p, 1, s, cfg);
}

inline Decision sum_of_coefficients_decide(const Poly& p, const Factorization& fac, const Int& s,
                                           const DeciderConfig& cfg = {}) {
    return k_factor_decide(p, fac, 1, s, cfg);
}

inline Decision constant_term_decide(const Poly& p, const Int& t, const DeciderConfig& cfg = {}) {
    return k_factor_decide(p, 0, t, cfg);
}

inline Decision constant_term_decide(const Poly& p, const Factorization& fac, const Int& t,
                                     const DeciderConfig& cfg = {}) {
    return k_factor_decide(p, fac, 0, t, cfg);
}

// ---------------------------------------------------------------------------
// Q4: k-equal-factor. Does p split as q*r with q(k) = r(k)?
// ---------------------------------------------------------------------------

inline Decision k_equal_factor_decide(const Poly& p, const Factorization& fac, const Int& k,
                                      const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "k_equal_factor");
    Decision dec;
    const bool forbid = cfg.trivial_factors == TrivialFactors::Forbidden;
    // signed_factors is moot here: negating both sides preserves p and the
    // equality, negating one side breaks monicity of the product.
    const std::size_t nf = fac.factors.size();
    std::vector<Int> vals(nf);
    std::vector<int> mults(nf);
    int vanishing_mult = 0;
    std::optional<std::size_t> jmax;
    for (std::size_t i = 0; i < nf; ++i) {
        vals[i] = eval(fac.factors[i].poly, k);
        mults[i] = fac.factors[i].mult;
        if (vals[i] == 0) {
            vanishing_mult += mults[i];
            jmax = i;
        }
    }

    auto finish = [&](const std::vector<int>& exps) {
        Poly q = detail::divisor_for(fac, exps);
        Poly r = detail::divisor_for(fac, detail::complement_vec(fac, exps));
        dec.yes = true;
        dec.witness = FactorWitness{q, r, exps, eval(q, k)};
    };

    if (cfg.strategy == SearchStrategy::Exhaustive) {
        dec.strategy = "exhaustive";
        // Direct definition: scan splits d, compare both side products.
        std::vector<int> e(nf, 0);
        std::vector<Int> pq(nf, 1), pr(nf, 1);
        auto recompute = [&](std::size_t from) {
            for (std::size_t i = from; i < nf; ++i) {
                Int bq = (i == 0) ? Int(1) : pq[i - 1];
                Int br = (i == 0) ? Int(1) : pr[i - 1];
                for (int j = 0; j < e[i]; ++j) bq *= vals[i];
                for (int j = 0; j < mults[i] - e[i]; ++j) br *= vals[i];
                pq[i] = bq;
                pr[i] = br;
            }
        };
        recompute(0);
        while (true) {
            if (++dec.nodes > cfg.node_budget)
                throw BudgetExceeded("decider enumeration budget exhausted");
            Int qv = nf == 0 ? Int(1) : pq[nf - 1];
            Int rv = nf == 0 ? Int(1) : pr[nf - 1];
            bool admissible = !forbid || (!detail::is_zero_vec(e) && !detail::is_full_vec(e, mults));
            if (admissible && qv == rv) {
                finish(e);
                return dec;
            }
            std::size_t from = 0;
            if (!detail::odometer_advance(e, mults, from)) return dec;
            recompute(from);
        }
    }

    dec.strategy = "mitm";
    if (vanishing_mult >= 2) {
        // Put one vanishing factor on each side: 0 = 0. Lex-min q side is the
        // unit vector at the last vanishing factor; the complement keeps at
        // least one more vanishing copy.
        std::vector<int> exps(nf, 0);
        exps[*jmax] = 1;
        finish(exps);
        return dec;
    }
    if (vanishing_mult == 1) return dec; // one side is 0, the other cannot be

    // No vanishing factor: q(k)*r(k) = p(k) must be a perfect square s^2,
    // then we need a sub-vector with product +s or -s.
    Int pk = eval(p, k);
    auto s = perfect_sqrt(pk);
    if (!s) return dec;
    detail::ProductSearchInput in;
    in.vals = vals;
    in.mults = mults;
    in.targets = {*s, -*s};
    in.excl_zero = in.excl_full = forbid;
    auto hit = detail::run_product_search(in, true, dec.nodes, cfg.node_budget);
    if (hit) finish(hit->first);
    return dec;
}

inline Decision k_equal_factor_decide(const Poly& p, const Int& k, const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "k_equal_factor");
    Factorization fac = factorize(p, detail::limits_for(cfg));
    return k_equal_factor_decide(p, fac, k, cfg);
}

// Specializations of k-equal-factor at k=0 and k=1.

inline Decision equal_constant_term_decide(const Poly& p, const DeciderConfig& cfg = {}) {
    return k_equal_factor_decide(p, 0, cfg);
}

inline Decision equal_constant_term_decide(const Poly& p, const Factorization& fac,
                                           const DeciderConfig& cfg = {}) {
    return k_equal_factor_decide(p, fac, 0, cfg);
}

inline Decision equal_sum_of_coefficients_decide(const Poly& p, const DeciderConfig& cfg = {}) {
    return k_equal_factor_decide(p, 1, cfg);
}

inline Decision equal_sum_of_coefficients_decide(const Poly& p, const Factorization& fac,
                                                 const DeciderConfig& cfg = {}) {
    return k_equal_factor_decide(p, fac, 1, cfg);
}

// ---------------------------------------------------------------------------
// Q7: factor-with-specific-coefficients. Does some admissible factor q have
// coef(q, m) = h (or coef(q, deg(q)-m) = h under FromLeading)?
// Exhaustive over exponent vectors: coefficients are not multiplicative, so
// there is no meet-in-the-middle shortcut. Products are truncated to degree m
// (reversal first under FromLeading, which turns leading-end reads into
// constant-end reads because reversal is multiplicative).
// ---------------------------------------------------------------------------

namespace detail {

template <class C>
std::vector<C> trunc_mul(const std::vector<C>& a, const std::vector<C>& b, std::size_t keep) {
    std::vector<C> r(std::min(keep, a.size() + b.size() - 1), C(0));
    for (std::size_t i = 0; i < a.size() && i < r.size(); ++i)
        for (std::size_t j = 0; j < b.size() && i + j < r.size(); ++j)
            r[i + j] += a[i] * b[j];
    return r;
}

template <class C>
std::optional<std::pair<std::vector<int>, std::size_t>> fwsc_scan(
    const std::vector<std::vector<C>>& base, // truncated factor coefficient lists
    const std::vector<int>& mults, std::size_t m, const std::vector<C>& targets,
    bool excl_zero, bool excl_full, std::uint64_t& nodes, std::uint64_t budget) {
    const std::size_t n = base.size();
    const std::size_t keep = m + 1;
    std::vector<std::vector<std::vector<C>>> powers(n);
    for (std::size_t i = 0; i < n; ++i) {
        powers[i].push_back({C(1)});
        for (int e = 1; e <= mults[i]; ++e)
            powers[i].push_back(trunc_mul(powers[i].back(), base[i], keep));
    }
    std::vector<int> e(n, 0);
    std::vector<std::vector<C>> prefix(n, {C(1)});
    auto recompute = [&](std::size_t from) {
        for (std::size_t i = from; i < n; ++i) {
            const auto& pw = powers[i][static_cast<std::size_t>(e[i])];
            prefix[i] = (i == 0) ? pw : trunc_mul(prefix[i - 1], pw, keep);
        }
    };
    recompute(0);
    while (true) {
        if (++nodes > budget) throw BudgetExceeded("decider enumeration budget exhausted");
        C value(0);
        if (n == 0) {
            if (m == 0) value = C(1); // the only divisor is q = 1
        } else {
            const auto& q = prefix[n - 1];
            if (m < q.size()) value = q[m];
        }
        bool admissible = !(excl_zero && is_zero_vec(e)) && !(excl_full && is_full_vec(e, mults));
        if (admissible)
            for (std::size_t t = 0; t < targets.size(); ++t)
                if (value == targets[t]) return std::make_pair(e, t);
        std::size_t from = 0;
        if (!odometer_advance(e, mults, from)) return std::nullopt;
        recompute(from);
    }
}

} // namespace detail

inline Decision factor_with_coefficients_decide(const Poly& p, const Factorization& fac, long m,
                                                const Int& h, const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "factor_with_coefficients");
    if (m < 0) throw Error("factor_with_coefficients: m must be >= 0");
    Decision dec;
    dec.strategy = "exhaustive";
    const bool forbid = cfg.trivial_factors == TrivialFactors::Forbidden;
    const bool sign_ok = cfg.signed_factors == SignedFactors::AllowSign;
    const bool from_leading = cfg.coef_index == CoefIndex::FromLeading;
    const std::size_t nf = fac.factors.size();
    std::vector<int> mults(nf);
    std::vector<Poly> base(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        mults[i] = fac.factors[i].mult;
        base[i] = from_leading ? reversed(fac.factors[i].poly) : fac.factors[i].poly;
    }

    // 1-norm bound on any coefficient of any divisor decides the value domain.
    Int bound = 1;
    for (std::size_t i = 0; i < nf; ++i) {
        Int norm = 0;
        for (const Int& c : base[i].coeffs) norm += abs_int(c);
        if (norm < 1) norm = 1;
        for (int j = 0; j < mults[i]; ++j) bound *= norm;
    }

    auto finish = [&](const std::vector<int>& exps, int unit) {
        Poly q = detail::divisor_for(fac, exps);
        if (unit < 0) q = neg(q);
        Int certified = from_leading ? coef(q, q.degree() - m) : coef(q, m);
        dec.yes = true;
        dec.witness = FactorWitness{q, std::nullopt, exps, certified};
    };

    std::optional<std::pair<std::vector<int>, std::size_t>> hit;
    const std::size_t mi = static_cast<std::size_t>(m); // coefficient index
    if (bound < Int(std::numeric_limits<std::int64_t>::max() / 2)) {
        std::vector<std::vector<std::int64_t>> b64(nf);
        for (std::size_t i = 0; i < nf; ++i)
            for (const Int& c : base[i].coeffs) b64[i].push_back(to_int64(c));
        std::vector<std::int64_t> targets;
        std::vector<std::size_t> tmap;
        if (abs_int(h) <= bound) { targets.push_back(to_int64(h)); tmap.push_back(0); }
        if (sign_ok && h != 0 && abs_int(h) <= bound) {
            targets.push_back(to_int64(-h));
            tmap.push_back(1);
        }
        if (!targets.empty()) {
            auto h64 = detail::fwsc_scan<std::int64_t>(b64, mults, mi, targets, forbid, forbid,
                                                       dec.nodes, cfg.node_budget);
            if (h64) hit = std::make_pair(h64->first, tmap[h64->second]);
        }
    } else {
        std::vector<std::vector<Int>> bz(nf);
        for (std::size_t i = 0; i < nf; ++i) bz[i] = base[i].coeffs;
        std::vector<Int> targets{h};
        if (sign_ok && h != 0) targets.push_back(-h);
        hit = detail::fwsc_scan<Int>(bz, mults, mi, targets, forbid, forbid, dec.nodes,
                                     cfg.node_budget);
    }
    if (hit) finish(hit->first, hit->second == 1 ? -1 : 1);
    return dec;
}

inline Decision factor_with_coefficients_decide(const Poly& p, long m, const Int& h,
                                                const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "factor_with_coefficients");
    Factorization fac = factorize(p, detail::limits_for(cfg));
    return factor_with_coefficients_decide(p, fac, m, h, cfg);
}

// ---------------------------------------------------------------------------
// Q8: natural-reducibility. Does p split as q*r with both factors nonconstant
// and all coefficients nonnegative? The trivial_factors policy does not apply:
// reducibility is defined with 0 < deg(q) < deg(p).
// ---------------------------------------------------------------------------

inline Decision natural_reducibility_decide(const Poly& p, const Factorization& fac,
                                            const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "natural_reducibility");
    Decision dec;
    dec.strategy = "exhaustive";
    for (const Int& c : p.coeffs)
        if (c < 0) return dec; // not even p itself lies in N[x]
    const std::size_t nf = fac.factors.size();
    std::vector<int> mults(nf);
    for (std::size_t i = 0; i < nf; ++i) mults[i] = fac.factors[i].mult;

    std::vector<int> e(nf, 0);
    std::vector<Poly> prefix(nf, poly_one());
    std::vector<std::vector<Poly>> powers(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        powers[i].push_back(poly_one());
        for (int j = 1; j <= mults[i]; ++j)
            powers[i].push_back(mul(powers[i].back(), fac.factors[i].poly));
    }
    auto recompute = [&](std::size_t from) {
        for (std::size_t i = from; i < nf; ++i) {
            const Poly& pw = powers[i][static_cast<std::size_t>(e[i])];
            prefix[i] = (i == 0) ? pw : mul(prefix[i - 1], pw);
        }
    };
    recompute(0);
    auto nonneg = [](const Poly& q) {
        return std::all_of(q.coeffs.begin(), q.coeffs.end(),
                           [](const Int& c) { return c >= 0; });
    };
    while (true) {
        if (++dec.nodes > cfg.node_budget)
            throw BudgetExceeded("decider enumeration budget exhausted");
        if (!detail::is_zero_vec(e) && !detail::is_full_vec(e, mults)) {
            const Poly& q = prefix[nf - 1]; // nf >= 1 here: e is not all-zero
            if (nonneg(q)) {
                Poly r = *exact_div(p, q);
                if (nonneg(r)) {
                    dec.yes = true;
                    dec.witness = FactorWitness{q, r, e, coef(q, 0)};
                    return dec;
                }
            }
        }
        std::size_t from = 0;
        if (!detail::odometer_advance(e, mults, from)) return dec;
        recompute(from);
    }
}

inline Decision natural_reducibility_decide(const Poly& p, const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "natural_reducibility");
    for (const Int& c : p.coeffs)
        if (c < 0) { // reject before paying for a factorization
            Decision dec;
            dec.strategy = "exhaustive";
            return dec;
        }
    Factorization fac = factorize(p, detail::limits_for(cfg));
    return natural_reducibility_decide(p, fac, cfg);
}

// Every valid split as an unordered pair {q, r}, canonically ordered and
// deduplicated. Used to show that all factorizations over N[x] are reachable.
inline std::vector<std::pair<Poly, Poly>> natural_reducibility_witnesses(
    const Poly& p, const DeciderConfig& cfg = {}) {
    detail::require_monic(p, "natural_reducibility");
    std::vector<std::pair<Poly, Poly>> out;
    for (const Int& c : p.coeffs)
        if (c < 0) return out;
    Factorization fac = factorize(p, detail::limits_for(cfg));
    std::vector<int> mults;
    for (const auto& f : fac.factors) mults.push_back(f.mult);
    std::vector<int> e(mults.size(), 0);
    while (true) {
        if (!detail::is_zero_vec(e) && !detail::is_full_vec(e, mults)) {
            Poly q = detail::divisor_for(fac, e);
            bool q_ok = std::all_of(q.coeffs.begin(), q.coeffs.end(),
                                    [](const Int& c) { return c >= 0; });
            if (q_ok) {
                Poly r = *exact_div(p, q);
                bool r_ok = std::all_of(r.coeffs.begin(), r.coeffs.end(),
                                        [](const Int& c) { return c >= 0; });
                if (r_ok) {
                    auto pair = q < r ? std::make_pair(q, r) : std::make_pair(r, q);
                    if (std::find(out.begin(), out.end(), pair) == out.end())
                        out.push_back(std::move(pair));
                }
            }
        }
        std::size_t from = 0;
        if (!detail::odometer_advance(e, mults, from)) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Independent brute-force oracle: enumerate every monic divisor (or every
// ordered split in pair mode) and apply the predicate. No meet-in-the-middle,
// no pruning -- this is the definitional reference all deciders are tested
// against. The predicate receives the divisor, its exponent vector, and in
// pair mode the cofactor.
// ---------------------------------------------------------------------------

using FactorPredicate =
    std::function<bool(const Poly& q, const std::vector<int>& cursor, const Poly* r)>;

inline Decision brute_force_factor_decide(const Poly& p, const Factorization& fac,
                                          const FactorPredicate& pred, bool pair_mode = false,
                                          std::uint64_t budget = std::uint64_t(1) << 22) {
    detail::require_monic(p, "brute_force_factor_decide");
    Decision dec;
    dec.strategy = pair_mode ? "brute-force-pairs" : "brute-force";
    if (fac.divisor_count() > budget)
        throw BudgetExceeded("divisor count " + int_to_string(fac.divisor_count()) +
                             " exceeds the oracle budget");
    DivisorStream stream(fac);
    while (auto item = stream.next()) {
        ++dec.nodes;
        if (pair_mode) {
            Poly r = detail::divisor_for(fac, detail::complement_vec(fac, item->exponents));
            if (pred(item->divisor, item->exponents, &r)) {
                dec.yes = true;
                dec.witness = FactorWitness{item->divisor, r, item->exponents, Int(0)};
                return dec;
            }
        } else if (pred(item->divisor, item->exponents, nullptr)) {
            dec.yes = true;
            dec.witness = FactorWitness{item->divisor, std::nullopt, item->exponents, Int(0)};
            return dec;
        }
    }
    return dec;
}

inline Decision brute_force_factor_decide(const Poly& p, const FactorPredicate& pred,
                                          bool pair_mode = false,
                                          std::uint64_t budget = std::uint64_t(1) << 22,
                                          const FactorizeLimits& lim = {}) {
    detail::require_monic(p, "brute_force_factor_decide");
    Factorization fac = factorize(p, lim);
    return brute_force_factor_decide(p, fac, pred, pair_mode, budget);
}

} // namespace polyfactor::deciders
