#pragma once

#include <algorithm>
#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "polyfactor/combinat.hpp"
#include "polyfactor/deciders.hpp"
#include "polyfactor/errors.hpp"
#include "polyfactor/factorization.hpp"
#include "polyfactor/integers.hpp"
#include "polyfactor/poly.hpp"

namespace polyfactor::reductions {

enum class ReductionKind { SubsetProductToKFactor, ProductPartitionToKEqual, SSoPToFwsc };

// Reduced instances carry the conventions they were built under, so callers
// (and the CLI's config echo) decide with matched semantics. Mixing
// conventions manufactures spurious disagreements; see certify_reduction.

struct KFactorInstance {
    Poly p;
    Int k;
    Int h;
    // Empty subsets are admitted on the source side, so q = 1 must be too.
    deciders::TrivialFactors trivial = deciders::TrivialFactors::Allowed;
};

struct KEqualInstance {
    Poly p;
    Int k;
    // Partition parts are nonempty by definition, so trivial splits are out.
    deciders::TrivialFactors trivial = deciders::TrivialFactors::Forbidden;
};

struct FwscInstance {
    Poly p;
    long m;
    Int h;
    // The Vieta-consistent index convention, certified by the sweeps.
    deciders::CoefIndex coef_index = deciders::CoefIndex::FromLeading;
    deciders::TrivialFactors trivial = deciders::TrivialFactors::Allowed;
};

// p = prod (x + b_i) with b_i = a_i - k, h = t.
inline KFactorInstance reduce_sp_to_kfactor(const combinat::SubsetTargetInstance& inst,
                                            const Int& k) {
    combinat::detail::validate_positive(inst.a, "reduce_sp_to_kfactor");
    std::vector<Int> roots;
    roots.reserve(inst.a.size());
    for (const Int& a : inst.a) roots.push_back(k - a); // root of (x + (a-k))
    return KFactorInstance{expand_from_roots(roots), k, inst.t};
}

// p = prod (x + b_i) with b_i = a_i - k.
inline Poly reduce_pp_to_kequal(const combinat::PartitionInstance& inst, const Int& k) {
    combinat::detail::validate_positive(inst.a, "reduce_pp_to_kequal");
    if (inst.a.size() < 2) throw Error("reduce_pp_to_kequal: need at least two values");
    std::vector<Int> roots;
    roots.reserve(inst.a.size());
    for (const Int& a : inst.a) roots.push_back(k - a);
    return expand_from_roots(roots);
}

// p = prod (x + a_i), m = k (the arity), h = t, under the certified
// coefficient index convention (default FromLeading = coef(q, deg(q)-m)).
inline FwscInstance reduce_ssop_to_fwsc(const combinat::SSoPInstance& inst,
                                        deciders::CoefIndex convention =
                                            deciders::CoefIndex::FromLeading) {
    combinat::detail::validate_positive(inst.a, "reduce_ssop_to_fwsc");
    if (inst.k < 1 || inst.k > static_cast<long>(inst.a.size()))
        throw Error("reduce_ssop_to_fwsc: arity outside [1, n]");
    std::vector<Int> roots;
    roots.reserve(inst.a.size());
    for (const Int& a : inst.a) roots.push_back(-a);
    FwscInstance out;
    out.p = expand_from_roots(roots);
    out.m = inst.k;
    out.h = inst.t;
    out.coef_index = convention;
    return out;
}

// ---------------------------------------------------------------------------
// Witness translation. The linear terms are (x + b_i) with b_i = a_i - k
// (k = 0 for the ssop reduction). Factors map to index sets greedily by
// smallest instance index, which makes the round trip the identity on every
// witness these translators produce.
// ---------------------------------------------------------------------------

inline std::vector<Int> shifted_values(const std::vector<Int>& a, const Int& k) {
    std::vector<Int> b;
    b.reserve(a.size());
    for (const Int& v : a) b.push_back(v - k);
    return b;
}

inline Poly translate_subset_to_factor(const std::vector<Int>& a, const Int& k,
                                       const std::vector<int>& indices /* 1-based */) {
    std::vector<Int> roots;
    roots.reserve(indices.size());
    for (int i : indices) {
        if (i < 1 || i > static_cast<int>(a.size()))
            throw UntranslatableWitness("subset index " + std::to_string(i) + " out of range");
        roots.push_back(k - a[static_cast<std::size_t>(i - 1)]);
    }
    return expand_from_roots(roots);
}

inline std::vector<int> translate_factor_to_subset(const std::vector<Int>& a, const Int& k,
                                                   const Poly& q) {
    if (q.is_zero() || !q.is_monic())
        throw UntranslatableWitness("factor witness must be monic");
    std::vector<int> indices;
    Poly rem = q;
    for (std::size_t i = 0; i < a.size() && rem.degree() > 0; ++i) {
        Poly lin({a[i] - k, Int(1)}); // x + (a_i - k)
        if (auto next = exact_div(rem, lin)) {
            indices.push_back(static_cast<int>(i) + 1);
            rem = *next;
        }
    }
    if (rem.degree() != 0)
        throw UntranslatableWitness("factor is not a product of the instance's linear terms");
    return indices;
}

// ---------------------------------------------------------------------------
// Empirical certification: run the source-side combinatorial oracle and the
// target-side brute-force factor oracle with matched conventions, compare
// answers, and on yes cross-translate the witnesses and re-verify each on the
// other side.
// ---------------------------------------------------------------------------

struct ReductionReport {
    std::string id;
    bool source_yes = false;
    bool target_yes = false;
    bool agree = false;
    bool witnesses_ok = true;
    std::optional<combinat::SubsetWitness> source_witness;
    std::optional<deciders::FactorWitness> target_witness;
    double elapsed_ms = 0;
};

struct CertifyOptions {
    // Negative-control hook for the CLI: skews the target parameter so a
    // healthy sweep must report disagreements.
    bool corrupt = false;
    std::uint64_t oracle_budget = std::uint64_t(1) << 22;
    // Sweeps that certify many targets against one reduced polynomial can
    // pass its factorization here instead of refactoring per call.
    const Factorization* reduced_fac = nullptr;
};

namespace detail {

inline std::string join_values(const std::vector<Int>& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ",";
        s += int_to_string(a[i]);
    }
    return s;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

} // namespace detail

inline ReductionReport certify_sp_to_kfactor(const combinat::SubsetTargetInstance& inst,
                                             const Int& k, const CertifyOptions& opt = {}) {
    detail::Timer timer;
    ReductionReport rep;
    rep.id = "sp->kfactor a=[" + detail::join_values(inst.a) + "] t=" + int_to_string(inst.t) +
             " k=" + int_to_string(k);
    KFactorInstance red = reduce_sp_to_kfactor(inst, k);
    Int h = red.h + (opt.corrupt ? 1 : 0);

    combinat::CombinatConfig scfg;
    scfg.strategy = combinat::Strategy::Exhaustive; // empty subset admitted
    auto source = combinat::subset_product_decide(inst, scfg);
    rep.source_yes = source.yes;
    rep.source_witness = source.witness;

    deciders::FactorPredicate pred = [&](const Poly& q, const std::vector<int>&, const Poly*) {
        return eval(q, red.k) == h;
    };
    auto target = opt.reduced_fac
                      ? deciders::brute_force_factor_decide(red.p, *opt.reduced_fac, pred, false,
                                                            opt.oracle_budget)
                      : deciders::brute_force_factor_decide(red.p, pred, false, opt.oracle_budget);
    rep.target_yes = target.yes;
    rep.target_witness = target.witness;
    rep.agree = (rep.source_yes == rep.target_yes);

    if (rep.agree && rep.source_yes) {
        // source subset -> factor: must divide p and hit h at k
        Poly qs = translate_subset_to_factor(inst.a, k, source.witness->indices);
        rep.witnesses_ok = bool(exact_div(red.p, qs)) && eval(qs, red.k) == h;
        // target factor -> subset: products must recover t
        try {
            auto idx = translate_factor_to_subset(inst.a, k, target.witness->q);
            Int prod = 1;
            for (int i : idx) prod *= inst.a[static_cast<std::size_t>(i - 1)];
            rep.witnesses_ok = rep.witnesses_ok && prod == inst.t;
            // round trip: subset -> factor -> subset is the identity
            auto back = translate_factor_to_subset(
                inst.a, k, translate_subset_to_factor(inst.a, k, idx));
            rep.witnesses_ok = rep.witnesses_ok && back == idx;
        } catch (const UntranslatableWitness&) {
            rep.witnesses_ok = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

inline ReductionReport certify_pp_to_kequal(const combinat::PartitionInstance& inst, const Int& k,
                                            const CertifyOptions& opt = {}) {
    detail::Timer timer;
    ReductionReport rep;
    rep.id = "pp->kequal a=[" + detail::join_values(inst.a) + "] k=" + int_to_string(k);
    Poly p = reduce_pp_to_kequal(inst, k);
    Int kk = k + (opt.corrupt ? 1 : 0);

    combinat::CombinatConfig scfg;
    scfg.strategy = combinat::Strategy::Exhaustive; // nonempty parts by definition
    auto source = combinat::product_partition_decide(inst, scfg);
    rep.source_yes = source.yes;
    rep.source_witness = source.witness;

    // Nonempty parts on the target side = trivial splits excluded.
    deciders::FactorPredicate pred = [&](const Poly& q, const std::vector<int>& cursor,
                                         const Poly* r) {
        bool zero = deciders::detail::is_zero_vec(cursor);
        bool full = q.degree() == p.degree();
        return !zero && !full && r && eval(q, kk) == eval(*r, kk);
    };
    auto target = opt.reduced_fac
                      ? deciders::brute_force_factor_decide(p, *opt.reduced_fac, pred, true,
                                                            opt.oracle_budget)
                      : deciders::brute_force_factor_decide(p, pred, true, opt.oracle_budget);
    rep.target_yes = target.yes;
    rep.target_witness = target.witness;
    rep.agree = (rep.source_yes == rep.target_yes);

    if (rep.agree && rep.source_yes) {
        Poly qs = translate_subset_to_factor(inst.a, k, source.witness->indices);
        auto rs = exact_div(p, qs);
        rep.witnesses_ok = bool(rs) && eval(qs, k) == eval(*rs, k);
        try {
            // target factor -> subset; the complement must rebuild the cofactor
            auto idx = translate_factor_to_subset(inst.a, k, target.witness->q);
            std::vector<int> comp;
            for (int i = 1; i <= static_cast<int>(inst.a.size()); ++i)
                if (std::find(idx.begin(), idx.end(), i) == idx.end()) comp.push_back(i);
            rep.witnesses_ok = rep.witnesses_ok && !idx.empty() && !comp.empty();
            Poly rebuilt = translate_subset_to_factor(inst.a, k, comp);
            rep.witnesses_ok = rep.witnesses_ok && rebuilt == *target.witness->r;
            Int pi = 1, pj = 1;
            for (int i : idx) pi *= inst.a[static_cast<std::size_t>(i - 1)];
            for (int i : comp) pj *= inst.a[static_cast<std::size_t>(i - 1)];
            rep.witnesses_ok = rep.witnesses_ok && pi == pj;
        } catch (const UntranslatableWitness&) {
            rep.witnesses_ok = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

inline ReductionReport certify_ssop_to_fwsc(const combinat::SSoPInstance& inst,
                                            deciders::CoefIndex convention =
                                                deciders::CoefIndex::FromLeading,
                                            const CertifyOptions& opt = {}) {
    detail::Timer timer;
    ReductionReport rep;
    rep.id = "ssop->fwsc a=[" + detail::join_values(inst.a) + "] t=" + int_to_string(inst.t) +
             " k=" + std::to_string(inst.k) +
             (convention == deciders::CoefIndex::FromLeading ? " conv=from_leading"
                                                             : " conv=absolute");
    FwscInstance red = reduce_ssop_to_fwsc(inst, convention);
    Int h = red.h + (opt.corrupt ? 1 : 0);

    combinat::CombinatConfig scfg;
    scfg.strategy = combinat::Strategy::Exhaustive;
    auto source = combinat::ssop_decide(inst, scfg);
    rep.source_yes = source.yes;
    rep.source_witness = source.witness;

    auto read_coef = [&](const Poly& q) {
        return convention == deciders::CoefIndex::FromLeading ? coef(q, q.degree() - red.m)
                                                              : coef(q, red.m);
    };
    deciders::FactorPredicate pred = [&](const Poly& q, const std::vector<int>&, const Poly*) {
        return read_coef(q) == h;
    };
    auto target = opt.reduced_fac
                      ? deciders::brute_force_factor_decide(red.p, *opt.reduced_fac, pred, false,
                                                            opt.oracle_budget)
                      : deciders::brute_force_factor_decide(red.p, pred, false, opt.oracle_budget);
    rep.target_yes = target.yes;
    rep.target_witness = target.witness;
    rep.agree = (rep.source_yes == rep.target_yes);

    if (rep.agree && rep.source_yes) {
        Poly qs = translate_subset_to_factor(inst.a, 0, source.witness->indices);
        rep.witnesses_ok = bool(exact_div(red.p, qs)) && read_coef(qs) == red.h;
        try {
            auto idx = translate_factor_to_subset(inst.a, 0, target.witness->q);
            std::vector<Int> chosen;
            for (int i : idx) chosen.push_back(inst.a[static_cast<std::size_t>(i - 1)]);
            Int ek = static_cast<long>(chosen.size()) >= inst.k
                         ? elementary_symmetric(chosen, inst.k)
                         : Int(0); // empty sum when |I| < k
            rep.witnesses_ok = rep.witnesses_ok && ek == inst.t;
        } catch (const UntranslatableWitness&) {
            rep.witnesses_ok = false;
        }
    }
    rep.elapsed_ms = timer.ms();
    return rep;
}

// Analytic size bound on the reduced polynomials, part of the strong-sense
// argument: every coefficient of prod (x + b_i) is bounded in magnitude by
// (1 + max|b_i|)^n <= (1 + max a_i + |k|)^n.
inline Int coefficient_bound(const std::vector<Int>& a, const Int& k) {
    Int mx = 0;
    for (const Int& v : a) mx = std::max(mx, abs_int(v - k));
    Int b = 1, base = 1 + mx;
    for (std::size_t i = 0; i < a.size(); ++i) b *= base;
    return b;
}

inline Int max_abs_coef(const Poly& p) {
    Int m = 0;
    for (const Int& c : p.coeffs) m = std::max(m, abs_int(c));
    return m;
}

} // namespace polyfactor::reductions
