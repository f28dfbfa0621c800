#include <catch2/catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "polyfactor/reductions.hpp"

using namespace polyfactor;
using namespace polyfactor::reductions;

namespace {
Poly P(std::initializer_list<long> cs) {
    Poly p;
    for (long c : cs) p.coeffs.emplace_back(c);
    p.normalize();
    return p;
}

std::vector<Int> V(std::initializer_list<long> xs) {
    std::vector<Int> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}
} // namespace

TEST_CASE("subset product reduces to k-factor", "[reductions]") {
    auto red = reduce_sp_to_kfactor({V({2, 3, 5}), 6}, 0);
    CHECK(red.p == P({30, 31, 10, 1}));
    CHECK(red.k == 0);
    CHECK(red.h == 6);
    CHECK(red.trivial == deciders::TrivialFactors::Allowed);

    CHECK(reduce_sp_to_kfactor({V({2, 3, 5}), 6}, 1).p == P({8, 14, 7, 1}));
    CHECK(reduce_sp_to_kfactor({V({1}), 1}, 1).p == P({0, 1}));
}

TEST_CASE("product partition reduces to k-equal-factor", "[reductions]") {
    CHECK(reduce_pp_to_kequal({V({2, 3, 6})}, 0) == P({36, 36, 11, 1}));
    CHECK(reduce_pp_to_kequal({V({1, 2, 5})}, 0) == P({10, 17, 8, 1}));
    CHECK(reduce_pp_to_kequal({V({1, 1})}, 1) == P({0, 0, 1}));
    CHECK_THROWS_AS(reduce_pp_to_kequal({V({5})}, 0), Error);
}

TEST_CASE("ssop reduces to factor-with-coefficients", "[reductions]") {
    auto red = reduce_ssop_to_fwsc({V({1, 2, 3}), 11, 2});
    CHECK(red.p == P({6, 11, 6, 1}));
    CHECK(red.m == 2);
    CHECK(red.h == 11);
    CHECK(red.coef_index == deciders::CoefIndex::FromLeading);

    auto one = reduce_ssop_to_fwsc({V({3, 5, 8}), 8, 1});
    CHECK(one.p == P({120, 79, 16, 1}));
    CHECK(one.m == 1);

    CHECK_THROWS_AS(reduce_ssop_to_fwsc({V({1, 2}), 3, 0}), Error);
    CHECK_THROWS_AS(reduce_ssop_to_fwsc({V({1, 2}), 3, 3}), Error);
    CHECK_THROWS_AS(reduce_ssop_to_fwsc({V({1, -2}), 3, 1}), Error);
}

TEST_CASE("witness translation fixed points", "[reductions]") {
    const auto a = V({2, 3, 5});
    CHECK(translate_subset_to_factor(a, 0, {1, 2}) == P({6, 5, 1}));
    CHECK(translate_subset_to_factor(a, 0, {}) == poly_one());
    CHECK(translate_subset_to_factor(a, 1, {3}) == P({4, 1}));

    CHECK(translate_factor_to_subset(a, 0, P({6, 5, 1})) == std::vector<int>{1, 2});
    CHECK(translate_factor_to_subset(a, 0, poly_one()).empty());
    CHECK(translate_factor_to_subset(a, 0, P({30, 31, 10, 1})) == std::vector<int>{1, 2, 3});

    // duplicates resolve to the smallest untaken index
    const auto dup = V({2, 2, 3});
    CHECK(translate_factor_to_subset(dup, 0, P({6, 5, 1})) == std::vector<int>{1, 3});
    CHECK(translate_factor_to_subset(dup, 0, P({4, 4, 1})) == std::vector<int>{1, 2});

    CHECK(shifted_values(V({2, 3, 5}), 1) == V({1, 2, 4}));
}

TEST_CASE("untranslatable witnesses are rejected", "[reductions]") {
    const auto a = V({2, 3, 5});
    CHECK_THROWS_AS(translate_factor_to_subset(a, 0, P({4, 2})), UntranslatableWitness);
    CHECK_THROWS_AS(translate_factor_to_subset(a, 0, Poly{}), UntranslatableWitness);
    CHECK_THROWS_AS(translate_factor_to_subset(a, 0, P({1, 1, 1})), UntranslatableWitness);
    CHECK_THROWS_AS(translate_subset_to_factor(a, 0, {4}), UntranslatableWitness);
    CHECK_THROWS_AS(translate_subset_to_factor(a, 0, {0}), UntranslatableWitness);
}

TEST_CASE("translation round trips are the identity", "[reductions]") {
    oracle::Rng rng(7777);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = rng.uniform(1, 8);
        auto a = rng.int_list(static_cast<std::size_t>(n), 1, 9);
        const Int k = rng.uniform(-3, 3);
        std::vector<int> idx;
        for (int i = 1; i <= n; ++i)
            if (rng.uniform(0, 1)) idx.push_back(i);

        Poly q = translate_subset_to_factor(a, k, idx);
        auto back = translate_factor_to_subset(a, k, q);
        // greedy translation returns the lexicographically smallest index set
        // for q; with duplicate values it may differ from idx, but it must
        // rebuild the same factor and round-trip to itself
        CHECK(translate_subset_to_factor(a, k, back) == q);
        CHECK(translate_factor_to_subset(a, k, translate_subset_to_factor(a, k, back)) == back);
        CHECK(back.size() == idx.size());
    }
}

TEST_CASE("certification fixed points", "[reductions]") {
    auto sp = certify_sp_to_kfactor({V({2, 3, 5}), 6}, 0);
    CHECK(sp.source_yes);
    CHECK(sp.target_yes);
    CHECK(sp.agree);
    CHECK(sp.witnesses_ok);
    REQUIRE(sp.source_witness);
    CHECK(sp.source_witness->indices == std::vector<int>{1, 2});

    auto sp_no = certify_sp_to_kfactor({V({2, 3, 5}), 7}, 0);
    CHECK(!sp_no.source_yes);
    CHECK(!sp_no.target_yes);
    CHECK(sp_no.agree);

    auto one = certify_sp_to_kfactor({V({1}), 1}, 1);
    CHECK(one.source_yes);
    CHECK(one.agree);
    CHECK(one.witnesses_ok);

    auto pp = certify_pp_to_kequal({V({2, 3, 6})}, 1);
    CHECK(pp.source_yes);
    CHECK(pp.agree);
    CHECK(pp.witnesses_ok);

    auto pp_no = certify_pp_to_kequal({V({2, 3, 5})}, 0);
    CHECK(!pp_no.source_yes);
    CHECK(pp_no.agree);

    auto ss = certify_ssop_to_fwsc({V({1, 2, 3}), 11, 2});
    CHECK(ss.source_yes);
    CHECK(ss.agree);
    CHECK(ss.witnesses_ok);
}

TEST_CASE("corruption is detected", "[reductions]") {
    CertifyOptions corrupt;
    corrupt.corrupt = true;
    CHECK(!certify_sp_to_kfactor({V({2, 3, 5}), 6}, 0, corrupt).agree);
    CHECK(!certify_pp_to_kequal({V({2, 3, 6})}, 0, corrupt).agree);
    CHECK(!certify_ssop_to_fwsc({V({1, 2, 3}), 11, 2}, deciders::CoefIndex::FromLeading, corrupt)
               .agree);
}

TEST_CASE("coefficient index convention matters", "[reductions]") {
    // a = (2), t = 2, k = 1: e_1({2}) = 2, so the source says yes. Reading
    // coef(q, 1) absolutely sees only the lead 1 of q = x + 2 and disagrees;
    // reading one below the lead sees 2 and agrees.
    combinat::SSoPInstance inst{V({2}), 2, 1};
    auto absolute = certify_ssop_to_fwsc(inst, deciders::CoefIndex::Absolute);
    CHECK(absolute.source_yes);
    CHECK(!absolute.target_yes);
    CHECK(!absolute.agree);

    auto leading = certify_ssop_to_fwsc(inst, deciders::CoefIndex::FromLeading);
    CHECK(leading.source_yes);
    CHECK(leading.target_yes);
    CHECK(leading.agree);
    CHECK(leading.witnesses_ok);
}

TEST_CASE("certification sweeps agree on random instances", "[reductions]") {
    oracle::Rng rng(24601);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.uniform(1, 6);
        auto a = rng.int_list(static_cast<std::size_t>(n), 1, 8);
        const Int k = rng.uniform(-2, 2);

        Int t = 1;
        for (int i = 0; i < n; ++i)
            if (rng.uniform(0, 1)) t *= a[static_cast<std::size_t>(i)];
        if (rng.uniform(0, 1)) t = rng.uniform(1, 64);

        auto sp = certify_sp_to_kfactor({a, t}, k);
        CHECK(sp.agree);
        CHECK(sp.witnesses_ok);

        if (n >= 2) {
            auto pp = certify_pp_to_kequal({a}, k);
            CHECK(pp.agree);
            CHECK(pp.witnesses_ok);
        }

        const long arity = rng.uniform(1, std::min(n, 3));
        Int st = rng.uniform(1, 100);
        auto ss = certify_ssop_to_fwsc({a, st, arity});
        CHECK(ss.agree);
        CHECK(ss.witnesses_ok);
    }
}

TEST_CASE("a prepared factorization can be reused", "[reductions]") {
    combinat::SubsetTargetInstance inst{V({2, 3, 5}), 6};
    auto red = reduce_sp_to_kfactor(inst, 0);
    Factorization fac = factorize(red.p);
    CertifyOptions opts;
    opts.reduced_fac = &fac;
    auto with_fac = certify_sp_to_kfactor(inst, 0, opts);
    auto without = certify_sp_to_kfactor(inst, 0);
    CHECK(with_fac.agree == without.agree);
    CHECK(with_fac.target_yes == without.target_yes);
    REQUIRE(with_fac.target_witness);
    CHECK(with_fac.target_witness->cursor == without.target_witness->cursor);
}

TEST_CASE("reduced coefficients respect the analytic bound", "[reductions]") {
    oracle::Rng rng(13579);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = rng.uniform(1, 9);
        auto a = rng.int_list(static_cast<std::size_t>(n), 1, 12);
        const Int k = rng.uniform(-4, 4);
        Poly p = reduce_sp_to_kfactor({a, 1}, k).p;
        CHECK(max_abs_coef(p) <= coefficient_bound(a, k));
    }
    // the bound is tight up to the +1: all values equal, k opposite in sign
    auto a = V({3, 3, 3});
    Poly p = reduce_sp_to_kfactor({a, 1}, -1).p; // (x+4)^3
    CHECK(max_abs_coef(p) == 64);
    CHECK(coefficient_bound(a, -1) == 125);
}
