#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracle_helpers.hpp"
#include "polyfactor/factorization.hpp"

using namespace polyfactor;

namespace {
Poly P(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return Poly(v);
}

Poly from_roots(std::initializer_list<long> rs) {
    std::vector<Int> v;
    for (long r : rs) v.emplace_back(r);
    return expand_from_roots(v);
}
} // namespace

TEST_CASE("integer root extraction", "[factorization]") {
    auto r1 = integer_roots(P({2, -3, 1}));
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == std::pair<Int, int>{1, 1});
    CHECK(r1[1] == std::pair<Int, int>{2, 1});

    CHECK(integer_roots(P({1, 1, 1})).empty());

    auto r3 = integer_roots(P({0, 0, 0, 1}));
    REQUIRE(r3.size() == 1);
    CHECK(r3[0] == std::pair<Int, int>{0, 3});

    CHECK_THROWS_AS(integer_roots(P({2, 2})), NotMonic);

    // multiplicities and mixed signs
    auto r4 = integer_roots(from_roots({-2, -2, 3, 0}));
    REQUIRE(r4.size() == 3);
    CHECK(r4[0] == std::pair<Int, int>{-2, 2});
    CHECK(r4[1] == std::pair<Int, int>{0, 1});
    CHECK(r4[2] == std::pair<Int, int>{3, 1});
}

TEST_CASE("integer roots found on random products", "[factorization]") {
    oracle::Rng rng(314);
    for (int trial = 0; trial < 150; ++trial) {
        const int n = rng.uniform(1, 8);
        auto roots = rng.int_list(static_cast<std::size_t>(n), -5, 5);
        Poly p = expand_from_roots(roots);
        auto found = integer_roots(p);
        // rebuild the multiset and compare
        std::vector<Int> flat;
        for (const auto& [v, m] : found)
            for (int i = 0; i < m; ++i) flat.push_back(v);
        std::sort(roots.begin(), roots.end());
        std::sort(flat.begin(), flat.end());
        CHECK(flat == roots);
    }
}

TEST_CASE("kronecker factorization of small irreducibles", "[factorization]") {
    auto f1 = kronecker_factor(P({1, 1, 1}));
    CHECK(f1.unit == 1);
    REQUIRE(f1.factors.size() == 1);
    CHECK(f1.factors[0].poly == P({1, 1, 1}));
    CHECK(f1.factors[0].mult == 1);

    auto f2 = kronecker_factor(P({1, -1, 1}));
    REQUIRE(f2.factors.size() == 1);
    CHECK(f2.factors[0].poly == P({1, -1, 1}));

    auto f3 = kronecker_factor(P({1}));
    CHECK(f3.unit == 1);
    CHECK(f3.factors.empty());

    auto f4 = kronecker_factor(P({-1}));
    CHECK(f4.unit == -1);
    CHECK(f4.factors.empty());

    // negated monic input: unit carries the sign
    Poly q = mul(P({2, 1}), P({3, 1}));
    for (Int& c : q.coeffs) c = -c;
    auto f5 = kronecker_factor(q);
    CHECK(f5.unit == -1);
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.reconstruct() == q);
}

TEST_CASE("complete factorization fixed points", "[factorization]") {
    auto f = factorize(P({1, 1, 1, 1, 1, 1}));
    CHECK(f.unit == 1);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].poly == P({1, 1}));
    CHECK(f.factors[1].poly == P({1, -1, 1}));
    CHECK(f.factors[2].poly == P({1, 1, 1}));
    for (const auto& fp : f.factors) CHECK(fp.mult == 1);

    auto g = factorize(P({-5, 1}));
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].poly == P({-5, 1}));

    auto h = factorize(P({12, 16, 7, 1})); // (x+2)^2 (x+3)
    REQUIRE(h.factors.size() == 2);
    CHECK(h.factors[0].poly == P({2, 1}));
    CHECK(h.factors[0].mult == 2);
    CHECK(h.factors[1].poly == P({3, 1}));
    CHECK(h.factors[1].mult == 1);

    CHECK_THROWS_AS(factorize(P({1, 2})), NotMonic);
}

TEST_CASE("factorization reconstructs its input", "[factorization]") {
    oracle::Rng rng(2718);
    const std::vector<Poly> quadratics = {P({1, 1, 1}), P({1, -1, 1}), P({1, 0, 1}),
                                          P({2, 0, 1}), P({2, 1, 1})};
    for (int trial = 0; trial < 80; ++trial) {
        Poly p = P({1});
        const int parts = rng.uniform(1, 4);
        for (int i = 0; i < parts; ++i) {
            if (rng.uniform(0, 2) == 0)
                p = mul(p, quadratics[static_cast<std::size_t>(rng.uniform(0, 4))]);
            else
                p = mul(p, P({rng.uniform(-5, 5), 1}));
        }
        auto f = factorize(p);
        CHECK(f.reconstruct() == p);
        CHECK(f.unit == 1);
        for (const auto& fp : f.factors) {
            CHECK(fp.poly.is_monic());
            CHECK(is_irreducible(fp.poly));
        }
        // canonical order: by degree, then lexicographic coefficients
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            CHECK(f.factors[i - 1].poly < f.factors[i].poly);
    }
}

TEST_CASE("irreducibility fixed points", "[factorization]") {
    CHECK(!is_irreducible(P({1, 0, 0, 1})));
    CHECK(is_irreducible(P({7, 1})));
    CHECK(is_irreducible(P({1, 1, 1})));
}

namespace {
// brute-force reducibility: search monic factors of degree <= deg/2 with
// coefficients bounded via the root bound |z| <= 1 + max|c_i|
bool brute_reducible(const Poly& p) {
    const long d = p.degree();
    long bound = 0;
    for (const Int& c : p.coeffs) bound = std::max(bound, std::labs(c.get_si()));
    const long R = 1 + bound;
    for (long e = 1; e <= d / 2; ++e) {
        // coefficient j of a monic degree-e factor is bounded by C(e,j) R^j
        std::vector<long> cap(static_cast<std::size_t>(e));
        for (long j = 1; j <= e; ++j) {
            long binom = 1;
            for (long i = 0; i < j; ++i) binom = binom * (e - i) / (i + 1);
            long pw = 1;
            for (long i = 0; i < j; ++i) pw *= R;
            cap[static_cast<std::size_t>(e - j)] = binom * pw; // index by coeff position
        }
        std::vector<long> c(static_cast<std::size_t>(e), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = -cap[i];
        while (true) {
            std::vector<Int> qc;
            for (long v : c) qc.emplace_back(v);
            qc.emplace_back(1);
            if (exact_div(p, Poly(qc))) return true;
            std::size_t i = 0;
            while (i < c.size() && c[i] == cap[i]) c[i++] = -cap[i];
            if (i == c.size()) break;
            ++c[i];
        }
    }
    return false;
}
} // namespace

TEST_CASE("irreducibility agrees with bounded brute force", "[factorization]") {
    // all monic polynomials of degree 2..4 with |c_i| <= 3
    for (long deg = 2; deg <= 4; ++deg) {
        std::vector<long> c(static_cast<std::size_t>(deg), -3);
        while (true) {
            std::vector<Int> pc;
            for (long v : c) pc.emplace_back(v);
            pc.emplace_back(1);
            Poly p(pc);
            CHECK(is_irreducible(p) == !brute_reducible(p));
            std::size_t i = 0;
            while (i < c.size() && c[i] == 3) c[i++] = -3;
            if (i == c.size()) break;
            ++c[i];
        }
    }
}

TEST_CASE("divisor stream fixed points", "[factorization]") {
    auto f = factorize(from_roots({-2, -3, -5}));
    CHECK(f.divisor_count() == 8);
    auto items = all_divisors(f);
    CHECK(items.size() == 8);

    auto g = factorize(P({4, 4, 1})); // (x+2)^2
    auto gi = all_divisors(g);
    REQUIRE(gi.size() == 3);
    CHECK(gi[0].divisor == P({1}));
    CHECK(gi[1].divisor == P({2, 1}));
    CHECK(gi[2].divisor == P({4, 4, 1}));

    auto h = factorize(P({1, 1, 1})); // irreducible
    auto hi = all_divisors(h);
    REQUIRE(hi.size() == 2);
    CHECK(hi[0].divisor == P({1}));
    CHECK(hi[1].divisor == P({1, 1, 1}));
}

TEST_CASE("divisor stream is complete and ordered", "[factorization]") {
    oracle::Rng rng(4242);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = rng.uniform(1, 8);
        auto roots = rng.int_list(static_cast<std::size_t>(n), -5, 5);
        Poly p = expand_from_roots(roots);
        auto f = factorize(p);

        std::set<Poly> seen;
        std::vector<std::vector<int>> cursors;
        DivisorStream stream(f);
        while (auto item = stream.next()) {
            CHECK(exact_div(p, item->divisor));
            seen.insert(item->divisor);
            cursors.push_back(item->exponents);
        }
        CHECK(Int(static_cast<long>(cursors.size())) == f.divisor_count());
        // exponent vectors ascend lexicographically -- witness canonicity
        // depends on this order
        for (std::size_t i = 1; i < cursors.size(); ++i)
            CHECK(std::lexicographical_compare(cursors[i - 1].begin(), cursors[i - 1].end(),
                                               cursors[i].begin(), cursors[i].end()));
        // equals the subset-products oracle
        CHECK(seen == oracle::root_subset_products(roots));
    }
}

TEST_CASE("degree cap and budgets", "[factorization]") {
    // cyclotomic-style irreducible of degree 18: root-free, above the cap
    std::vector<Int> ones(19, Int(1));
    CHECK_THROWS_AS(factorize(Poly(ones)), DegreeTooLarge);

    // high degree is fine when roots cover everything
    Poly p20 = expand_from_roots(std::vector<Int>(20, Int(-1))); // (x+1)^20
    auto f = factorize(p20);
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].mult == 20);
    CHECK(f.reconstruct() == p20);

    auto g = factorize(from_roots({-2, -3, -5}));
    CHECK_THROWS_AS(all_divisors(g, 5), BudgetExceeded);
}

TEST_CASE("divisors of the constant polynomial", "[factorization]") {
    auto f = factorize(P({1}));
    auto items = all_divisors(f);
    REQUIRE(items.size() == 1);
    CHECK(items[0].divisor == P({1}));
    CHECK(items[0].exponents.empty());
}
