#include <catch2/catch_amalgamated.hpp>

#include "oracle_helpers.hpp"
#include "polyfactor/poly.hpp"

using namespace polyfactor;

namespace {
Poly P(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long c : cs) v.emplace_back(c);
    return Poly(v);
}
} // namespace

TEST_CASE("addition", "[poly]") {
    CHECK(add(P({1, 1}), P({-1, 1})) == P({0, 2}));
    CHECK(add(P({3, -2, 7}), Poly{}) == P({3, -2, 7}));
    CHECK(add(P({1, 2}), P({3, 0, 4})) == P({4, 2, 4}));
    // cancellation down to zero trims to the empty list
    CHECK(add(P({5, -1}), P({-5, 1})).is_zero());
}

TEST_CASE("multiplication", "[poly]") {
    CHECK(mul(P({1, 1}), P({1, -1, 1})) == P({1, 0, 0, 1}));
    CHECK(mul(P({1, 0, 0, 1}), P({1, 1, 1})) == P({1, 1, 1, 1, 1, 1}));
    CHECK(mul(P({3, -2, 7}), P({1})) == P({3, -2, 7}));
    CHECK(mul(P({3, -2, 7}), Poly{}).is_zero());
}

TEST_CASE("evaluation", "[poly]") {
    CHECK(eval(P({6, 5, 1}), 0) == 6);
    CHECK(eval(P({6, 5, 1}), 1) == 12);
    CHECK(eval(P({1, 1, 1, 1, 1, 1}), 2) == 63);
    CHECK(eval(Poly{}, 17) == 0);
    CHECK(eval(P({6, 5, 1}), -2) == 0);
}

TEST_CASE("exact division", "[poly]") {
    auto q = exact_div(P({1, 0, 0, 1}), P({1, 1}));
    REQUIRE(q);
    CHECK(*q == P({1, -1, 1}));
    auto self = exact_div(P({4, -3, 1}), P({4, -3, 1}));
    REQUIRE(self);
    CHECK(*self == P({1}));
    CHECK(!exact_div(P({1, 0, 0, 1}), P({1, 1, 1})));
    CHECK_THROWS_AS(exact_div(P({1, 1}), Poly{}), ZeroDivisor);
    // non-monic divisor still divides exactly when it does over the integers
    auto half = exact_div(P({2, 4}), P({1, 2}));
    REQUIRE(half);
    CHECK(*half == P({2}));
}

TEST_CASE("expand_from_roots", "[poly]") {
    CHECK(expand_from_roots<Int>({0}) == P({0, 1}));
    CHECK(expand_from_roots<Int>({1, 2}) == P({2, -3, 1}));
    CHECK(expand_from_roots<Int>({}) == P({1}));
    // roots {-a1,-a2,-a3} give x^3 + e1 x^2 + e2 x + e3
    oracle::Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        Int a1 = rng.uniform(-9, 9), a2 = rng.uniform(-9, 9), a3 = rng.uniform(-9, 9);
        Poly p = expand_from_roots<Int>({-a1, -a2, -a3});
        CHECK(coef(p, 3) == 1);
        CHECK(coef(p, 2) == a1 + a2 + a3);
        CHECK(coef(p, 1) == a1 * a2 + a1 * a3 + a2 * a3);
        CHECK(coef(p, 0) == a1 * a2 * a3);
    }
}

TEST_CASE("coefficient access", "[poly]") {
    Poly p = P({6, 5, 1});
    CHECK(coef(p, 0) == 6);
    CHECK(coef(p, 1) == 5);
    CHECK(coef(p, 7) == 0);
    CHECK(coef(p, -1) == 0);
}

TEST_CASE("elementary symmetric functions", "[poly]") {
    std::vector<Int> v{1, 2, 3};
    CHECK(elementary_symmetric(v, 0) == 1);
    CHECK(elementary_symmetric(v, 1) == 6);
    CHECK(elementary_symmetric(v, 2) == 11);
    CHECK(elementary_symmetric(v, 3) == 6);
    CHECK_THROWS_AS(elementary_symmetric(v, -1), OutOfRange);
    CHECK_THROWS_AS(elementary_symmetric(v, 4), OutOfRange);

    oracle::Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        auto a = rng.int_list(static_cast<std::size_t>(rng.uniform(0, 9)), -6, 6);
        for (long k = 0; k <= static_cast<long>(a.size()); ++k)
            CHECK(elementary_symmetric(a, k) == oracle::naive_elementary_symmetric(a, k));
    }
}

TEST_CASE("ring axioms on random polynomials", "[poly]") {
    oracle::Rng rng(99);
    for (int trial = 0; trial < 120; ++trial) {
        Poly p = rng.poly(6, -8, 8), q = rng.poly(6, -8, 8), r = rng.poly(4, -8, 8);
        CHECK(mul(p, q) == mul(q, p));
        CHECK(mul(mul(p, q), r) == mul(p, mul(q, r)));
        CHECK(mul(p, q) == oracle::naive_mul(p, q));
        CHECK(add(p, q) == add(q, p));
        CHECK(mul(p, add(q, r)) == add(mul(p, q), mul(p, r)));
        Int x = rng.uniform(-5, 5);
        CHECK(eval(p, x) == oracle::naive_eval(p, x));
        CHECK(eval(mul(p, q), x) == eval(p, x) * eval(q, x));
        if (!q.is_zero()) {
            auto back = exact_div(mul(p, q), q);
            REQUIRE(back);
            CHECK(*back == p);
        }
    }
}

TEST_CASE("eval anchors: sum of coefficients and constant term", "[poly]") {
    oracle::Rng rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        Poly p = rng.poly(8, -9, 9);
        Int s = 0;
        for (const Int& c : p.coeffs) s += c;
        CHECK(eval(p, 1) == s);
        CHECK(eval(p, 0) == coef(p, 0));
    }
}

TEST_CASE("Vieta identity over random root lists", "[poly]") {
    oracle::Rng rng(1234);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = rng.uniform(0, 12);
        auto a = rng.int_list(static_cast<std::size_t>(n), -9, 9);
        std::vector<Int> neg;
        for (const Int& v : a) neg.push_back(-v);
        Poly p = expand_from_roots(neg); // prod (x + a_i)
        REQUIRE(p.degree() == n);
        for (long k = 0; k <= n; ++k)
            CHECK(coef(p, n - k) == elementary_symmetric(a, k));
    }
}

namespace {
// coefficient type that counts ring operations, for the cost-shape check
struct Count {
    long v = 0;
    static std::uint64_t ops;
    Count() = default;
    Count(long x) : v(x) {}
    friend Count operator*(const Count& a, const Count& b) {
        ++ops;
        return Count(a.v * b.v);
    }
    friend Count operator-(const Count& a, const Count& b) {
        ++ops;
        return Count(a.v - b.v);
    }
    friend bool operator==(const Count& a, const Count& b) { return a.v == b.v; }
};
std::uint64_t Count::ops = 0;

std::uint64_t expansion_ops(std::size_t n) {
    std::vector<Count> roots(n, Count(0));
    Count::ops = 0;
    auto p = expand_from_roots(roots);
    REQUIRE(p.coeffs.size() == n + 1);
    return Count::ops;
}
} // namespace

TEST_CASE("expansion cost grows quadratically", "[poly]") {
    const std::uint64_t c128 = expansion_ops(128);
    const std::uint64_t c256 = expansion_ops(256);
    const std::uint64_t c512 = expansion_ops(512);
    const std::uint64_t c1024 = expansion_ops(1024);
    // exact scheme: n^2 + O(n) coefficient operations
    CHECK(c128 <= 3 * 128 * 128);
    CHECK(c1024 <= 3 * 1024 * 1024);
    // doubling n should multiply work by about 4, never 8
    CHECK(c256 < 5 * c128);
    CHECK(c512 < 5 * c256);
    CHECK(c1024 < 5 * c512);
}
