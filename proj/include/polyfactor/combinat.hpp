#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polyfactor/errors.hpp"
#include "polyfactor/integers.hpp"

namespace polyfactor::combinat {

struct SubsetTargetInstance {
    std::vector<Int> a; // positive
    Int t;              // positive
};

struct PartitionInstance {
    std::vector<Int> a; // positive, n >= 2
};

struct SSoPInstance {
    std::vector<Int> a; // positive
    Int t;              // positive
    long k;             // arity, 1 <= k <= n
};

// Index sets are 1-based to line up with instances written as {1,..,n}.
struct SubsetWitness {
    std::vector<int> indices;
    std::vector<int> indices_j; // second part, partition problems only
};

struct Decision {
    bool yes = false;
    std::optional<SubsetWitness> witness;
    std::uint64_t nodes = 0;
    std::string strategy;
};

enum class Strategy { Auto, Exhaustive, DP, DFS, MITM };

struct CombinatConfig {
    Strategy strategy = Strategy::Auto;
    // Strict reading of "exists I subseteq {1..n}": disallow I = empty set.
    // Default admits it (sum 0, product 1), mirroring the trivial factor q=1.
    bool forbid_empty_subset = false;
    std::uint64_t dp_bits_budget = std::uint64_t(1) << 31;
    std::uint64_t node_budget = std::uint64_t(1) << 26;
};

namespace detail {

inline void validate_positive(const std::vector<Int>& a, const char* who) {
    if (a.empty()) throw Error(std::string(who) + ": empty value list");
    for (const Int& v : a)
        if (v < 1) throw Error(std::string(who) + ": values must be positive");
}

// All subset walks below decide the highest item index first and take the
// exclude branch before the include branch. Leaves are therefore visited in
// ascending order of the inclusion bitmask (bit i = item i+1), so the first
// solution found is the canonical (smallest-mask) witness for every strategy.
template <class Leaf, class Include, class Undo>
struct MaskWalk {
    long n;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> chosen; // 0-based item indices currently included
    Leaf leaf;
    Include include;
    Undo undo;

    bool run(long i) {
        if (++nodes > budget) throw BudgetExceeded("subset enumeration budget exhausted");
        if (i < 0) return leaf(chosen);
        if (run(i - 1)) return true;
        if (include(i)) {
            chosen.push_back(static_cast<int>(i));
            bool hit = run(i - 1);
            chosen.pop_back();
            undo(i);
            if (hit) return true;
        }
        return false;
    }
};

template <class Leaf, class Include, class Undo>
bool walk_masks(long n, std::uint64_t budget, std::uint64_t& nodes_out, Leaf leaf,
                Include include, Undo undo) {
    MaskWalk<Leaf, Include, Undo> w{n, budget, 0, {}, leaf, include, undo};
    bool hit = w.run(n - 1);
    nodes_out += w.nodes;
    return hit;
}

inline std::vector<int> to_indices(const std::vector<int>& chosen) {
    std::vector<int> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    for (int& i : out) ++i; // 1-based
    return out;
}

} // namespace detail

inline Decision subset_sum_decide(const SubsetTargetInstance& inst,
                                  const CombinatConfig& cfg = {}) {
    detail::validate_positive(inst.a, "subset_sum");
    if (inst.t < 1) throw Error("subset_sum: target must be positive");
    const long n = static_cast<long>(inst.a.size());
    Decision dec;

    Strategy st = cfg.strategy;
    if (st == Strategy::Auto || st == Strategy::MITM || st == Strategy::DP)
        st = Strategy::DP;
    else if (st != Strategy::Exhaustive)
        throw Error("subset_sum: unsupported strategy");

    if (st == Strategy::Exhaustive) {
        dec.strategy = "exhaustive";
        Int sum = 0;
        std::vector<int> found;
        dec.yes = detail::walk_masks(
            n, cfg.node_budget, dec.nodes,
            [&](const std::vector<int>& chosen) {
                if (cfg.forbid_empty_subset && chosen.empty()) return false;
                if (sum != inst.t) return false;
                found = chosen;
                return true;
            },
            [&](long i) {
                sum += inst.a[static_cast<std::size_t>(i)];
                return true;
            },
            [&](long i) { sum -= inst.a[static_cast<std::size_t>(i)]; });
        if (dec.yes) dec.witness = SubsetWitness{detail::to_indices(found), {}};
        return dec;
    }

    // Pseudo-polynomial DP over sums 0..t, one bit row per item for walkback.
    dec.strategy = "dp";
    if (!inst.t.fits_ulong_p())
        throw CapacityExceeded("subset_sum DP: target too large for a bit table");
    const std::uint64_t t = mpz_get_ui(inst.t.get_mpz_t());
    if ((t + 1) * static_cast<std::uint64_t>(n) > cfg.dp_bits_budget)
        throw CapacityExceeded("subset_sum DP: table of " + std::to_string((t + 1) * n) +
                               " bits exceeds the budget");
    const std::size_t words = static_cast<std::size_t>(t / 64 + 1);
    std::vector<std::vector<std::uint64_t>> rows(
        static_cast<std::size_t>(n), std::vector<std::uint64_t>(words, 0));
    auto get = [&](const std::vector<std::uint64_t>& row, std::uint64_t bit) {
        return (row[bit / 64] >> (bit % 64)) & 1u;
    };
    auto shift_or = [&](std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src,
                        std::uint64_t by) {
        const std::size_t wshift = by / 64, bshift = by % 64;
        for (std::size_t w = words; w-- > 0;) {
            if (w < wshift) break;
            std::uint64_t v = src[w - wshift] << bshift;
            if (bshift && w > wshift) v |= src[w - wshift - 1] >> (64 - bshift);
            dst[w] |= v;
        }
    };
    for (long i = 0; i < n; ++i) {
        auto& row = rows[static_cast<std::size_t>(i)];
        if (i == 0)
            row[0] = 1;
        else
            row = rows[static_cast<std::size_t>(i - 1)];
        const Int& ai = inst.a[static_cast<std::size_t>(i)];
        if (ai <= inst.t) shift_or(row, row, mpz_get_ui(ai.get_mpz_t()));
        dec.nodes += words;
    }
    if (!get(rows[static_cast<std::size_t>(n - 1)], t)) return dec;
    dec.yes = true;
    // Walk back, taking an item only when the prefix below cannot reach the
    // remaining sum on its own.
    std::vector<int> idx;
    std::uint64_t cur = t;
    for (long i = n - 1; i >= 1; --i) {
        if (!get(rows[static_cast<std::size_t>(i - 1)], cur)) {
            idx.push_back(static_cast<int>(i) + 1);
            cur -= mpz_get_ui(inst.a[static_cast<std::size_t>(i)].get_mpz_t());
        }
    }
    if (cur != 0) idx.push_back(1); // first item covers the remainder
    std::sort(idx.begin(), idx.end());
    dec.witness = SubsetWitness{std::move(idx), {}};
    return dec;
}

namespace detail {

// Shared MITM core: smallest-mask subset of `a` with product exactly `target`.
// Split is first ceil(n/2) indices vs the rest; the low map keeps the smallest
// low mask per achievable product, high masks are scanned ascending, so the
// first hit minimizes the high part first and the low part second -- that is
// exactly ascending order of the full mask.
inline std::optional<std::uint64_t> mitm_subset_product(const std::vector<Int>& a,
                                                        const Int& target,
                                                        std::uint64_t& nodes,
                                                        std::uint64_t budget) {
    const long n = static_cast<long>(a.size());
    const long h = (n + 1) / 2;
    std::map<Int, std::uint64_t> low; // product -> smallest low mask
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << h); ++mask) {
        if (++nodes > budget) throw BudgetExceeded("MITM enumeration budget exhausted");
        Int prod = 1;
        bool ok = true;
        for (long i = 0; i < h; ++i)
            if (mask >> i & 1) {
                prod *= a[static_cast<std::size_t>(i)];
                if (!divides(prod, target)) { ok = false; break; } // prune
            }
        if (ok) low.emplace(prod, mask); // emplace keeps the first=smallest
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << (n - h)); ++mask) {
        if (++nodes > budget) throw BudgetExceeded("MITM enumeration budget exhausted");
        Int prod = 1;
        bool ok = true;
        for (long i = 0; i < n - h; ++i)
            if (mask >> i & 1) {
                prod *= a[static_cast<std::size_t>(h + i)];
                if (!divides(prod, target)) { ok = false; break; }
            }
        if (!ok) continue;
        if (!divides(prod, target)) continue;
        auto it = low.find(div_exact(target, prod));
        if (it != low.end()) return it->second | (mask << h);
    }
    return std::nullopt;
}

inline std::vector<int> mask_to_indices(std::uint64_t mask, long n) {
    std::vector<int> out;
    for (long i = 0; i < n; ++i)
        if (mask >> i & 1) out.push_back(static_cast<int>(i) + 1);
    return out;
}

} // namespace detail

inline Decision subset_product_decide(const SubsetTargetInstance& inst,
                                      const CombinatConfig& cfg = {}) {
    detail::validate_positive(inst.a, "subset_product");
    if (inst.t < 1) throw Error("subset_product: target must be positive");
    const long n = static_cast<long>(inst.a.size());
    Decision dec;

    Strategy st = cfg.strategy == Strategy::Auto ? Strategy::MITM : cfg.strategy;
    if (st == Strategy::Exhaustive) {
        dec.strategy = "exhaustive";
        Int prod = 1;
        std::vector<int> found;
        dec.yes = detail::walk_masks(
            n, cfg.node_budget, dec.nodes,
            [&](const std::vector<int>& chosen) {
                if (cfg.forbid_empty_subset && chosen.empty()) return false;
                if (prod != inst.t) return false;
                found = chosen;
                return true;
            },
            [&](long i) {
                prod *= inst.a[static_cast<std::size_t>(i)];
                return true;
            },
            [&](long i) { prod = div_exact(prod, inst.a[static_cast<std::size_t>(i)]); });
        if (dec.yes) dec.witness = SubsetWitness{detail::to_indices(found), {}};
        return dec;
    }

    if (st == Strategy::DFS) {
        dec.strategy = "dfs";
        // Divisibility-pruned: maintain rem = t / (product so far); an item can
        // only join if it divides rem (valid because all a_i >= 1).
        Int rem = inst.t;
        std::vector<int> found;
        dec.yes = detail::walk_masks(
            n, cfg.node_budget, dec.nodes,
            [&](const std::vector<int>& chosen) {
                if (cfg.forbid_empty_subset && chosen.empty()) return false;
                if (rem != 1) return false;
                found = chosen;
                return true;
            },
            [&](long i) {
                const Int& ai = inst.a[static_cast<std::size_t>(i)];
                if (!divides(ai, rem)) return false;
                rem = div_exact(rem, ai);
                return true;
            },
            [&](long i) { rem *= inst.a[static_cast<std::size_t>(i)]; });
        if (dec.yes) dec.witness = SubsetWitness{detail::to_indices(found), {}};
        return dec;
    }

    if (st != Strategy::MITM) throw Error("subset_product: unsupported strategy");
    dec.strategy = "mitm";
    if (n > 62) throw BudgetExceeded("subset_product MITM: n too large for mask words");
    if (cfg.forbid_empty_subset && inst.t == 1) {
        // Nonempty subsets with product 1 are exactly the all-ones subsets.
        for (long i = 0; i < n; ++i)
            if (inst.a[static_cast<std::size_t>(i)] == 1) {
                dec.yes = true;
                dec.witness = SubsetWitness{{static_cast<int>(i) + 1}, {}};
                return dec;
            }
        return dec;
    }
    auto mask = detail::mitm_subset_product(inst.a, inst.t, dec.nodes, cfg.node_budget);
    if (mask) {
        dec.yes = true;
        dec.witness = SubsetWitness{detail::mask_to_indices(*mask, n), {}};
    }
    return dec;
}

inline Decision product_partition_decide(const PartitionInstance& inst,
                                         const CombinatConfig& cfg = {}) {
    detail::validate_positive(inst.a, "product_partition");
    const long n = static_cast<long>(inst.a.size());
    if (n < 2) throw Error("product_partition: need at least two values");
    Decision dec;

    Strategy st = cfg.strategy == Strategy::Auto ? Strategy::MITM : cfg.strategy;
    if (st == Strategy::Exhaustive) {
        dec.strategy = "exhaustive";
        // Item n is pinned to side J so each unordered split appears once;
        // both sides are nonempty by construction (I via mask != 0, J via item n).
        // The J-side product is total/pi, so equal parts mean pi^2 == total.
        Int total = 1;
        for (const Int& v : inst.a) total *= v;
        Int pi = 1;
        std::vector<int> found;
        dec.yes = detail::walk_masks(
            n - 1, cfg.node_budget, dec.nodes,
            [&](const std::vector<int>& chosen) {
                if (chosen.empty()) return false;
                if (pi * pi != total) return false;
                found = chosen;
                return true;
            },
            [&](long i) {
                pi *= inst.a[static_cast<std::size_t>(i)];
                return true;
            },
            [&](long i) { pi = div_exact(pi, inst.a[static_cast<std::size_t>(i)]); });
        if (dec.yes) {
            SubsetWitness w;
            w.indices = detail::to_indices(found);
            for (int i = 1; i <= n; ++i)
                if (!std::binary_search(w.indices.begin(), w.indices.end(), i))
                    w.indices_j.push_back(i);
            dec.witness = std::move(w);
        }
        return dec;
    }

    if (st != Strategy::MITM) throw Error("product_partition: unsupported strategy");
    dec.strategy = "mitm";
    Int total = 1;
    for (const Int& v : inst.a) total *= v;
    auto s = perfect_sqrt(total);
    if (!s) return dec; // equal parts force a perfect-square total
    if (*s == 1) {
        // All values are 1; any single item balances the rest.
        dec.yes = true;
        SubsetWitness w;
        w.indices = {1};
        for (int i = 2; i <= n; ++i) w.indices_j.push_back(i);
        dec.witness = std::move(w);
        return dec;
    }
    if (n > 62) throw BudgetExceeded("product_partition MITM: n too large for mask words");
    auto mask = detail::mitm_subset_product(inst.a, *s, dec.nodes, cfg.node_budget);
    if (mask) {
        // target != 1 and != total, so the mask is nonempty and proper.
        dec.yes = true;
        SubsetWitness w;
        w.indices = detail::mask_to_indices(*mask, n);
        for (int i = 1; i <= n; ++i)
            if (!std::binary_search(w.indices.begin(), w.indices.end(), i))
                w.indices_j.push_back(i);
        dec.witness = std::move(w);
    }
    return dec;
}

inline Decision ssop_decide(const SSoPInstance& inst, const CombinatConfig& cfg = {}) {
    detail::validate_positive(inst.a, "ssop");
    const long n = static_cast<long>(inst.a.size());
    if (inst.k < 1 || inst.k > n) throw Error("ssop: arity k outside [1, n]");
    if (inst.t < 1) throw Error("ssop: target must be positive");
    Decision dec;

    Strategy st = cfg.strategy;
    if (st == Strategy::Auto || st == Strategy::MITM || st == Strategy::DFS)
        st = Strategy::DFS;
    else if (st != Strategy::Exhaustive)
        throw Error("ssop: unsupported strategy");
    const bool prune = (st == Strategy::DFS);
    dec.strategy = prune ? "dfs" : "exhaustive";

    // e-vector state: e[j] = e_j of the currently included values, maintained
    // by e_j += a*e_{j-1} downward on include, exact inverse upward on undo.
    std::vector<Int> e(static_cast<std::size_t>(inst.k) + 1, 0);
    e[0] = 1;
    const std::size_t K = static_cast<std::size_t>(inst.k);
    std::vector<int> found;
    dec.yes = detail::walk_masks(
        n, cfg.node_budget, dec.nodes,
        [&](const std::vector<int>& chosen) {
            if (cfg.forbid_empty_subset && chosen.empty()) return false;
            if (e[K] != inst.t) return false;
            found = chosen;
            return true;
        },
        [&](long i) {
            const Int& a = inst.a[static_cast<std::size_t>(i)];
            for (std::size_t j = K; j >= 1; --j) e[j] += a * e[j - 1];
            if (prune && e[K] > inst.t) {
                // e_k is monotone under insertion (all values positive), so
                // nothing below this node can come back to t.
                for (std::size_t j = 1; j <= K; ++j) e[j] -= a * e[j - 1];
                return false;
            }
            return true;
        },
        [&](long i) {
            const Int& a = inst.a[static_cast<std::size_t>(i)];
            for (std::size_t j = 1; j <= K; ++j) e[j] -= a * e[j - 1];
        });
    if (dec.yes) dec.witness = SubsetWitness{detail::to_indices(found), {}};
    return dec;
}

} // namespace polyfactor::combinat
