#include <chrono>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "polyfactor/polyfactor.hpp"

namespace pf = polyfactor;
using pf::Int;
using pf::Poly;
using json = pf::json_io::json;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

std::uint64_t effective_budget() {
    const char* s = std::getenv("POLYFACTOR_BUDGET");
    if (!s || !*s) return std::uint64_t(1) << 22;
    char* end = nullptr;
    unsigned long long v = std::strtoull(s, &end, 10);
    if (!end || *end != '\0' || v == 0)
        throw pf::ParseError("POLYFACTOR_BUDGET must be a positive integer");
    return static_cast<std::uint64_t>(v);
}

int emit_error(const std::string& kind, const std::string& message) {
    std::cout << pf::json_io::error_json(kind, message).dump() << "\n";
    return 2;
}

// ---------------------------------------------------------------------------
// decide
// ---------------------------------------------------------------------------

struct DecideFlags {
    std::string path;
    bool exit_status = false;
    std::string strategy, trivial, signed_s;
};

bool is_combinat(pf::json_io::Problem p) {
    using P = pf::json_io::Problem;
    return p == P::SubsetSum || p == P::SubsetProduct || p == P::ProductPartition || p == P::SSoP;
}

pf::combinat::Strategy combinat_strategy(const std::string& s) {
    using S = pf::combinat::Strategy;
    if (s.empty() || s == "auto") return S::Auto;
    if (s == "exhaustive") return S::Exhaustive;
    if (s == "dp") return S::DP;
    if (s == "dfs") return S::DFS;
    if (s == "mitm") return S::MITM;
    throw pf::ParseError("strategy \"" + s + "\" is not valid for list problems");
}

pf::deciders::SearchStrategy decider_strategy(const std::string& s) {
    using S = pf::deciders::SearchStrategy;
    if (s.empty() || s == "auto" || s == "mitm") return S::MITM;
    if (s == "exhaustive") return S::Exhaustive;
    throw pf::ParseError("strategy \"" + s + "\" is not valid for polynomial problems");
}

json echo_config(const pf::json_io::InstanceFile& inst) {
    using P = pf::json_io::Problem;
    using D = pf::deciders::TrivialFactors;
    using G = pf::deciders::SignedFactors;
    using C = pf::deciders::CoefIndex;
    json j = json::object();
    const std::string strat = inst.config.strategy ? *inst.config.strategy : "auto";
    if (is_combinat(inst.problem)) {
        j["strategy"] = strat;
        return j;
    }
    j["strategy"] = strat == "auto" ? "mitm" : strat;
    j["trivial"] =
        (inst.config.trivial && *inst.config.trivial == D::Forbidden) ? "forbidden" : "allowed";
    j["signed"] =
        (inst.config.signed_factors && *inst.config.signed_factors == G::AllowSign) ? "allow"
                                                                                    : "monic";
    if (inst.problem == P::FactorWithSpecificCoefficients)
        j["coef_index"] =
            (inst.config.coef_index && *inst.config.coef_index == C::FromLeading) ? "from_leading"
                                                                                  : "absolute";
    return j;
}

int run_decide(const DecideFlags& flags) {
    auto inst = pf::json_io::load_instance(flags.path);
    // command-line overrides win over the file's config block
    if (!flags.strategy.empty()) inst.config.strategy = flags.strategy;
    if (!flags.trivial.empty())
        inst.config.trivial = flags.trivial == "allowed" ? pf::deciders::TrivialFactors::Allowed
                                                         : pf::deciders::TrivialFactors::Forbidden;
    if (!flags.signed_s.empty())
        inst.config.signed_factors = flags.signed_s == "monic"
                                         ? pf::deciders::SignedFactors::MonicOnly
                                         : pf::deciders::SignedFactors::AllowSign;

    const std::uint64_t budget = effective_budget();
    bool yes = false;
    json witness; // null unless set
    std::string used_strategy;
    std::uint64_t nodes = 0;

    auto t0 = std::chrono::steady_clock::now();
    using P = pf::json_io::Problem;
    if (is_combinat(inst.problem)) {
        pf::combinat::CombinatConfig ccfg;
        ccfg.strategy = combinat_strategy(inst.config.strategy ? *inst.config.strategy : "");
        ccfg.node_budget = budget;
        pf::combinat::Decision dec;
        switch (inst.problem) {
            case P::SubsetSum:
                dec = pf::combinat::subset_sum_decide(pf::json_io::to_subset_target(inst), ccfg);
                break;
            case P::SubsetProduct:
                dec = pf::combinat::subset_product_decide(pf::json_io::to_subset_target(inst),
                                                          ccfg);
                break;
            case P::ProductPartition:
                dec = pf::combinat::product_partition_decide(pf::json_io::to_partition(inst),
                                                             ccfg);
                break;
            default:
                dec = pf::combinat::ssop_decide(pf::json_io::to_ssop(inst), ccfg);
                break;
        }
        yes = dec.yes;
        used_strategy = dec.strategy;
        nodes = dec.nodes;
        if (dec.witness) witness = pf::json_io::witness_to_json(*dec.witness);
    } else {
        pf::deciders::DeciderConfig dcfg;
        if (inst.config.trivial) dcfg.trivial_factors = *inst.config.trivial;
        if (inst.config.signed_factors) dcfg.signed_factors = *inst.config.signed_factors;
        if (inst.config.coef_index) dcfg.coef_index = *inst.config.coef_index;
        dcfg.strategy = decider_strategy(inst.config.strategy ? *inst.config.strategy : "");
        dcfg.node_budget = budget;
        pf::deciders::Decision dec;
        bool with_value = true;
        switch (inst.problem) {
            case P::KFactor:
                dec = pf::deciders::k_factor_decide(inst.poly, inst.k, inst.h, dcfg);
                break;
            case P::SumOfCoefficients:
                dec = pf::deciders::sum_of_coefficients_decide(inst.poly, inst.h, dcfg);
                break;
            case P::ConstantTerm:
                dec = pf::deciders::constant_term_decide(inst.poly, inst.h, dcfg);
                break;
            case P::KEqualFactor:
                dec = pf::deciders::k_equal_factor_decide(inst.poly, inst.k, dcfg);
                break;
            case P::EqualConstantTerm:
                dec = pf::deciders::equal_constant_term_decide(inst.poly, dcfg);
                break;
            case P::EqualSumOfCoefficients:
                dec = pf::deciders::equal_sum_of_coefficients_decide(inst.poly, dcfg);
                break;
            case P::FactorWithSpecificCoefficients:
                dec = pf::deciders::factor_with_coefficients_decide(inst.poly, inst.m, inst.h,
                                                                    dcfg);
                break;
            default:
                dec = pf::deciders::natural_reducibility_decide(inst.poly, dcfg);
                with_value = false;
                break;
        }
        yes = dec.yes;
        used_strategy = dec.strategy;
        nodes = dec.nodes;
        if (dec.witness) witness = pf::json_io::witness_to_json(*dec.witness, with_value);
    }
    double elapsed = ms_since(t0);

    json verdict = pf::json_io::make_verdict(yes, std::move(witness), used_strategy, nodes,
                                             elapsed, echo_config(inst));
    std::cout << verdict.dump(2) << "\n";
    return flags.exit_status ? (yes ? 0 : 1) : 0;
}

// ---------------------------------------------------------------------------
// reduce
// ---------------------------------------------------------------------------

int run_reduce(const std::string& from, const std::string& to, const std::string& k_str,
               const std::string& path) {
    auto inst = pf::json_io::load_instance(path);
    using P = pf::json_io::Problem;
    if (pf::json_io::problem_name(inst.problem) != from)
        throw pf::ParseError("instance problem is " +
                             std::string(pf::json_io::problem_name(inst.problem)) +
                             ", --from says " + from);
    Int k = k_str.empty() ? Int(0) : pf::int_from_string(k_str);

    pf::json_io::InstanceFile out;
    if (from == "subset-product" && to == "k-factor") {
        auto red = pf::reductions::reduce_sp_to_kfactor(pf::json_io::to_subset_target(inst), k);
        out.problem = P::KFactor;
        out.poly = red.p;
        out.k = red.k;
        out.h = red.h;
    } else if (from == "product-partition" && to == "k-equal-factor") {
        out.problem = P::KEqualFactor;
        out.poly = pf::reductions::reduce_pp_to_kequal(pf::json_io::to_partition(inst), k);
        out.k = k;
        out.config.trivial = pf::deciders::TrivialFactors::Forbidden; // nonempty parts
    } else if (from == "ssop" && to == "factor-with-specific-coefficients") {
        auto red = pf::reductions::reduce_ssop_to_fwsc(pf::json_io::to_ssop(inst));
        out.problem = P::FactorWithSpecificCoefficients;
        out.poly = red.p;
        out.m = red.m;
        out.h = red.h;
        out.config.coef_index = red.coef_index; // certified convention
    } else {
        return emit_error("unsupported_reduction", "no reduction from " + from + " to " + to);
    }
    std::cout << pf::json_io::instance_to_json(out).dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// factor
// ---------------------------------------------------------------------------

int run_factor(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw pf::ParseError("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    json j;
    try {
        j = json::parse(ss.str());
    } catch (const json::exception& e) {
        throw pf::ParseError(std::string("invalid JSON: ") + e.what());
    }
    Poly p;
    if (j.is_object() && j.contains("problem")) {
        auto inst = pf::json_io::parse_instance(j);
        if (inst.poly.is_zero() && !inst.a.empty())
            throw pf::ParseError("instance has no polynomial payload");
        p = inst.poly;
    } else if (j.is_object() && j.contains("poly")) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "poly") throw pf::ParseError("unknown field \"" + it.key() + "\"");
        p = pf::json_io::detail::parse_poly(j.at("poly"), "poly");
    } else {
        throw pf::ParseError("expected an instance file or {\"poly\": [...]}");
    }

    auto t0 = std::chrono::steady_clock::now();
    pf::FactorizeLimits lim;
    auto fac = pf::factorize(p, lim);
    json out = json::object();
    out["unit"] = std::to_string(fac.unit);
    json arr = json::array();
    for (const auto& fp : fac.factors)
        arr.push_back(
            {{"coeffs", pf::json_io::to_json(fp.poly)}, {"mult", std::to_string(fp.mult)}});
    out["factors"] = std::move(arr);
    out["stats"] = {{"elapsed_ms", ms_since(t0)}};
    std::cout << out.dump(2) << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyFlags {
    std::string kind;
    bool exhaustive = false;
    std::uint64_t seed = 1;
    std::uint64_t count = 200;
    bool corrupt = false;
};

struct VerifyTally {
    std::uint64_t total = 0, yes = 0, disagreements = 0, witness_failures = 0;
};

void report_line(const pf::reductions::ReductionReport& rep, VerifyTally& tally) {
    ++tally.total;
    if (rep.source_yes) ++tally.yes;
    if (!rep.agree) ++tally.disagreements;
    if (!rep.witnesses_ok) ++tally.witness_failures;
    json line = {{"id", rep.id},
                 {"source", rep.source_yes ? "yes" : "no"},
                 {"target", rep.target_yes ? "yes" : "no"},
                 {"agree", rep.agree},
                 {"witnesses_ok", rep.witnesses_ok},
                 {"elapsed_ms", rep.elapsed_ms}};
    std::cout << line.dump() << "\n";
}

// all nondecreasing value lists of each size in [lo_n, hi_n] over [1, hi_a]
template <class F>
void for_each_multiset(int lo_n, int hi_n, int hi_a, F&& body) {
    for (int n = lo_n; n <= hi_n; ++n) {
        std::vector<Int> a(static_cast<std::size_t>(n), 1);
        while (true) {
            body(a);
            int i = n - 1;
            while (i >= 0 && a[static_cast<std::size_t>(i)] == hi_a) --i;
            if (i < 0) break;
            Int next = a[static_cast<std::size_t>(i)] + 1;
            for (int j = i; j < n; ++j) a[static_cast<std::size_t>(j)] = next;
        }
    }
}

int run_verify(const VerifyFlags& flags) {
    const std::uint64_t budget = effective_budget();
    pf::reductions::CertifyOptions opt;
    opt.corrupt = flags.corrupt;
    opt.oracle_budget = budget;
    VerifyTally tally;
    auto t0 = std::chrono::steady_clock::now();

    auto sp_one = [&](const std::vector<Int>& a, const Int& k, const Int& t,
                      const pf::Factorization* fac) {
        auto local = opt;
        local.reduced_fac = fac;
        report_line(pf::reductions::certify_sp_to_kfactor({a, t}, k, local), tally);
    };
    auto pp_one = [&](const std::vector<Int>& a, const Int& k) {
        report_line(pf::reductions::certify_pp_to_kequal({a}, k, opt), tally);
    };
    auto ssop_one = [&](const std::vector<Int>& a, const Int& t, long arity,
                        const pf::Factorization* fac) {
        auto local = opt;
        local.reduced_fac = fac;
        report_line(pf::reductions::certify_ssop_to_fwsc(
                        {a, t, arity}, pf::deciders::CoefIndex::FromLeading, local),
                    tally);
    };

    if (flags.exhaustive) {
        if (flags.kind == "sp-kfactor") {
            for_each_multiset(1, 6, 8, [&](const std::vector<Int>& a) {
                for (int k = -2; k <= 2; ++k) {
                    auto red = pf::reductions::reduce_sp_to_kfactor({a, Int(1)}, k);
                    auto fac = pf::factorize(red.p);
                    for (int t = 1; t <= 64; ++t) sp_one(a, k, t, &fac);
                }
            });
        } else if (flags.kind == "pp-kequal") {
            for_each_multiset(2, 6, 8, [&](const std::vector<Int>& a) {
                for (int k = -2; k <= 2; ++k) pp_one(a, k);
            });
        } else { // ssop-fwsc
            for_each_multiset(1, 6, 6, [&](const std::vector<Int>& a) {
                const int n = static_cast<int>(a.size());
                pf::combinat::SSoPInstance probe{a, Int(1), 1};
                auto red = pf::reductions::reduce_ssop_to_fwsc(probe);
                auto fac = pf::factorize(red.p);
                for (long arity = 1; arity <= std::min(3, n); ++arity) {
                    // targets: every achievable e_arity value plus a near miss
                    std::vector<Int> targets;
                    for (unsigned mask = 1; mask < (1u << n); ++mask) {
                        std::vector<Int> chosen;
                        for (int i = 0; i < n; ++i)
                            if (mask >> i & 1u) chosen.push_back(a[static_cast<std::size_t>(i)]);
                        if (static_cast<long>(chosen.size()) < arity) continue;
                        targets.push_back(pf::elementary_symmetric(chosen, arity));
                    }
                    std::sort(targets.begin(), targets.end());
                    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
                    std::vector<Int> plus;
                    for (const Int& t : targets) plus.push_back(t + 1);
                    targets.insert(targets.end(), plus.begin(), plus.end());
                    std::sort(targets.begin(), targets.end());
                    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
                    for (const Int& t : targets)
                        if (t >= 1) ssop_one(a, t, arity, &fac);
                }
            });
        }
    } else {
        std::mt19937_64 rng(flags.seed);
        auto rint = [&](int lo, int hi) {
            return std::uniform_int_distribution<int>(lo, hi)(rng);
        };
        for (std::uint64_t i = 0; i < flags.count; ++i) {
            if (flags.kind == "sp-kfactor") {
                int n = rint(1, 6);
                std::vector<Int> a;
                for (int j = 0; j < n; ++j) a.push_back(rint(1, 8));
                Int t;
                if (rint(0, 1)) { // achievable target half the time
                    t = 1;
                    for (int j = 0; j < n; ++j)
                        if (rint(0, 1)) t *= a[static_cast<std::size_t>(j)];
                } else {
                    t = rint(1, 64);
                }
                sp_one(a, rint(-2, 2), t, nullptr);
            } else if (flags.kind == "pp-kequal") {
                int n = rint(2, 6);
                std::vector<Int> a;
                for (int j = 0; j < n; ++j) a.push_back(rint(1, 8));
                pp_one(a, rint(-2, 2));
            } else {
                int n = rint(1, 6);
                std::vector<Int> a;
                for (int j = 0; j < n; ++j) a.push_back(rint(1, 6));
                long arity = rint(1, std::min(3, n));
                Int t;
                if (rint(0, 1)) {
                    std::vector<Int> chosen;
                    for (int j = 0; j < n; ++j)
                        if (rint(0, 1)) chosen.push_back(a[static_cast<std::size_t>(j)]);
                    t = static_cast<long>(chosen.size()) >= arity
                            ? pf::elementary_symmetric(chosen, arity)
                            : Int(0);
                    if (t < 1) t = rint(1, 64);
                } else {
                    t = rint(1, 64);
                }
                ssop_one(a, t, arity, nullptr);
            }
        }
    }

    json summary = {{"summary",
                     {{"kind", flags.kind},
                      {"total", tally.total},
                      {"yes", tally.yes},
                      {"disagreements", tally.disagreements},
                      {"witness_failures", tally.witness_failures},
                      {"elapsed_ms", ms_since(t0)}}}};
    std::cout << summary.dump() << "\n";
    std::cerr << "verify " << flags.kind << ": " << tally.total << " instances, "
              << tally.disagreements << " disagreements, " << tally.witness_failures
              << " witness failures\n";
    return (tally.disagreements || tally.witness_failures) ? 3 : 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

int run_bench(const std::string& suite) {
    std::mt19937_64 rng(12345);
    auto rint = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::cout << "suite,case,ms\n";

    auto row = [&](const std::string& s, const std::string& label, double ms) {
        std::cout << s << "," << label << "," << ms << "\n";
    };

    if (suite == "expansion" || suite == "all") {
        for (int n : {128, 256, 512, 1024}) {
            std::vector<Int> roots;
            for (int i = 0; i < n; ++i) roots.push_back(rint(-9, 9));
            auto t0 = std::chrono::steady_clock::now();
            auto p = pf::expand_from_roots(roots);
            row("expansion", "n=" + std::to_string(n), ms_since(t0));
            if (p.degree() != n) return emit_error("bench", "expansion degree mismatch");
        }
    }
    if (suite == "mitm" || suite == "all") {
        auto make = [&](int n) {
            std::vector<Int> a;
            for (int i = 0; i < n; ++i) a.push_back(rint(2, 100));
            Int t = 1;
            for (int i = 0; i < n; ++i)
                if (rint(0, 1)) t *= a[static_cast<std::size_t>(i)];
            return pf::combinat::SubsetTargetInstance{a, t};
        };
        {
            auto inst = make(30);
            pf::combinat::CombinatConfig cfg;
            cfg.strategy = pf::combinat::Strategy::MITM;
            auto t0 = std::chrono::steady_clock::now();
            auto dec = pf::combinat::subset_product_decide(inst, cfg);
            row("mitm", "subset-product-n=30", ms_since(t0));
            if (!dec.yes) return emit_error("bench", "mitm instance unexpectedly infeasible");
        }
        {
            auto inst = make(20);
            pf::combinat::CombinatConfig cfg;
            cfg.strategy = pf::combinat::Strategy::Exhaustive;
            auto t0 = std::chrono::steady_clock::now();
            auto dec = pf::combinat::subset_product_decide(inst, cfg);
            row("mitm", "subset-product-exhaustive-n=20", ms_since(t0));
            if (!dec.yes) return emit_error("bench", "exhaustive instance unexpectedly infeasible");
        }
    }
    if (suite == "dp" || suite == "all") {
        std::vector<Int> a;
        for (int i = 0; i < 200; ++i) a.push_back(rint(1, 1000));
        pf::combinat::SubsetTargetInstance inst{a, Int(100000)};
        pf::combinat::CombinatConfig cfg;
        cfg.strategy = pf::combinat::Strategy::DP;
        auto t0 = std::chrono::steady_clock::now();
        auto dec = pf::combinat::subset_sum_decide(inst, cfg);
        row("dp", "subset-sum-n=200-t=1e5", ms_since(t0));
        (void)dec;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact deciders for constrained factors of integer polynomials"};
    app.require_subcommand(1);

    DecideFlags dflags;
    auto* decide = app.add_subcommand("decide", "decide a JSON instance");
    decide->add_option("file", dflags.path, "instance file")->required();
    decide->add_flag("--exit-status", dflags.exit_status, "exit 0 for yes, 1 for no");
    decide->add_option("--strategy", dflags.strategy, "search strategy")
        ->check(CLI::IsMember({"exhaustive", "mitm", "dp", "dfs", "auto"}));
    decide->add_option("--trivial", dflags.trivial, "admit trivial factors")
        ->check(CLI::IsMember({"allowed", "forbidden"}));
    decide->add_option("--signed", dflags.signed_s, "admit sign-flipped factors")
        ->check(CLI::IsMember({"monic", "allow"}));

    std::string rfrom, rto, rk, rpath;
    auto* reduce = app.add_subcommand("reduce", "emit a reduced instance");
    reduce->add_option("--from", rfrom, "source problem")->required();
    reduce->add_option("--to", rto, "target problem")->required();
    reduce->add_option("--k", rk, "evaluation point");
    reduce->add_option("file", rpath, "instance file")->required();

    std::string fpath;
    auto* factor = app.add_subcommand("factor", "factor a polynomial over the integers");
    factor->add_option("file", fpath, "instance file")->required();

    VerifyFlags vflags;
    auto* verify = app.add_subcommand("verify", "certify a reduction on a sweep");
    verify->add_option("--kind", vflags.kind, "reduction kind")
        ->required()
        ->check(CLI::IsMember({"sp-kfactor", "pp-kequal", "ssop-fwsc"}));
    verify->add_flag("--exhaustive", vflags.exhaustive, "run the full desk-scale sweep");
    verify->add_option("--seed", vflags.seed, "random sweep seed");
    verify->add_option("--count", vflags.count, "random sweep size");
    verify->add_flag("--corrupt", vflags.corrupt, "negative-control hook")->group("");

    std::string bsuite;
    auto* bench = app.add_subcommand("bench", "timing suites, CSV on stdout");
    bench->add_option("--suite", bsuite, "benchmark suite")
        ->required()
        ->check(CLI::IsMember({"expansion", "mitm", "dp", "all"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return emit_error("usage", e.what());
    }

    try {
        if (*decide) return run_decide(dflags);
        if (*reduce) return run_reduce(rfrom, rto, rk, rpath);
        if (*factor) return run_factor(fpath);
        if (*verify) return run_verify(vflags);
        if (*bench) return run_bench(bsuite);
    } catch (const pf::ParseError& e) {
        return emit_error("parse_error", e.what());
    } catch (const pf::BudgetExceeded& e) {
        return emit_error("budget_exceeded", e.what());
    } catch (const pf::CapacityExceeded& e) {
        return emit_error("capacity_exceeded", e.what());
    } catch (const pf::DegreeTooLarge& e) {
        return emit_error("degree_too_large", e.what());
    } catch (const pf::NotMonic& e) {
        return emit_error("not_monic", e.what());
    } catch (const pf::UntranslatableWitness& e) {
        return emit_error("untranslatable_witness", e.what());
    } catch (const pf::Error& e) {
        return emit_error("error", e.what());
    } catch (const std::exception& e) {
        return emit_error("internal", e.what());
    }
    return 2;
}
