#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "polyfactor/combinat.hpp"
#include "polyfactor/deciders.hpp"
#include "polyfactor/errors.hpp"
#include "polyfactor/integers.hpp"
#include "polyfactor/poly.hpp"
#include "polyfactor/version.hpp"

namespace polyfactor::json_io {

using json = nlohmann::json;

// Every integer crosses the wire as a decimal string: JSON numbers are lossy
// above 2^53 and the instances here carry arbitrary-precision values.

enum class Problem {
    SubsetSum,
    SubsetProduct,
    ProductPartition,
    SSoP,
    KFactor,
    SumOfCoefficients,
    ConstantTerm,
    KEqualFactor,
    EqualConstantTerm,
    EqualSumOfCoefficients,
    FactorWithSpecificCoefficients,
    NaturalReducibility,
};

inline const char* problem_name(Problem p) {
    switch (p) {
        case Problem::SubsetSum: return "subset-sum";
        case Problem::SubsetProduct: return "subset-product";
        case Problem::ProductPartition: return "product-partition";
        case Problem::SSoP: return "ssop";
        case Problem::KFactor: return "k-factor";
        case Problem::SumOfCoefficients: return "sum-of-coefficients";
        case Problem::ConstantTerm: return "constant-term";
        case Problem::KEqualFactor: return "k-equal-factor";
        case Problem::EqualConstantTerm: return "equal-constant-term";
        case Problem::EqualSumOfCoefficients: return "equal-sum-of-coefficients";
        case Problem::FactorWithSpecificCoefficients: return "factor-with-specific-coefficients";
        case Problem::NaturalReducibility: return "natural-reducibility";
    }
    throw Error("problem_name: bad enum");
}

inline Problem problem_from_name(const std::string& s) {
    static const std::vector<Problem> all = {
        Problem::SubsetSum,          Problem::SubsetProduct,
        Problem::ProductPartition,   Problem::SSoP,
        Problem::KFactor,            Problem::SumOfCoefficients,
        Problem::ConstantTerm,       Problem::KEqualFactor,
        Problem::EqualConstantTerm,  Problem::EqualSumOfCoefficients,
        Problem::FactorWithSpecificCoefficients, Problem::NaturalReducibility,
    };
    for (Problem p : all)
        if (s == problem_name(p)) return p;
    throw ParseError("unknown problem: \"" + s + "\"");
}

struct ConfigOverrides {
    std::optional<deciders::TrivialFactors> trivial;
    std::optional<deciders::SignedFactors> signed_factors;
    std::optional<std::string> strategy; // validated per problem family at dispatch
    std::optional<deciders::CoefIndex> coef_index;

    bool any() const { return trivial || signed_factors || strategy || coef_index; }
};

struct InstanceFile {
    Problem problem = Problem::SubsetSum;
    Poly poly;          // polynomial problems
    std::vector<Int> a; // list problems
    Int k = 0;
    Int h = 0;
    Int t = 0;
    long m = 0; // coefficient index for factor-with-specific-coefficients
    ConfigOverrides config;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

inline Int parse_int(const json& j, const std::string& field) {
    if (!j.is_string())
        throw ParseError("field \"" + field + "\" must be a decimal string");
    try {
        return int_from_string(j.get<std::string>());
    } catch (const ParseError&) {
        throw ParseError("field \"" + field + "\" is not a valid decimal integer");
    }
}

inline std::vector<Int> parse_int_array(const json& j, const std::string& field) {
    if (!j.is_array())
        throw ParseError("field \"" + field + "\" must be an array of decimal strings");
    std::vector<Int> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(parse_int(e, field));
    return out;
}

inline Poly parse_poly(const json& j, const std::string& field) {
    return Poly(parse_int_array(j, field)); // ascending degree; normalized by ctor
}

inline long parse_small(const json& j, const std::string& field) {
    Int v = parse_int(j, field);
    if (!fits_int64(v) || to_int64(v) > (std::int64_t(1) << 30) ||
        to_int64(v) < -(std::int64_t(1) << 30))
        throw ParseError("field \"" + field + "\" out of structural range");
    return static_cast<long>(to_int64(v));
}

inline ConfigOverrides parse_config(const json& j) {
    if (!j.is_object()) throw ParseError("\"config\" must be an object");
    ConfigOverrides cfg;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (!it.value().is_string())
            throw ParseError("config field \"" + key + "\" must be a string");
        const std::string v = it.value().get<std::string>();
        if (key == "trivial") {
            if (v == "allowed") cfg.trivial = deciders::TrivialFactors::Allowed;
            else if (v == "forbidden") cfg.trivial = deciders::TrivialFactors::Forbidden;
            else throw ParseError("config trivial: expected allowed|forbidden");
        } else if (key == "signed") {
            if (v == "monic") cfg.signed_factors = deciders::SignedFactors::MonicOnly;
            else if (v == "allow") cfg.signed_factors = deciders::SignedFactors::AllowSign;
            else throw ParseError("config signed: expected monic|allow");
        } else if (key == "strategy") {
            if (v == "exhaustive" || v == "mitm" || v == "dp" || v == "dfs" || v == "auto")
                cfg.strategy = v;
            else throw ParseError("config strategy: expected exhaustive|mitm|dp|dfs|auto");
        } else if (key == "coef_index") {
            if (v == "absolute") cfg.coef_index = deciders::CoefIndex::Absolute;
            else if (v == "from_leading") cfg.coef_index = deciders::CoefIndex::FromLeading;
            else throw ParseError("config coef_index: expected absolute|from_leading");
        } else {
            throw ParseError("unknown config field \"" + key + "\"");
        }
    }
    return cfg;
}

inline std::vector<std::string> payload_fields(Problem p) {
    switch (p) {
        case Problem::SubsetSum:
        case Problem::SubsetProduct: return {"a", "t"};
        case Problem::ProductPartition: return {"a"};
        case Problem::SSoP: return {"a", "t", "k"};
        case Problem::KFactor: return {"poly", "k", "h"};
        case Problem::SumOfCoefficients:
        case Problem::ConstantTerm: return {"poly", "h"};
        case Problem::KEqualFactor: return {"poly", "k"};
        case Problem::EqualConstantTerm:
        case Problem::EqualSumOfCoefficients:
        case Problem::NaturalReducibility: return {"poly"};
        case Problem::FactorWithSpecificCoefficients: return {"poly", "m", "h"};
    }
    throw Error("payload_fields: bad enum");
}

} // namespace detail

inline InstanceFile parse_instance(const json& j) {
    if (!j.is_object()) throw ParseError("instance must be a JSON object");
    if (!j.contains("problem") || !j.at("problem").is_string())
        throw ParseError("missing string field \"problem\"");
    InstanceFile inst;
    inst.problem = problem_from_name(j.at("problem").get<std::string>());

    const auto allowed = detail::payload_fields(inst.problem);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& key = it.key();
        if (key == "problem" || key == "config") continue;
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ParseError("unknown field \"" + key + "\" for problem " +
                             problem_name(inst.problem));
    }
    for (const std::string& key : allowed)
        if (!j.contains(key))
            throw ParseError("missing field \"" + key + "\" for problem " +
                             problem_name(inst.problem));

    for (const std::string& key : allowed) {
        const json& v = j.at(key);
        if (key == "poly") inst.poly = detail::parse_poly(v, key);
        else if (key == "a") inst.a = detail::parse_int_array(v, key);
        else if (key == "k") inst.k = detail::parse_int(v, key);
        else if (key == "h") inst.h = detail::parse_int(v, key);
        else if (key == "t") inst.t = detail::parse_int(v, key);
        else if (key == "m") inst.m = detail::parse_small(v, key);
    }
    if (j.contains("config")) inst.config = detail::parse_config(j.at("config"));
    return inst;
}

inline InstanceFile parse_instance_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_instance(j);
}

inline InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open instance file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_instance_text(ss.str());
}

// Typed views onto the parsed payload.
inline combinat::SubsetTargetInstance to_subset_target(const InstanceFile& f) {
    return {f.a, f.t};
}
inline combinat::PartitionInstance to_partition(const InstanceFile& f) { return {f.a}; }
inline combinat::SSoPInstance to_ssop(const InstanceFile& f) {
    if (!fits_int64(f.k) || to_int64(f.k) < 1 ||
        to_int64(f.k) > static_cast<std::int64_t>(f.a.size()))
        throw ParseError("ssop arity k out of range [1, n]");
    return {f.a, f.t, static_cast<long>(to_int64(f.k))};
}

// ---------------------------------------------------------------------------
// Emission
// ---------------------------------------------------------------------------

inline json to_json(const Int& v) { return int_to_string(v); }

inline json to_json(const Poly& p) {
    json arr = json::array();
    for (const Int& c : p.coeffs) arr.push_back(int_to_string(c));
    return arr;
}

inline json to_json(const std::vector<Int>& a) {
    json arr = json::array();
    for (const Int& v : a) arr.push_back(int_to_string(v));
    return arr;
}

inline json indices_to_json(const std::vector<int>& idx) {
    json arr = json::array();
    for (int i : idx) arr.push_back(std::to_string(i));
    return arr;
}

inline json config_to_json(const ConfigOverrides& cfg) {
    json j = json::object();
    if (cfg.trivial)
        j["trivial"] = (*cfg.trivial == deciders::TrivialFactors::Allowed) ? "allowed"
                                                                           : "forbidden";
    if (cfg.signed_factors)
        j["signed"] =
            (*cfg.signed_factors == deciders::SignedFactors::MonicOnly) ? "monic" : "allow";
    if (cfg.strategy) j["strategy"] = *cfg.strategy;
    if (cfg.coef_index)
        j["coef_index"] =
            (*cfg.coef_index == deciders::CoefIndex::Absolute) ? "absolute" : "from_leading";
    return j;
}

inline json instance_to_json(const InstanceFile& inst) {
    json j = json::object();
    j["problem"] = problem_name(inst.problem);
    for (const std::string& key : detail::payload_fields(inst.problem)) {
        if (key == "poly") j["poly"] = to_json(inst.poly);
        else if (key == "a") j["a"] = to_json(inst.a);
        else if (key == "k") j["k"] = int_to_string(inst.k);
        else if (key == "h") j["h"] = int_to_string(inst.h);
        else if (key == "t") j["t"] = int_to_string(inst.t);
        else if (key == "m") j["m"] = std::to_string(inst.m);
    }
    if (inst.config.any()) j["config"] = config_to_json(inst.config);
    return j;
}

inline json witness_to_json(const combinat::SubsetWitness& w) {
    json j = json::object();
    j["indices"] = indices_to_json(w.indices);
    if (!w.indices_j.empty()) j["indices_j"] = indices_to_json(w.indices_j);
    return j;
}

inline json witness_to_json(const deciders::FactorWitness& w, bool include_value) {
    json j = json::object();
    j["q"] = to_json(w.q);
    if (w.r) j["r"] = to_json(*w.r);
    if (!w.cursor.empty()) j["cursor"] = indices_to_json(w.cursor);
    if (include_value) j["value"] = int_to_string(w.certified_value);
    return j;
}

inline json make_verdict(bool yes, json witness, const std::string& strategy,
                         std::uint64_t nodes, double elapsed_ms, json config_echo) {
    json j = json::object();
    j["answer"] = yes ? "yes" : "no";
    if (!witness.is_null()) j["witness"] = std::move(witness);
    j["stats"] = {{"strategy", strategy},
                  {"nodes", std::to_string(nodes)},
                  {"elapsed_ms", elapsed_ms}};
    j["version"] = POLYFACTOR_VERSION;
    j["config"] = std::move(config_echo);
    return j;
}

inline json error_json(const std::string& kind, const std::string& message) {
    return json{{"error", kind}, {"message", message}};
}

// ---------------------------------------------------------------------------
// Standalone verdict checking: reload instance + verdict and confirm the
// witness using only ring arithmetic, never the search engines.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> indices_from_json(const json& j, const std::string& field) {
    if (!j.is_array()) throw ParseError("witness " + field + " must be an array");
    std::vector<int> out;
    for (const auto& e : j) out.push_back(static_cast<int>(parse_small(e, field)));
    return out;
}

inline bool valid_index_set(const std::vector<int>& idx, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (int i : idx) {
        if (i < 1 || static_cast<std::size_t>(i) > n) return false;
        if (seen[static_cast<std::size_t>(i - 1)]) return false;
        seen[static_cast<std::size_t>(i - 1)] = true;
    }
    return true;
}

} // namespace detail

inline bool verify_verdict(const InstanceFile& inst, const json& verdict) {
    if (!verdict.is_object() || !verdict.contains("answer")) return false;
    const bool yes = verdict.at("answer") == "yes";
    if (!yes) return !verdict.contains("witness");
    if (!verdict.contains("witness")) return false;
    const json& w = verdict.at("witness");

    const bool monic_only =
        !(inst.config.signed_factors &&
          *inst.config.signed_factors == deciders::SignedFactors::AllowSign);

    auto factor_checks = [&](const Poly& q) {
        if (q.is_zero()) return false;
        if (monic_only && !q.is_monic()) return false;
        if (!monic_only && abs_int(q.lead()) != 1) return false;
        return bool(exact_div(inst.poly, q));
    };

    try {
        switch (inst.problem) {
            case Problem::SubsetSum: {
                auto idx = detail::indices_from_json(w.at("indices"), "indices");
                if (!detail::valid_index_set(idx, inst.a.size()) || idx.empty()) return false;
                Int s = 0;
                for (int i : idx) s += inst.a[static_cast<std::size_t>(i - 1)];
                return s == inst.t;
            }
            case Problem::SubsetProduct: {
                auto idx = detail::indices_from_json(w.at("indices"), "indices");
                if (!detail::valid_index_set(idx, inst.a.size())) return false;
                Int s = 1;
                for (int i : idx) s *= inst.a[static_cast<std::size_t>(i - 1)];
                return s == inst.t;
            }
            case Problem::ProductPartition: {
                auto idx = detail::indices_from_json(w.at("indices"), "indices");
                auto jdx = detail::indices_from_json(w.at("indices_j"), "indices_j");
                if (idx.empty() || jdx.empty()) return false;
                std::vector<int> all = idx;
                all.insert(all.end(), jdx.begin(), jdx.end());
                if (!detail::valid_index_set(all, inst.a.size()) ||
                    all.size() != inst.a.size())
                    return false;
                Int pi = 1, pj = 1;
                for (int i : idx) pi *= inst.a[static_cast<std::size_t>(i - 1)];
                for (int i : jdx) pj *= inst.a[static_cast<std::size_t>(i - 1)];
                return pi == pj;
            }
            case Problem::SSoP: {
                auto idx = detail::indices_from_json(w.at("indices"), "indices");
                if (!detail::valid_index_set(idx, inst.a.size())) return false;
                const long k = to_ssop(inst).k;
                if (static_cast<long>(idx.size()) < k) return false;
                std::vector<Int> chosen;
                for (int i : idx) chosen.push_back(inst.a[static_cast<std::size_t>(i - 1)]);
                return elementary_symmetric(chosen, k) == inst.t;
            }
            case Problem::KFactor:
            case Problem::SumOfCoefficients:
            case Problem::ConstantTerm: {
                Poly q = detail::parse_poly(w.at("q"), "q");
                if (!factor_checks(q)) return false;
                Int at = inst.problem == Problem::KFactor ? inst.k
                         : inst.problem == Problem::SumOfCoefficients ? Int(1)
                                                                      : Int(0);
                if (inst.config.trivial &&
                    *inst.config.trivial == deciders::TrivialFactors::Forbidden &&
                    (q.degree() == 0 || q.degree() == inst.poly.degree()))
                    return false;
                return eval(q, at) == inst.h;
            }
            case Problem::KEqualFactor:
            case Problem::EqualConstantTerm:
            case Problem::EqualSumOfCoefficients: {
                Poly q = detail::parse_poly(w.at("q"), "q");
                Poly r = detail::parse_poly(w.at("r"), "r");
                if (q.is_zero() || r.is_zero()) return false;
                if (mul(q, r) != inst.poly) return false;
                const bool forbid =
                    inst.config.trivial &&
                    *inst.config.trivial == deciders::TrivialFactors::Forbidden;
                if (forbid && (q.degree() == 0 || r.degree() == 0)) return false;
                Int at = inst.problem == Problem::KEqualFactor ? inst.k
                         : inst.problem == Problem::EqualSumOfCoefficients ? Int(1)
                                                                           : Int(0);
                return eval(q, at) == eval(r, at);
            }
            case Problem::FactorWithSpecificCoefficients: {
                Poly q = detail::parse_poly(w.at("q"), "q");
                if (!factor_checks(q)) return false;
                const bool from_leading =
                    inst.config.coef_index &&
                    *inst.config.coef_index == deciders::CoefIndex::FromLeading;
                Int c = from_leading ? coef(q, q.degree() - inst.m) : coef(q, inst.m);
                return c == inst.h;
            }
            case Problem::NaturalReducibility: {
                Poly q = detail::parse_poly(w.at("q"), "q");
                Poly r = detail::parse_poly(w.at("r"), "r");
                if (q.degree() < 1 || r.degree() < 1) return false;
                for (const Int& c : q.coeffs)
                    if (c < 0) return false;
                for (const Int& c : r.coeffs)
                    if (c < 0) return false;
                return mul(q, r) == inst.poly;
            }
        }
    } catch (const json::exception&) {
        return false;
    } catch (const Error&) {
        return false;
    }
    return false;
}

} // namespace polyfactor::json_io
