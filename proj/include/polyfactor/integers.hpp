#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "polyfactor/errors.hpp"

namespace polyfactor {

// All exact arithmetic runs on GMP integers: subset products and Vieta
// coefficients overflow 64 bits even at desk scale.
using Int = mpz_class;

inline int sign(const Int& v) { return mpz_sgn(v.get_mpz_t()); }

inline Int abs_int(const Int& v) {
    Int r;
    mpz_abs(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

// Exact square root when v is a perfect square, nullopt otherwise.
inline std::optional<Int> perfect_sqrt(const Int& v) {
    if (sign(v) < 0) return std::nullopt;
    Int root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), v.get_mpz_t());
    if (rem != 0) return std::nullopt;
    return root;
}

inline bool divides(const Int& d, const Int& v) {
    return mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int div_exact(const Int& v, const Int& d) {
    Int q;
    mpz_divexact(q.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    return q;
}

inline bool fits_int64(const Int& v) {
    return v.fits_slong_p(); // 64-bit long on every supported platform
}

inline std::int64_t to_int64(const Int& v) { return mpz_get_si(v.get_mpz_t()); }

// Decimal-string transport used by all JSON interfaces (numbers are lossy).
inline std::string int_to_string(const Int& v) { return v.get_str(10); }

inline Int int_from_string(const std::string& s) {
    // mpz_class(string) accepts whitespace and leading '+'; the wire format
    // is stricter: optional '-', then digits, no other characters.
    if (s.empty()) throw ParseError("empty integer literal");
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) throw ParseError("bare sign is not an integer: '" + s + "'");
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw ParseError("bad integer literal: '" + s + "'");
    return Int(s, 10);
}

} // namespace polyfactor
