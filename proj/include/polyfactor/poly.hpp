#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "polyfactor/errors.hpp"
#include "polyfactor/integers.hpp"

namespace polyfactor {

// Dense univariate polynomial, coeffs[i] = coefficient of x^i.
// The zero polynomial is the empty list; otherwise the last entry is nonzero.
// Templated on the coefficient type so tests can count coefficient operations
// with an instrumented integer; production code uses BasicPoly<Int>.
template <class T>
struct BasicPoly {
    std::vector<T> coeffs;

    BasicPoly() = default;
    explicit BasicPoly(std::vector<T> c) : coeffs(std::move(c)) { normalize(); }
    BasicPoly(std::initializer_list<T> c) : coeffs(c) { normalize(); }

    void normalize() {
        while (!coeffs.empty() && coeffs.back() == T(0)) coeffs.pop_back();
    }

    bool is_zero() const { return coeffs.empty(); }
    // -1 for the zero polynomial, otherwise the true degree.
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
    const T& lead() const { return coeffs.back(); }
    bool is_monic() const { return !is_zero() && lead() == T(1); }

    bool operator==(const BasicPoly& o) const { return coeffs == o.coeffs; }
    // Canonical order: by degree, then lexicographic on the coefficient list.
    bool operator<(const BasicPoly& o) const {
        if (coeffs.size() != o.coeffs.size()) return coeffs.size() < o.coeffs.size();
        return std::lexicographical_compare(coeffs.begin(), coeffs.end(),
                                            o.coeffs.begin(), o.coeffs.end());
    }
};

using Poly = BasicPoly<Int>;

template <class T>
BasicPoly<T> poly_constant(const T& c) {
    BasicPoly<T> p;
    if (!(c == T(0))) p.coeffs.push_back(c);
    return p;
}

inline Poly poly_one() { return poly_constant<Int>(1); }

template <class T>
BasicPoly<T> add(const BasicPoly<T>& p, const BasicPoly<T>& q) {
    BasicPoly<T> r;
    r.coeffs.resize(std::max(p.coeffs.size(), q.coeffs.size()), T(0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) r.coeffs[i] = p.coeffs[i];
    for (std::size_t i = 0; i < q.coeffs.size(); ++i) r.coeffs[i] += q.coeffs[i];
    r.normalize();
    return r;
}

template <class T>
BasicPoly<T> neg(const BasicPoly<T>& p) {
    BasicPoly<T> r = p;
    for (auto& c : r.coeffs) c = T(0) - c;
    return r;
}

template <class T>
BasicPoly<T> sub(const BasicPoly<T>& p, const BasicPoly<T>& q) {
    return add(p, neg(q));
}

template <class T>
BasicPoly<T> mul(const BasicPoly<T>& p, const BasicPoly<T>& q) {
    if (p.is_zero() || q.is_zero()) return {};
    BasicPoly<T> r;
    r.coeffs.assign(p.coeffs.size() + q.coeffs.size() - 1, T(0));
    for (std::size_t i = 0; i < p.coeffs.size(); ++i)
        for (std::size_t j = 0; j < q.coeffs.size(); ++j)
            r.coeffs[i + j] += p.coeffs[i] * q.coeffs[j];
    r.normalize(); // cannot trim over an integral domain, but harmless
    return r;
}

// Horner's scheme; exact in arbitrary precision. The point is a non-deduced
// context so plain integer literals convert to the coefficient type.
template <class T>
T eval(const BasicPoly<T>& p, const std::type_identity_t<T>& x0) {
    T acc(0);
    for (std::size_t i = p.coeffs.size(); i-- > 0;) acc = acc * x0 + p.coeffs[i];
    return acc;
}

// c_m, with 0 outside [0, deg(p)].
template <class T>
T coef(const BasicPoly<T>& p, long m) {
    if (m < 0 || m >= static_cast<long>(p.coeffs.size())) return T(0);
    return p.coeffs[static_cast<std::size_t>(m)];
}

// Integer-exact long division: returns r with p = q*r, or nullopt when no
// such r exists over the integers.
template <class T>
std::optional<BasicPoly<T>> exact_div(const BasicPoly<T>& p, const BasicPoly<T>& q) {
    if (q.is_zero()) throw ZeroDivisor();
    if (p.is_zero()) return BasicPoly<T>{};
    if (p.degree() < q.degree()) return std::nullopt;
    std::vector<T> rem = p.coeffs;
    std::vector<T> quot(static_cast<std::size_t>(p.degree() - q.degree()) + 1, T(0));
    for (std::size_t i = quot.size(); i-- > 0;) {
        const T& top = rem[i + q.coeffs.size() - 1];
        if (top == T(0)) continue;
        if (!(top % q.lead() == T(0))) return std::nullopt;
        T c = top / q.lead();
        for (std::size_t j = 0; j < q.coeffs.size(); ++j)
            rem[i + j] -= c * q.coeffs[j];
        quot[i] = c;
    }
    for (const T& c : rem)
        if (!(c == T(0))) return std::nullopt;
    return BasicPoly<T>(std::move(quot));
}

// prod (x - a_i), monic, via the incremental scheme p <- p*(x - a): O(n^2)
// coefficient operations total. Empty root list yields the polynomial 1.
template <class T>
BasicPoly<T> expand_from_roots(const std::vector<T>& roots) {
    BasicPoly<T> p;
    p.coeffs.reserve(roots.size() + 1);
    p.coeffs.push_back(T(1));
    for (const T& a : roots) {
        p.coeffs.push_back(T(0));
        for (std::size_t i = p.coeffs.size(); i-- > 1;)
            p.coeffs[i] = p.coeffs[i - 1] - a * p.coeffs[i];
        p.coeffs[0] = T(0) - a * p.coeffs[0];
    }
    return p; // leading coefficient is 1 by construction, already normalized
}

// e_k(values) by the incremental recurrence e_j <- e_j + a*e_{j-1}.
template <class T>
T elementary_symmetric(const std::vector<T>& values, long k) {
    if (k < 0 || k > static_cast<long>(values.size()))
        throw OutOfRange("elementary_symmetric: k=" + std::to_string(k) +
                         " outside [0, " + std::to_string(values.size()) + "]");
    std::vector<T> e(static_cast<std::size_t>(k) + 1, T(0));
    e[0] = T(1);
    for (const T& a : values)
        for (std::size_t j = e.size(); j-- > 1;) e[j] += a * e[j - 1];
    return e[static_cast<std::size_t>(k)];
}

// Coefficient list reversed: rev(p)(x) = x^deg(p) * p(1/x). Multiplicative,
// which is what makes from-the-leading-end coefficient reads cheap.
template <class T>
BasicPoly<T> reversed(const BasicPoly<T>& p) {
    BasicPoly<T> r = p;
    std::reverse(r.coeffs.begin(), r.coeffs.end());
    r.normalize();
    return r;
}

// Human-readable form for diagnostics, e.g. "x^3 + 10*x^2 + 31*x + 30".
inline std::string pretty(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (long i = p.degree(); i >= 0; --i) {
        const Int& c = p.coeffs[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Int a = abs_int(c);
        if (out.empty())
            out += (sign(c) < 0) ? "-" : "";
        else
            out += (sign(c) < 0) ? " - " : " + ";
        bool show_coeff = (i == 0) || a != 1;
        if (show_coeff) out += int_to_string(a);
        if (i > 0) {
            if (show_coeff) out += "*";
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace polyfactor
