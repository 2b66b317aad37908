#pragma once

#include <chabauty/rational.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace chabauty {

/// Polynomial over Q, coefficients in ascending degree order.
/// The zero polynomial is the empty coefficient list.
struct PolyQ {
    std::vector<Rat> c;

    PolyQ() = default;
    explicit PolyQ(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    [[nodiscard]] bool is_zero() const { return c.empty(); }
    [[nodiscard]] long degree() const { return static_cast<long>(c.size()) - 1; }
    [[nodiscard]] const Rat& leading() const { return c.back(); }

    [[nodiscard]] Rat operator()(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    bool operator==(const PolyQ& o) const { return c == o.c; }
};

inline PolyQ poly_add(const PolyQ& p, const PolyQ& q) {
    std::vector<Rat> r(std::max(p.c.size(), q.c.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < p.c.size()) r[i] += p.c[i];
        if (i < q.c.size()) r[i] += q.c[i];
    }
    return PolyQ(std::move(r));
}

inline PolyQ poly_neg(const PolyQ& p) {
    std::vector<Rat> r = p.c;
    for (auto& x : r) x = -x;
    return PolyQ(std::move(r));
}

inline PolyQ poly_sub(const PolyQ& p, const PolyQ& q) { return poly_add(p, poly_neg(q)); }

inline PolyQ poly_mul(const PolyQ& p, const PolyQ& q) {
    if (p.is_zero() || q.is_zero()) return PolyQ{};
    std::vector<Rat> r(p.c.size() + q.c.size() - 1);
    for (size_t i = 0; i < p.c.size(); ++i)
        for (size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
    return PolyQ(std::move(r));
}

inline PolyQ poly_scale(const PolyQ& p, const Rat& s) {
    std::vector<Rat> r = p.c;
    for (auto& x : r) x *= s;
    return PolyQ(std::move(r));
}

inline PolyQ derivative(const PolyQ& p) {
    if (p.degree() < 1) return PolyQ{};
    std::vector<Rat> r(p.c.size() - 1);
    for (size_t i = 1; i < p.c.size(); ++i) r[i - 1] = p.c[i] * Rat(Int(i));
    return PolyQ(std::move(r));
}

/// Euclidean division; returns (quotient, remainder).
inline std::pair<PolyQ, PolyQ> poly_divmod(const PolyQ& p, const PolyQ& d) {
    if (d.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
    PolyQ rem = p;
    std::vector<Rat> quo(p.degree() >= d.degree() ? p.degree() - d.degree() + 1 : 0);
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        long k = rem.degree() - d.degree();
        Rat f = rem.leading() / d.leading();
        quo[k] = f;
        for (size_t i = 0; i < d.c.size(); ++i) rem.c[k + i] -= f * d.c[i];
        rem.trim();
    }
    return {PolyQ(std::move(quo)), std::move(rem)};
}

inline PolyQ make_monic(const PolyQ& p) {
    if (p.is_zero()) return p;
    return poly_scale(p, Rat(1) / p.leading());
}

/// Monic gcd.
inline PolyQ poly_gcd(PolyQ a, PolyQ b) {
    while (!b.is_zero()) {
        PolyQ r = poly_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

namespace detail {

inline int sign_at_plus_inf(const PolyQ& p) { return p.is_zero() ? 0 : p.leading().sign(); }

inline int sign_at_minus_inf(const PolyQ& p) {
    if (p.is_zero()) return 0;
    int s = p.leading().sign();
    return (p.degree() % 2 == 0) ? s : -s;
}

inline int sign_variations(const std::vector<int>& signs) {
    int v = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

} // namespace detail

/// Number of distinct real roots of a square-free polynomial, by Sturm's
/// theorem over (-inf, +inf).
inline long sturm_distinct_real_roots(const PolyQ& squarefree) {
    if (squarefree.degree() <= 0) return 0;
    std::vector<PolyQ> chain{squarefree, derivative(squarefree)};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        PolyQ r = poly_neg(poly_divmod(chain[chain.size() - 2], chain.back()).second);
        chain.push_back(std::move(r));
    }
    std::vector<int> at_minus, at_plus;
    at_minus.reserve(chain.size());
    at_plus.reserve(chain.size());
    for (const auto& p : chain) {
        at_minus.push_back(detail::sign_at_minus_inf(p));
        at_plus.push_back(detail::sign_at_plus_inf(p));
    }
    return detail::sign_variations(at_minus) - detail::sign_variations(at_plus);
}

/// Real roots counted with multiplicity: peel square-free layers via gcd(p, p').
inline long real_root_count(const PolyQ& p) {
    if (p.is_zero()) throw std::invalid_argument("real_root_count: zero polynomial");
    long total = 0;
    PolyQ cur = p;
    while (cur.degree() > 0) {
        PolyQ g = poly_gcd(cur, derivative(cur));
        PolyQ squarefree = poly_divmod(cur, g).first;
        total += sturm_distinct_real_roots(squarefree);
        cur = std::move(g);
    }
    return total;
}

/// True iff every complex root of p is real. Exact.
inline bool is_real_rooted(const PolyQ& p) {
    if (p.is_zero()) throw std::invalid_argument("is_real_rooted: zero polynomial");
    return real_root_count(p) == p.degree();
}

/// Rational roots of p, found by the rational root test on the primitive
/// integer form. Returned without multiplicity.
inline std::vector<Rat> rational_roots(const PolyQ& p) {
    std::vector<Rat> roots;
    if (p.degree() <= 0) return roots;
    // clear denominators
    Int den = 1;
    for (const auto& q : p.c) den = boost::multiprecision::lcm(den, denominator(q));
    std::vector<Int> ic(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) ic[i] = numerator(p.c[i] * Rat(den));
    size_t low = 0;
    while (low < ic.size() && ic[low].is_zero()) ++low;
    if (low > 0) roots.push_back(Rat(0));
    if (low + 1 >= ic.size()) return roots;
    Int a0 = boost::multiprecision::abs(ic[low]);
    Int an = boost::multiprecision::abs(ic.back());
    // Trial division is capped; a root missed here only means a caller falls
    // back to its inexact path, it never produces a wrong answer.
    auto divisors = [](const Int& n) {
        std::vector<Int> ds;
        Int cap = 1000000;
        for (Int d = 1; d * d <= n && d <= cap; ++d)
            if (n % d == 0) {
                ds.push_back(d);
                ds.push_back(n / d);
            }
        return ds;
    };
    for (const Int& num : divisors(a0))
        for (const Int& dd : divisors(an))
            for (int s : {1, -1}) {
                Rat cand = make_rat(s * num, dd);
                if (p(cand).is_zero() &&
                    std::find(roots.begin(), roots.end(), cand) == roots.end())
                    roots.push_back(cand);
            }
    return roots;
}

} // namespace chabauty
