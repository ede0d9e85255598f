#ifndef PETITLAB_CPOLY_HPP
#define PETITLAB_CPOLY_HPP

#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace petitlab {

/// Commutative polynomial in F[x] (x = t^n in the skew picture).
/// coeffs[i] holds the coefficient of x^i; all coefficients lie in F.
struct CPoly {
    std::vector<Felem> coeffs;

    bool operator==(const CPoly& o) const { return coeffs == o.coeffs; }
    bool operator!=(const CPoly& o) const { return coeffs != o.coeffs; }
    int deg() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
};

inline CPoly cp_trim(CPoly a) {
    while (!a.coeffs.empty() && a.coeffs.back().is_zero()) a.coeffs.pop_back();
    return a;
}

inline CPoly cp_make(const FieldTower& tw, std::vector<Felem> cs) {
    CPoly r{std::move(cs)};
    r = cp_trim(std::move(r));
    for (const Felem& c : r.coeffs)
        if (!tw.in_F(c)) throw std::invalid_argument("central polynomial coefficient not in F");
    return r;
}

inline CPoly cp_zero() { return CPoly{}; }

inline CPoly cp_one(const FieldTower& tw) { return CPoly{{tw.one()}}; }

inline CPoly cp_x(const FieldTower& tw) { return CPoly{{tw.zero(), tw.one()}}; }

inline bool cp_is_monic(const CPoly& a) { return !a.coeffs.empty() && !a.coeffs.back().is_zero() &&
                                                 a.coeffs.back().coeffs[0] == 1 &&
                                                 [&] {
                                                     for (size_t i = 1; i < a.coeffs.back().coeffs.size(); ++i)
                                                         if (a.coeffs.back().coeffs[i] != 0) return false;
                                                     return true;
                                                 }(); }

inline CPoly cp_add(const FieldTower& tw, const CPoly& a, const CPoly& b) {
    CPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.assign(n, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = tw.add(r.coeffs[i], b.coeffs[i]);
    return cp_trim(std::move(r));
}

inline CPoly cp_sub(const FieldTower& tw, const CPoly& a, const CPoly& b) {
    CPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.assign(n, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = tw.sub(r.coeffs[i], b.coeffs[i]);
    return cp_trim(std::move(r));
}

inline CPoly cp_mul(const FieldTower& tw, const CPoly& a, const CPoly& b) {
    if (a.is_zero() || b.is_zero()) return cp_zero();
    CPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = tw.add(r.coeffs[i + j], tw.mul(a.coeffs[i], b.coeffs[j]));
    return cp_trim(std::move(r));
}

inline CPoly cp_scale(const FieldTower& tw, const CPoly& a, const Felem& c) {
    CPoly r = a;
    for (Felem& x : r.coeffs) x = tw.mul(x, c);
    return cp_trim(std::move(r));
}

inline std::pair<CPoly, CPoly> cp_divmod(const FieldTower& tw, CPoly a, const CPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    CPoly q;
    if (a.deg() >= b.deg()) q.coeffs.assign(a.deg() - b.deg() + 1, tw.zero());
    Felem lead_inv = tw.inv(b.coeffs.back());
    while (!a.is_zero() && a.deg() >= b.deg()) {
        int shift = a.deg() - b.deg();
        Felem c = tw.mul(a.coeffs.back(), lead_inv);
        q.coeffs[shift] = c;
        for (int j = 0; j <= b.deg(); ++j)
            a.coeffs[shift + j] = tw.sub(a.coeffs[shift + j], tw.mul(c, b.coeffs[j]));
        a = cp_trim(std::move(a));
    }
    return {cp_trim(std::move(q)), std::move(a)};
}

inline CPoly cp_monic(const FieldTower& tw, const CPoly& a) {
    if (a.is_zero()) return a;
    return cp_scale(tw, a, tw.inv(a.coeffs.back()));
}

inline CPoly cp_gcd(const FieldTower& tw, CPoly a, CPoly b) {
    while (!b.is_zero()) {
        CPoly r = cp_divmod(tw, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return cp_monic(tw, a);
}

inline CPoly cp_mulmod(const FieldTower& tw, const CPoly& a, const CPoly& b, const CPoly& mod) {
    return cp_divmod(tw, cp_mul(tw, a, b), mod).second;
}

inline CPoly cp_powmod(const FieldTower& tw, CPoly base, long long e, const CPoly& mod) {
    CPoly r = cp_divmod(tw, cp_one(tw), mod).second;
    while (e > 0) {
        if (e & 1) r = cp_mulmod(tw, r, base, mod);
        base = cp_mulmod(tw, base, base, mod);
        e >>= 1;
    }
    return r;
}

/// Rabin test over F = F_q.
inline bool cp_irreducible(const FieldTower& tw, const CPoly& f) {
    int d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    CPoly x = cp_x(tw);
    CPoly acc = cp_divmod(tw, x, f).second;
    for (int i = 0; i < d; ++i) acc = cp_powmod(tw, acc, tw.q(), f);
    if (!cp_sub(tw, acc, cp_divmod(tw, x, f).second).is_zero()) return false;
    int dd = d;
    auto check_prime = [&](int l) {
        CPoly t = cp_divmod(tw, x, f).second;
        for (int i = 0; i < d / l; ++i) t = cp_powmod(tw, t, tw.q(), f);
        t = cp_sub(tw, t, cp_divmod(tw, x, f).second);
        return cp_gcd(tw, t, f).deg() == 0;
    };
    for (int l = 2; l * l <= dd; ++l) {
        if (dd % l) continue;
        while (dd % l == 0) dd /= l;
        if (!check_prime(l)) return false;
    }
    if (dd > 1 && !check_prime(dd)) return false;
    return true;
}

/// Deterministic ordering: compare coefficient vectors constant term first.
inline bool cp_lex_less(const FieldTower& tw, const CPoly& a, const CPoly& b) {
    if (a.deg() != b.deg()) return a.deg() < b.deg();
    for (int i = 0; i <= a.deg(); ++i) {
        long long oa = tw.ordinal(a.coeffs[i]), ob = tw.ordinal(b.coeffs[i]);
        if (oa != ob) return oa < ob;
    }
    return false;
}

/// All monic irreducible polynomials of degree m0 in F[x], sorted (constant
/// term first, ordinal order per coefficient).
inline std::vector<CPoly> irreducible_polys(const FieldTower& tw, int m0) {
    if (m0 < 1) throw std::invalid_argument("degree must be >= 1");
    const std::vector<Felem>& F = tw.subfield_F();
    int q = static_cast<int>(F.size());
    std::vector<int> digits(m0, 0);
    std::vector<CPoly> out;
    while (true) {
        CPoly f;
        f.coeffs.reserve(m0 + 1);
        for (int i = 0; i < m0; ++i) f.coeffs.push_back(F[digits[i]]);
        f.coeffs.push_back(tw.one());
        if (cp_irreducible(tw, f)) out.push_back(std::move(f));
        int i = m0 - 1;
        while (i >= 0 && digits[i] == q - 1) digits[i--] = 0;
        if (i < 0) break;
        ++digits[i];
    }
    std::sort(out.begin(), out.end(),
              [&tw](const CPoly& a, const CPoly& b) { return cp_lex_less(tw, a, b); });
    return out;
}

}  // namespace petitlab

#endif
