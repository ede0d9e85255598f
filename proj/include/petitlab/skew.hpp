#ifndef PETITLAB_SKEW_HPP
#define PETITLAB_SKEW_HPP

#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cpoly.hpp"
#include "field.hpp"
#include "fp_linalg.hpp"

namespace petitlab {

/// deg(0) = -infinity sentinel.
inline constexpr int kDegNegInf = std::numeric_limits<int>::min();

/// Element of R = K[t;sigma]; coeffs[i] holds the coefficient of t^i.
/// The zero polynomial is the empty vector.
struct SPoly {
    std::vector<Felem> coeffs;

    bool operator==(const SPoly& o) const { return coeffs == o.coeffs; }
    bool operator!=(const SPoly& o) const { return coeffs != o.coeffs; }
    int deg() const { return coeffs.empty() ? kDegNegInf : static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
};

inline SPoly sp_trim(SPoly a) {
    while (!a.coeffs.empty() && a.coeffs.back().is_zero()) a.coeffs.pop_back();
    return a;
}

inline SPoly sp_zero() { return SPoly{}; }

inline SPoly sp_one(const FieldTower& tw) { return SPoly{{tw.one()}}; }

inline SPoly sp_t(const FieldTower& tw) { return SPoly{{tw.zero(), tw.one()}}; }

inline SPoly sp_const(const Felem& c) {
    if (c.is_zero()) return sp_zero();
    return SPoly{{c}};
}

inline SPoly sp_monomial(const FieldTower& tw, const Felem& c, int i) {
    if (c.is_zero()) return sp_zero();
    SPoly r;
    r.coeffs.assign(i + 1, tw.zero());
    r.coeffs[i] = c;
    return r;
}

inline bool sp_is_monic(const FieldTower& tw, const SPoly& a) {
    return !a.is_zero() && a.coeffs.back() == tw.one();
}

inline SPoly sp_add(const FieldTower& tw, const SPoly& a, const SPoly& b) {
    SPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.assign(n, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = tw.add(r.coeffs[i], b.coeffs[i]);
    return sp_trim(std::move(r));
}

inline SPoly sp_sub(const FieldTower& tw, const SPoly& a, const SPoly& b) {
    SPoly r;
    size_t n = std::max(a.coeffs.size(), b.coeffs.size());
    r.coeffs.assign(n, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) r.coeffs[i] = a.coeffs[i];
    for (size_t i = 0; i < b.coeffs.size(); ++i) r.coeffs[i] = tw.sub(r.coeffs[i], b.coeffs[i]);
    return sp_trim(std::move(r));
}

/// Product under the twist t a = sigma(a) t:
/// (a t^i)(b t^j) = a sigma^i(b) t^(i+j).
inline SPoly sp_mul(const FieldTower& tw, const SPoly& a, const SPoly& b) {
    if (a.is_zero() || b.is_zero()) return sp_zero();
    SPoly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, tw.zero());
    for (size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i].is_zero()) continue;
        for (size_t j = 0; j < b.coeffs.size(); ++j) {
            if (b.coeffs[j].is_zero()) continue;
            Felem term = tw.mul(a.coeffs[i], tw.sigma(b.coeffs[j], static_cast<long long>(i)));
            r.coeffs[i + j] = tw.add(r.coeffs[i + j], term);
        }
    }
    return sp_trim(std::move(r));
}

inline SPoly sp_scale(const FieldTower& tw, const Felem& c, const SPoly& a) {
    SPoly r = a;
    for (Felem& x : r.coeffs) x = tw.mul(c, x);
    return sp_trim(std::move(r));
}

/// Right division: g = q f + r with deg r < deg f; q and r are unique.
inline std::pair<SPoly, SPoly> sp_divmod(const FieldTower& tw, SPoly g, const SPoly& f) {
    if (f.is_zero()) throw std::domain_error("right division by the zero polynomial");
    SPoly q;
    int df = f.deg();
    if (g.deg() >= df) q.coeffs.assign(g.deg() - df + 1, tw.zero());
    while (!g.is_zero() && g.deg() >= df) {
        int shift = g.deg() - df;
        // c t^shift * (lc_f t^df + ...) has lead c * sigma^shift(lc_f)
        Felem c = tw.mul(g.coeffs.back(), tw.inv(tw.sigma(f.coeffs.back(), shift)));
        q.coeffs[shift] = c;
        for (int j = 0; j <= df; ++j) {
            Felem term = tw.mul(c, tw.sigma(f.coeffs[j], shift));
            g.coeffs[shift + j] = tw.sub(g.coeffs[shift + j], term);
        }
        g = sp_trim(std::move(g));
    }
    return {sp_trim(std::move(q)), std::move(g)};
}

inline SPoly sp_mod(const FieldTower& tw, const SPoly& g, const SPoly& f) {
    return sp_divmod(tw, g, f).second;
}

inline SPoly sp_monic(const FieldTower& tw, const SPoly& a) {
    if (a.is_zero()) return a;
    return sp_scale(tw, tw.inv(a.coeffs.back()), a);
}

/// Greatest common right divisor, monic, via the right Euclidean algorithm.
inline SPoly gcrd(const FieldTower& tw, SPoly a, SPoly b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcrd(0, 0) is undefined");
    while (!b.is_zero()) {
        SPoly r = sp_mod(tw, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return sp_monic(tw, a);
}

/// hhat(x) -> hhat(t^n), the central polynomial h in F[t^n].
inline SPoly inflate(const FieldTower& tw, const CPoly& hhat) {
    if (hhat.is_zero()) return sp_zero();
    SPoly r;
    r.coeffs.assign(static_cast<size_t>(hhat.deg()) * tw.n() + 1, tw.zero());
    for (int i = 0; i <= hhat.deg(); ++i) r.coeffs[static_cast<size_t>(i) * tw.n()] = hhat.coeffs[i];
    return sp_trim(std::move(r));
}

namespace detail {

/// Flatten a K-coefficient vector (length m) into F-coordinates (length m*n,
/// entries in F) via the fixed F-basis of K.
inline std::vector<Felem> flatten_F(const FieldTower& tw, const std::vector<Felem>& v) {
    std::vector<Felem> out;
    out.reserve(v.size() * tw.n());
    for (const Felem& c : v) {
        std::vector<Felem> fc = tw.F_coords(c);
        out.insert(out.end(), fc.begin(), fc.end());
    }
    return out;
}

}  // namespace detail

/// Minimal central left multiple: the monic hhat in F[x] of minimal degree
/// with hhat(t^n) = 0 mod_r f. Computed as the minimal polynomial over F of
/// the vector 1 under left multiplication by t^n on R/Rf.
inline CPoly mclm(const FieldTower& tw, const SPoly& f) {
    int m = f.deg();
    if (m < 1 || !sp_is_monic(tw, f))
        throw std::invalid_argument("mclm requires a monic polynomial of degree >= 1");
    if (f.coeffs[0].is_zero())
        throw std::domain_error("mclm: constant coefficient is zero, bound not central");
    // columns of T = L_{t^n} on the left-K-basis {1, ..., t^(m-1)}
    std::vector<std::vector<Felem>> T(m);
    for (int j = 0; j < m; ++j) {
        SPoly col = sp_mod(tw, sp_monomial(tw, tw.one(), tw.n() + j), f);
        col.coeffs.resize(m, tw.zero());
        T[j] = col.coeffs;
    }
    auto apply_T = [&](const std::vector<Felem>& v) {
        std::vector<Felem> out(m, tw.zero());
        for (int j = 0; j < m; ++j) {
            if (v[j].is_zero()) continue;
            for (int i = 0; i < m; ++i) out[i] = tw.add(out[i], tw.mul(v[j], T[j][i]));
        }
        return out;
    };
    // grow the Krylov space of the vector 1 over F, tracking polynomial labels
    int dim = m * tw.n();
    std::vector<std::vector<Felem>> rows;    // echelon rows in F^(m*n)
    std::vector<int> leads;
    std::vector<std::vector<Felem>> labels;  // polynomial giving each row
    std::vector<Felem> v(m, tw.zero());
    v[0] = tw.one();
    for (int k = 0;; ++k) {
        std::vector<Felem> flat = detail::flatten_F(tw, v);
        std::vector<Felem> label(static_cast<size_t>(k) + 1, tw.zero());
        label[k] = tw.one();
        // reduce against existing rows
        for (size_t i = 0; i < rows.size(); ++i) {
            Felem c = flat[leads[i]];
            if (c.is_zero()) continue;
            for (int j = 0; j < dim; ++j) flat[j] = tw.sub(flat[j], tw.mul(c, rows[i][j]));
            for (size_t j = 0; j < labels[i].size(); ++j)
                label[j] = tw.sub(label[j], tw.mul(c, labels[i][j]));
        }
        int lead = -1;
        for (int j = 0; j < dim; ++j)
            if (!flat[j].is_zero()) { lead = j; break; }
        if (lead < 0) return cp_make(tw, std::move(label));  // monic by construction
        Felem inv = tw.inv(flat[lead]);
        for (int j = 0; j < dim; ++j) flat[j] = tw.mul(inv, flat[j]);
        for (Felem& c : label) c = tw.mul(inv, c);
        rows.push_back(std::move(flat));
        leads.push_back(lead);
        labels.push_back(std::move(label));
        v = apply_T(v);
        if (k > dim) throw std::logic_error("mclm: no relation found");  // unreachable
    }
}

/// Finite-field irreducibility criterion: deg 1 is irreducible; a zero
/// constant coefficient (deg >= 2) means t divides f; otherwise f is
/// irreducible iff mclm(f) is irreducible in F[x] of degree deg(f).
inline bool is_irreducible(const FieldTower& tw, const SPoly& f) {
    int m = f.deg();
    if (m < 1 || !sp_is_monic(tw, f))
        throw std::invalid_argument("irreducibility test requires a monic polynomial");
    if (m == 1) return true;
    if (f.coeffs[0].is_zero()) return false;
    CPoly hhat = mclm(tw, f);
    return hhat.deg() == m && cp_irreducible(tw, hhat);
}

struct FactorCount {
    long long k = 0;   // number of irreducible factors of hhat(t^n) in R
    int m = 0;         // common degree of those factors
    SPoly factor;      // one monic irreducible right factor
};

/// For monic irreducible hhat: the factor data of h = hhat(t^n) in R, found
/// by a smallest-first scan over monic right divisors of increasing degree.
inline FactorCount factor_count(const FieldTower& tw, const CPoly& hhat) {
    if (!cp_is_monic(hhat) || !cp_irreducible(tw, hhat))
        throw std::invalid_argument("factor_count requires a monic irreducible polynomial in F[x]");
    SPoly h = inflate(tw, hhat);
    int dh = h.deg();
    for (int d = 1; d <= dh; ++d) {
        // candidates t^d + c_{d-1} t^(d-1) + ... + c_0, smallest ordinal tuple first
        std::vector<long long> ord(d, 0);
        while (true) {
            SPoly f;
            f.coeffs.reserve(d + 1);
            for (int i = 0; i < d; ++i) f.coeffs.push_back(tw.from_ordinal(ord[i]));
            f.coeffs.push_back(tw.one());
            if (sp_mod(tw, h, f).is_zero()) {
                // the first right divisor of minimal degree is irreducible
                return FactorCount{dh / d, d, std::move(f)};
            }
            int i = d - 1;
            while (i >= 0 && ord[i] == tw.order() - 1) ord[i--] = 0;
            if (i < 0) break;
            ++ord[i];
        }
    }
    throw std::logic_error("factor_count: no right divisor found");  // unreachable
}

/// Petit's right-invariance criterion for f = t^m - sum a_i t^i:
/// all a_i in F and a_i != 0 only where sigma^(m-i) = id.
inline bool right_invariant(const FieldTower& tw, const SPoly& f) {
    int m = f.deg();
    if (m < 1 || !sp_is_monic(tw, f))
        throw std::invalid_argument("right invariance test requires a monic polynomial");
    for (int i = 0; i < m; ++i) {
        const Felem& ai = f.coeffs[i];
        if (ai.is_zero()) continue;
        if (!tw.in_F(ai)) return false;
        if ((m - i) % tw.n() != 0) return false;  // sigma^m(d) != sigma^i(d) for some d
    }
    return true;
}

/// f^(alpha,tau) = N^sigma_m(alpha^-1) sum tau(a_i) N^sigma_i(alpha) t^i,
/// with tau the p^r-power Frobenius. Monic of the same degree.
inline SPoly g_transport(const FieldTower& tw, const SPoly& f, const Felem& alpha, int r) {
    if (alpha.is_zero()) throw std::domain_error("transport with alpha = 0");
    int m = f.deg();
    if (m < 0 || !sp_is_monic(tw, f))
        throw std::invalid_argument("transport requires a monic polynomial");
    Felem lead = tw.partial_sigma_norm(tw.inv(alpha), m);
    SPoly out;
    out.coeffs.assign(m + 1, tw.zero());
    for (int i = 0; i <= m; ++i) {
        if (f.coeffs[i].is_zero()) continue;
        Felem c = tw.mul(tw.frob(f.coeffs[i], r), tw.partial_sigma_norm(alpha, i));
        out.coeffs[i] = tw.mul(lead, c);
    }
    return sp_trim(std::move(out));
}

namespace detail {

/// F_p coordinates of a skew polynomial of degree < m (length m * h * n).
inline std::vector<int> sp_fp_coords(const FieldTower& tw, const SPoly& a, int m) {
    int d = tw.ext_degree();
    std::vector<int> v(static_cast<size_t>(m) * d, 0);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
        for (int j = 0; j < d; ++j) v[i * d + j] = a.coeffs[i].coeffs[j];
    return v;
}

inline SPoly sp_from_fp_coords(const FieldTower& tw, const std::vector<int>& v, int m) {
    int d = tw.ext_degree();
    SPoly a;
    a.coeffs.assign(m, tw.zero());
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < d; ++j) a.coeffs[i].coeffs[j] = v[static_cast<size_t>(i) * d + j];
    return sp_trim(std::move(a));
}

}  // namespace detail

/// Similarity witness: nonzero u with deg u < m and g u = 0 mod_r f, found as
/// a kernel vector of u -> (g u mod_r f). For irreducible equal-degree f and
/// g, any such u automatically has gcrd(f, u) = 1 (deg u < deg f and f
/// irreducible), so the gcrd/gcld characterization is not needed.
inline std::optional<SPoly> similar(const FieldTower& tw, const SPoly& f, const SPoly& g) {
    int m = f.deg();
    if (g.deg() != m) throw std::invalid_argument("similar: degrees differ");
    if (!is_irreducible(tw, f) || !is_irreducible(tw, g))
        throw std::invalid_argument("similar: inputs must be irreducible");
    int d = tw.ext_degree();
    int dim = m * d;
    FpMat M(tw.p(), dim, dim);
    for (int col = 0; col < dim; ++col) {
        // basis element gamma^(col mod d) t^(col / d)
        Felem c = tw.zero();
        c.coeffs[col % d] = 1;
        SPoly basis = sp_monomial(tw, c, col / d);
        SPoly img = sp_mod(tw, sp_mul(tw, g, basis), f);
        std::vector<int> v = detail::sp_fp_coords(tw, img, m);
        for (int row = 0; row < dim; ++row) M.at(row, col) = v[row];
    }
    std::vector<std::vector<int>> ker = M.kernel_basis();
    if (ker.empty()) return std::nullopt;
    SPoly u = detail::sp_from_fp_coords(tw, ker.front(), m);
    return u;
}

}  // namespace petitlab

#endif
