#ifndef PETITLAB_PETIT_HPP
#define PETITLAB_PETIT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmat.hpp"
#include "skew.hpp"

namespace petitlab {

/// S_f = R/Rf: polynomials of degree < m with g o h = g h mod_r f.
struct PetitAlgebra {
    const FieldTower* tower;
    SPoly f;                       // monic, degree m >= 2
    int m;
    std::optional<CPoly> hhat;     // mclm(f), absent when gcrd(f, t) != 1
    bool is_division;
    bool is_right_invariant;

    long long size() const {
        long long s = 1;
        for (int i = 0; i < m; ++i) s *= tower->order();
        return s;
    }
};

inline PetitAlgebra make_petit(const FieldTower& tw, const SPoly& f_in) {
    SPoly f = sp_monic(tw, f_in);
    if (f.deg() < 2) throw std::invalid_argument("Petit algebra requires deg f >= 2");
    PetitAlgebra a;
    a.tower = &tw;
    a.f = f;
    a.m = f.deg();
    if (!f.coeffs[0].is_zero()) a.hhat = mclm(tw, f);
    a.is_division = is_irreducible(tw, f);
    a.is_right_invariant = right_invariant(tw, f);
    return a;
}

inline SPoly petit_mul(const PetitAlgebra& a, const SPoly& z, const SPoly& w) {
    return sp_mod(*a.tower, sp_mul(*a.tower, z, w), a.f);
}

/// Elements of S_f enumerated by ordinal: coefficient of t^i is the base-|K|
/// digit i of o.
inline SPoly petit_element(const PetitAlgebra& a, long long o) {
    const FieldTower& tw = *a.tower;
    SPoly z;
    z.coeffs.assign(a.m, tw.zero());
    for (int i = 0; i < a.m; ++i) {
        z.coeffs[i] = tw.from_ordinal(o % tw.order());
        o /= tw.order();
    }
    return sp_trim(std::move(z));
}

inline long long petit_ordinal(const PetitAlgebra& a, const SPoly& z) {
    const FieldTower& tw = *a.tower;
    long long o = 0;
    for (int i = a.m - 1; i >= 0; --i) {
        long long c = (i < static_cast<int>(z.coeffs.size())) ? tw.ordinal(z.coeffs[i]) : 0;
        o = o * tw.order() + c;
    }
    return o;
}

/// F_p-basis of S_f: gamma^b t^i ordered by (i, b).
inline std::vector<SPoly> petit_fp_basis(const PetitAlgebra& a) {
    const FieldTower& tw = *a.tower;
    std::vector<SPoly> basis;
    basis.reserve(static_cast<size_t>(a.m) * tw.ext_degree());
    for (int i = 0; i < a.m; ++i)
        for (int b = 0; b < tw.ext_degree(); ++b) {
            Felem c = tw.zero();
            c.coeffs[b] = 1;
            basis.push_back(sp_monomial(tw, c, i));
        }
    return basis;
}

struct RightNucleus {
    std::vector<SPoly> basis;  // F-basis
    int dim_F;
    bool associative;          // set when Nuc_r is the whole algebra
};

/// Solves f g = 0 mod_r f over g of degree < m. Returns an F-basis extracted
/// greedily from the F_p-kernel.
inline RightNucleus right_nucleus(const PetitAlgebra& a) {
    const FieldTower& tw = *a.tower;
    int d = tw.ext_degree();
    int dim = a.m * d;
    FpMat M(tw.p(), dim, dim);
    for (int col = 0; col < dim; ++col) {
        Felem c = tw.zero();
        c.coeffs[col % d] = 1;
        SPoly g = sp_monomial(tw, c, col / d);
        SPoly img = sp_mod(tw, sp_mul(tw, a.f, g), a.f);
        std::vector<int> v = detail::sp_fp_coords(tw, img, a.m);
        for (int row = 0; row < dim; ++row) M.at(row, col) = v[row];
    }
    std::vector<std::vector<int>> ker = M.kernel_basis();
    RightNucleus out;
    out.associative = static_cast<int>(ker.size()) == dim;
    out.dim_F = static_cast<int>(ker.size()) / tw.h();
    // greedy F-basis: adjoin kernel vectors whose F-span grows
    FpSpan span(tw.p(), dim);
    for (const auto& kv : ker) {
        if (span.contains(kv)) continue;
        SPoly g = detail::sp_from_fp_coords(tw, kv, a.m);
        out.basis.push_back(g);
        for (const Felem& fb : tw.F_basis()) {
            SPoly scaled = sp_scale(tw, fb, g);
            span.add(detail::sp_fp_coords(tw, scaled, a.m));
        }
    }
    return out;
}

/// A left-K-linear-after-twist map w -> M * tau_r(vec w) between Petit
/// algebras of equal degree. tau_r = 0 means plain left-K-linear.
struct LinearMap {
    KMat mat;
    int tau_r = 0;

    SPoly apply(const FieldTower& tw, const SPoly& z, int m) const {
        std::vector<Felem> v(m, tw.zero());
        for (size_t i = 0; i < z.coeffs.size(); ++i) v[i] = tw.frob(z.coeffs[i], tau_r);
        std::vector<Felem> out = mat.apply(tw, v);
        SPoly r;
        r.coeffs = std::move(out);
        return sp_trim(std::move(r));
    }
};

/// H(w) = w o_f u for a similarity witness u of (f, g); the triple
/// (id, H, H) is an isotopy S_g -> S_f.
inline LinearMap isotopy_from_witness(const PetitAlgebra& af, const PetitAlgebra& ag,
                                      const SPoly& u) {
    const FieldTower& tw = *af.tower;
    if (af.m != ag.m) throw std::invalid_argument("isotopy_from_witness: degrees differ");
    if (!af.is_division || !ag.is_division)
        throw std::invalid_argument("isotopy_from_witness: inputs must be division algebras");
    if (u.is_zero() || !sp_mod(tw, sp_mul(tw, ag.f, u), af.f).is_zero())
        throw std::invalid_argument("isotopy_from_witness: invalid witness");
    KMat H(tw, af.m, af.m);
    for (int j = 0; j < af.m; ++j) {
        SPoly col = petit_mul(af, sp_monomial(tw, tw.one(), j), u);
        for (int i = 0; i < af.m; ++i)
            H.at(i, j) = (i < static_cast<int>(col.coeffs.size())) ? col.coeffs[i] : tw.zero();
    }
    return LinearMap{std::move(H), 0};
}

/// The tau_r-semilinear isomorphism S_f -> S_{f'} induced by G_{tau,alpha},
/// f' = g_transport(f, alpha, r): sum b_i t^i -> sum tau(b_i) (alpha t)^i.
inline LinearMap algebra_isomorphism_from_G(const PetitAlgebra& af, const Felem& alpha, int r) {
    const FieldTower& tw = *af.tower;
    if (alpha.is_zero()) throw std::domain_error("isomorphism with alpha = 0");
    KMat D(tw, af.m, af.m);
    for (int i = 0; i < af.m; ++i) D.at(i, i) = tw.partial_sigma_norm(alpha, i);
    return LinearMap{std::move(D), static_cast<int>(((r % tw.ext_degree()) + tw.ext_degree()) %
                                                    tw.ext_degree())};
}

enum class SandlerStatus { Found, NotFound, HypothesisError };

struct SandlerResult {
    SandlerStatus status;
    Felem alpha;
    int r = 0;
    std::string reason;  // set on HypothesisError
};

/// Searches (alpha, r) with d = tau_r(c) / N^sigma_m(alpha); on success the
/// transport of t^m - c is t^m - d and algebra_isomorphism_from_G gives the
/// isomorphism.
inline SandlerResult sandler_isomorphic(const FieldTower& tw, const Felem& c, const Felem& d,
                                        int m) {
    SandlerResult res{SandlerStatus::HypothesisError, tw.zero(), 0, ""};
    if (m < 2 || tw.n() < m) {
        res.reason = "requires 2 <= m <= n";
        return res;
    }
    SPoly f = sp_monomial(tw, tw.one(), m);
    f = sp_sub(tw, f, sp_const(c));
    SPoly g = sp_monomial(tw, tw.one(), m);
    g = sp_sub(tw, g, sp_const(d));
    if (!is_irreducible(tw, f) || !is_irreducible(tw, g)) {
        res.reason = "t^m - c or t^m - d is reducible";
        return res;
    }
    if (tw.n() > m) {
        if (tw.in_F(c)) {
            res.reason = "n > m requires c outside F";
            return res;
        }
    } else {  // n == m
        if (tw.in_proper_subfield(c)) {
            res.reason = "n = m requires c in no proper subfield of K";
            return res;
        }
    }
    for (long long o = 1; o < tw.order(); ++o) {
        Felem alpha = tw.from_ordinal(o);
        Felem nm_inv = tw.inv(tw.partial_sigma_norm(alpha, m));
        for (int r = 0; r < tw.ext_degree(); ++r) {
            if (tw.mul(tw.frob(c, r), nm_inv) == d)
                return SandlerResult{SandlerStatus::Found, alpha, r, ""};
        }
    }
    res.status = SandlerStatus::NotFound;
    res.reason.clear();
    return res;
}

}  // namespace petitlab

#endif
