#ifndef PETITLAB_MRD_HPP
#define PETITLAB_MRD_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kmat.hpp"
#include "petit.hpp"
#include "util.hpp"

namespace petitlab {

/// Matrix of R_a: x -> x o_f a on the left-K-basis {1, t, ..., t^(m-1)};
/// column j is t^j o_f a.
inline KMat right_mult_matrix(const PetitAlgebra& a, const SPoly& z) {
    const FieldTower& tw = *a.tower;
    KMat M(tw, a.m, a.m);
    for (int j = 0; j < a.m; ++j) {
        SPoly col = petit_mul(a, sp_monomial(tw, tw.one(), j), z);
        for (int i = 0; i < a.m; ++i)
            M.at(i, j) = (i < static_cast<int>(col.coeffs.size())) ? col.coeffs[i] : tw.zero();
    }
    return M;
}

/// Spread-set code C = {R_a | a in S_f} in M_m(K), ordered by the element
/// ordinal of the indexing algebra element.
struct RankCode {
    int k = 0;                       // matrix size (= m)
    std::vector<KMat> codewords;     // indexed by petit_element ordinal
    std::vector<long long> rank_distribution;  // rank_distribution[r] = #codewords of rank r
    bool mrd = false;                // all nonzero codewords have full rank
};

inline RankCode spread_code(const PetitAlgebra& a) {
    const FieldTower& tw = *a.tower;
    RankCode code;
    code.k = a.m;
    code.rank_distribution.assign(a.m + 1, 0);
    long long size = a.size();
    code.codewords.assign(size, KMat());
    std::vector<int> ranks(size, 0);
    parallel_for(size, [&](long long o) {
        KMat M = right_mult_matrix(a, petit_element(a, o));
        ranks[o] = M.rank(tw);
        code.codewords[o] = std::move(M);
    });
    bool mrd = true;
    for (long long o = 0; o < size; ++o) {
        ++code.rank_distribution[ranks[o]];
        if (o != 0 && ranks[o] != a.m) mrd = false;
    }
    code.mrd = mrd;
    return code;
}

/// Context for the representation Psi: R/Rh -> M_k(B), B = Nuc_r(S_f),
/// h = hhat(t^n), with a fixed greedy right-B-basis of R/Rf.
struct PsiContext {
    const PetitAlgebra* algebra;
    CPoly hhat;
    SPoly h;
    long long k;                      // dim_B(R/Rf); k * [B:F] = m * n
    std::vector<SPoly> b_fbasis;      // F-basis of B
    std::vector<SPoly> b_fpbasis;     // F_p-basis of B
    std::vector<SPoly> module_basis;  // right-B-basis z_1..z_k of R/Rf
    FpMat coord_inv;                  // inverse of the B-coordinate matrix
    long long b_order;                // |B| = q^[B:F]
};

inline PsiContext make_psi_context(const PetitAlgebra& a) {
    const FieldTower& tw = *a.tower;
    if (!a.hhat) throw std::invalid_argument("psi context requires gcrd(f, t) = 1");
    PsiContext ctx;
    ctx.algebra = &a;
    ctx.hhat = *a.hhat;
    ctx.h = inflate(tw, ctx.hhat);
    RightNucleus nuc = right_nucleus(a);
    ctx.b_fbasis = nuc.basis;
    if ((static_cast<long long>(a.m) * tw.n()) % nuc.dim_F != 0)
        throw std::logic_error("nucleus dimension does not divide m*n");
    ctx.k = static_cast<long long>(a.m) * tw.n() / nuc.dim_F;
    ctx.b_order = 1;
    for (int i = 0; i < nuc.dim_F; ++i) ctx.b_order *= tw.q();
    for (const SPoly& b : ctx.b_fbasis)
        for (const Felem& fb : tw.F_basis()) ctx.b_fpbasis.push_back(sp_scale(tw, fb, b));

    // greedy right-B-basis over the standard F_p-basis elements of S_f
    int dim = a.m * tw.ext_degree();
    FpSpan span(tw.p(), dim);
    for (const SPoly& cand : petit_fp_basis(a)) {
        if (span.contains(detail::sp_fp_coords(tw, cand, a.m))) continue;
        ctx.module_basis.push_back(cand);
        for (const SPoly& b : ctx.b_fpbasis)
            span.add(detail::sp_fp_coords(tw, petit_mul(a, cand, b), a.m));
    }
    if (static_cast<long long>(ctx.module_basis.size()) != ctx.k)
        throw std::logic_error("right-B-basis has unexpected size");

    // coordinate matrix: column (i * |Bfp| + j) holds z_i o beta_j
    int nb = static_cast<int>(ctx.b_fpbasis.size());
    FpMat C(tw.p(), dim, static_cast<int>(ctx.k) * nb);
    for (long long i = 0; i < ctx.k; ++i)
        for (int j = 0; j < nb; ++j) {
            std::vector<int> v =
                detail::sp_fp_coords(tw, petit_mul(a, ctx.module_basis[i], ctx.b_fpbasis[j]), a.m);
            for (int row = 0; row < dim; ++row)
                C.at(row, static_cast<int>(i) * nb + j) = v[row];
        }
    auto inv = C.inverse();
    if (!inv) throw std::logic_error("B-coordinate matrix is singular");
    ctx.coord_inv = *inv;
    return ctx;
}

/// B-coordinates of an element of S_f in the module basis: v = sum z_i b_i.
inline std::vector<SPoly> b_coordinates(const PsiContext& ctx, const SPoly& v) {
    const PetitAlgebra& a = *ctx.algebra;
    const FieldTower& tw = *a.tower;
    std::vector<int> raw = ctx.coord_inv.apply(detail::sp_fp_coords(tw, v, a.m));
    int nb = static_cast<int>(ctx.b_fpbasis.size());
    std::vector<SPoly> out;
    out.reserve(ctx.k);
    for (long long i = 0; i < ctx.k; ++i) {
        SPoly b = sp_zero();
        for (int j = 0; j < nb; ++j) {
            int c = raw[static_cast<size_t>(i) * nb + j];
            if (c == 0) continue;
            SPoly term = ctx.b_fpbasis[j];
            term = sp_scale(tw, tw.from_int(c), term);
            b = sp_add(tw, b, term);
        }
        out.push_back(std::move(b));
    }
    return out;
}

/// k x k matrix over B with entries represented as elements of S_f lying in
/// the right nucleus. B is commutative here (finite base field).
struct BMat {
    long long k = 0;
    std::vector<SPoly> e;  // row-major

    SPoly& at(long long r, long long c) { return e[r * k + c]; }
    const SPoly& at(long long r, long long c) const { return e[r * k + c]; }
    bool operator==(const BMat& o) const { return k == o.k && e == o.e; }
};

inline BMat bmat_mul(const PsiContext& ctx, const BMat& x, const BMat& y) {
    const PetitAlgebra& a = *ctx.algebra;
    BMat r;
    r.k = x.k;
    r.e.assign(static_cast<size_t>(x.k) * x.k, sp_zero());
    for (long long i = 0; i < x.k; ++i)
        for (long long l = 0; l < x.k; ++l) {
            if (x.at(i, l).is_zero()) continue;
            for (long long j = 0; j < x.k; ++j)
                r.at(i, j) = sp_add(*a.tower, r.at(i, j),
                                    petit_mul(a, x.at(i, l), y.at(l, j)));
        }
    return r;
}

inline SPoly b_inverse(const PsiContext& ctx, const SPoly& b) {
    const PetitAlgebra& a = *ctx.algebra;
    SPoly r = sp_one(*a.tower), base = b;
    long long e = ctx.b_order - 2;
    while (e > 0) {
        if (e & 1) r = petit_mul(a, r, base);
        base = petit_mul(a, base, base);
        e >>= 1;
    }
    return r;
}

inline long long bmat_rank(const PsiContext& ctx, BMat m) {
    const PetitAlgebra& a = *ctx.algebra;
    const FieldTower& tw = *a.tower;
    long long rank = 0;
    for (long long c = 0; c < m.k && rank < m.k; ++c) {
        long long sel = -1;
        for (long long i = rank; i < m.k; ++i)
            if (!m.at(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        for (long long j = 0; j < m.k; ++j) std::swap(m.at(sel, j), m.at(rank, j));
        SPoly inv = b_inverse(ctx, m.at(rank, c));
        for (long long j = 0; j < m.k; ++j) m.at(rank, j) = petit_mul(a, inv, m.at(rank, j));
        for (long long i = 0; i < m.k; ++i) {
            if (i == rank || m.at(i, c).is_zero()) continue;
            SPoly f = m.at(i, c);
            for (long long j = 0; j < m.k; ++j)
                m.at(i, j) = sp_sub(tw, m.at(i, j), petit_mul(a, f, m.at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

/// Psi(a + Rh): the matrix of left multiplication L_a on R/Rf in the fixed
/// right-B-basis. Ring homomorphism: Psi(a)Psi(b) = Psi(ab mod_r h).
inline BMat psi_matrix(const PsiContext& ctx, const SPoly& a_in) {
    const PetitAlgebra& alg = *ctx.algebra;
    const FieldTower& tw = *alg.tower;
    SPoly a = sp_mod(tw, a_in, ctx.h);
    BMat M;
    M.k = ctx.k;
    M.e.assign(static_cast<size_t>(ctx.k) * ctx.k, sp_zero());
    for (long long col = 0; col < ctx.k; ++col) {
        SPoly img = sp_mod(tw, sp_mul(tw, a, ctx.module_basis[col]), alg.f);
        std::vector<SPoly> coords = b_coordinates(ctx, img);
        for (long long row = 0; row < ctx.k; ++row) M.at(row, col) = coords[row];
    }
    return M;
}

/// colrank(Psi(a)) = k - deg(gcrd(a, h)) / m; rank 0 when a = 0 mod h.
inline long long rank_via_gcrd(const PsiContext& ctx, const SPoly& a_in) {
    const FieldTower& tw = *ctx.algebra->tower;
    SPoly a = sp_mod(tw, a_in, ctx.h);
    if (a.is_zero()) return 0;
    SPoly g = gcrd(tw, a, ctx.h);
    int dg = g.is_zero() ? 0 : g.deg();
    if (dg % ctx.algebra->m != 0) throw std::logic_error("gcrd degree not a multiple of m");
    return ctx.k - dg / ctx.algebra->m;
}

inline KMat companion_matrix(const FieldTower& tw, const SPoly& f) {
    int m = f.deg();
    KMat A(tw, m, m);
    for (int i = 1; i < m; ++i) A.at(i, i - 1) = tw.one();
    for (int i = 0; i < m; ++i) A.at(i, m - 1) = tw.neg(f.coeffs[i]);
    return A;
}

/// Solves the sigma-semilinear system A_f B = B^sigma A_g for invertible B
/// over K by F_p-linearization; the kernel space is searched smallest-first.
inline std::optional<KMat> companion_similarity(const FieldTower& tw, const SPoly& f,
                                                const SPoly& g) {
    int m = f.deg();
    if (g.deg() != m || !sp_is_monic(tw, f) || !sp_is_monic(tw, g))
        throw std::invalid_argument("companion_similarity: monic equal-degree inputs required");
    KMat Af = companion_matrix(tw, f);
    KMat Ag = companion_matrix(tw, g);
    int d = tw.ext_degree();
    int nvar = m * m * d;
    // unknown B entries: variable index ((i * m) + j) * d + b for gamma^b in B_ij
    FpMat M(tw.p(), nvar, nvar);
    int row_base = 0;
    for (int col = 0; col < nvar; ++col) {
        KMat B(tw, m, m);
        Felem c = tw.zero();
        c.coeffs[col % d] = 1;
        B.at((col / d) / m, (col / d) % m) = c;
        KMat lhs = Af.mul(tw, B);
        KMat rhs = B.frob(tw, tw.h() * tw.sigma_exp() % d).mul(tw, Ag);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) {
                Felem diff = tw.sub(lhs.at(i, j), rhs.at(i, j));
                for (int b = 0; b < d; ++b)
                    M.at(row_base + (i * m + j) * d + b, col) = diff.coeffs[b];
            }
    }
    std::vector<std::vector<int>> ker = M.kernel_basis();
    if (ker.empty()) return std::nullopt;
    // enumerate F_p-combinations of the kernel basis, smallest first
    size_t kd = ker.size();
    long long space = 1;
    for (size_t i = 0; i < kd; ++i) {
        space *= tw.p();
        if (space > (1LL << 22))
            throw std::domain_error("companion_similarity: kernel too large to search");
    }
    for (long long o = 1; o < space; ++o) {
        long long oo = o;
        std::vector<int> v(nvar, 0);
        for (size_t i = 0; i < kd; ++i) {
            int c = static_cast<int>(oo % tw.p());
            oo /= tw.p();
            if (c == 0) continue;
            for (int j = 0; j < nvar; ++j) v[j] = (v[j] + c * ker[i][j]) % tw.p();
        }
        KMat B(tw, m, m);
        for (int idx = 0; idx < nvar; ++idx)
            B.at((idx / d) / m, (idx / d) % m).coeffs[idx % d] = v[idx];
        if (B.invertible(tw)) return B;
    }
    return std::nullopt;
}

/// Code equivalence certificate: codeword M of C(A_g) maps to
/// X * M^(p^r) * Y, which must land in C(A_f).
struct Certificate {
    KMat X;
    int r = 0;
    KMat Y;

    KMat apply(const FieldTower& tw, const KMat& M) const {
        return X.mul(tw, M.frob(tw, r)).mul(tw, Y);
    }
};

/// A path connecting f to g: an optional G-transport (alpha, r) taking f to
/// f' = f^(alpha,tau_r), then an optional similarity witness u for (f', g).
struct EquivalencePath {
    std::optional<std::pair<Felem, int>> transport;
    std::optional<SPoly> witness;
};

struct EquivalenceResult {
    Certificate cert;
    bool verified = false;           // every checked codeword of C(A_g) maps into C(A_f)
    bool sampled = false;            // verification ran on a strided sample, not all codewords
    bool rank_distribution_match = false;
};

/// True iff M is a codeword of the spread code of `af`. Column 0 of R_a is
/// 1 o a = a, so the candidate preimage can be read off directly.
inline bool codeword_of(const PetitAlgebra& af, const KMat& M) {
    const FieldTower& tw = *af.tower;
    if (M.rows() != af.m || M.cols() != af.m) return false;
    SPoly x;
    x.coeffs.assign(af.m, tw.zero());
    for (int i = 0; i < af.m; ++i) x.coeffs[i] = M.at(i, 0);
    return right_mult_matrix(af, sp_trim(std::move(x))) == M;
}

/// Builds and verifies the certificate mapping C(A_g) into C(A_f) along the
/// path. For a similarity step X = H, Y = H^-1 with H the witness isotopy;
/// for a transport step the semilinear change of basis is
/// diag(N^sigma_i(alpha)) with entrywise tau. The map is invertible, so
/// membership of every image already gives a bijection of the codes.
/// sample_cap > 0 limits verification to a strided sample of that size.
inline EquivalenceResult equivalence_certificate(const PetitAlgebra& af, const PetitAlgebra& ag,
                                                 const EquivalencePath& path,
                                                 long long sample_cap = 0) {
    const FieldTower& tw = *af.tower;
    int m = af.m;
    if (ag.m != m) throw std::invalid_argument("equivalence_certificate: degrees differ");
    int d = tw.ext_degree();

    SPoly fprime = af.f;
    KMat D = KMat::identity(tw, m);
    int tr = 0;
    if (path.transport) {
        const auto& [alpha, r] = *path.transport;
        fprime = g_transport(tw, af.f, alpha, r);
        tr = ((r % d) + d) % d;
        for (int i = 0; i < m; ++i) D.at(i, i) = tw.partial_sigma_norm(alpha, i);
    }
    PetitAlgebra aprime = make_petit(tw, fprime);

    // similarity step: H o R^g_z = R^f'_{H(z)}, so M -> M_H * M maps
    // C(A_g) onto C(A_f')
    KMat X = KMat::identity(tw, m);
    if (path.witness) {
        const SPoly& u = *path.witness;
        if (u.is_zero() || !sp_mod(tw, sp_mul(tw, ag.f, u), fprime).is_zero())
            throw std::invalid_argument("equivalence_certificate: invalid witness for the path");
        LinearMap H = isotopy_from_witness(aprime, ag, u);
        X = H.mat;
        if (!X.invertible(tw))
            throw std::invalid_argument("equivalence_certificate: witness map not invertible");
    } else if (!(ag.f == fprime)) {
        throw std::invalid_argument("equivalence_certificate: path does not connect f to g");
    }

    // transport step maps C(A_f) onto C(A_f') by M -> D M^tau D^-1; composing
    // its inverse: M -> (D^-1 X M D)^(tau^-1)
    Certificate cert;
    int rinv = (d - tr) % d;
    KMat Dinv = *D.inverse(tw);
    cert.X = Dinv.mul(tw, X).frob(tw, rinv);
    cert.Y = D.frob(tw, rinv);
    cert.r = rinv;

    EquivalenceResult res;
    long long size = af.size();
    long long stride = 1;
    if (sample_cap > 0 && size > sample_cap) {
        stride = (size + sample_cap - 1) / sample_cap;
        res.sampled = true;
    }
    long long checked = (size + stride - 1) / stride;
    std::vector<char> ok(checked, 0);
    std::vector<int> rf(checked, 0), rg(checked, 0);
    parallel_for(checked, [&](long long i) {
        long long o = i * stride;
        KMat M = right_mult_matrix(ag, petit_element(ag, o));
        rg[i] = M.rank(tw);
        rf[i] = right_mult_matrix(af, petit_element(af, o)).rank(tw);
        ok[i] = codeword_of(af, cert.apply(tw, M)) ? 1 : 0;
    });
    std::map<int, long long> cf_ranks, cg_ranks;
    bool all_ok = true;
    for (long long i = 0; i < checked; ++i) {
        if (!ok[i]) all_ok = false;
        ++cf_ranks[rf[i]];
        ++cg_ranks[rg[i]];
    }
    res.verified = all_ok;
    res.rank_distribution_match = cf_ranks == cg_ranks;
    res.cert = std::move(cert);
    return res;
}

}  // namespace petitlab

#endif
