#include <catch_amalgamated.hpp>

#include "petitlab.hpp"

using namespace petitlab;

namespace {

SPoly t2c(const FieldTower& tw, const Felem& c) {
    return sp_sub(tw, sp_monomial(tw, tw.one(), 2), c.is_zero() ? sp_zero() : sp_const(c));
}

std::vector<SPoly> irreducible_monic(const FieldTower& tw, int m) {
    std::vector<SPoly> out;
    long long total = 1;
    for (int i = 0; i < m; ++i) total *= tw.order();
    for (long long o = 0; o < total; ++o) {
        SPoly f;
        f.coeffs.assign(m + 1, tw.zero());
        long long oo = o;
        for (int i = 0; i < m; ++i) {
            f.coeffs[i] = tw.from_ordinal(oo % tw.order());
            oo /= tw.order();
        }
        f.coeffs[m] = tw.one();
        if (is_irreducible(tw, f)) out.push_back(std::move(f));
    }
    return out;
}

}  // namespace

TEST_CASE("right multiplication matrices") {
    FieldTower tw(2, 1, 2, 1);
    Felem w = tw.generator();
    PetitAlgebra a = make_petit(tw, t2c(tw, w));
    CHECK(right_mult_matrix(a, sp_one(tw)) == KMat::identity(tw, 2));
    CHECK(right_mult_matrix(a, sp_zero()) == KMat(tw, 2, 2));
    KMat Rt = right_mult_matrix(a, sp_t(tw));
    // 1 o t = t, t o t = w: columns (0,1) and (w,0)
    CHECK(Rt.at(0, 0) == tw.zero());
    CHECK(Rt.at(1, 0) == tw.one());
    CHECK(Rt.at(0, 1) == w);
    CHECK(Rt.at(1, 1) == tw.zero());
}

TEST_CASE("spread code of the order-16 semifield is MRD") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra a = make_petit(tw, t2c(tw, tw.generator()));
    RankCode code = spread_code(a);
    CHECK(code.k == 2);
    CHECK(code.codewords.size() == 16);
    CHECK(code.mrd);
    CHECK(code.rank_distribution == std::vector<long long>{1, 0, 15});
    // F_2-linearity: R_{a+b} = R_a + R_b
    for (long long i = 0; i < 16; ++i)
        for (long long j = 0; j < 16; ++j) {
            SPoly sum = sp_add(tw, petit_element(a, i), petit_element(a, j));
            KMat expect = right_mult_matrix(a, sum);
            const KMat& A = code.codewords[i];
            const KMat& B = code.codewords[j];
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    CHECK(expect.at(r, c) == tw.add(A.at(r, c), B.at(r, c)));
        }
}

TEST_CASE("reducible f gives a singular nonzero codeword") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra a = make_petit(tw, t2c(tw, tw.one()));
    RankCode code = spread_code(a);
    CHECK(!code.mrd);
    CHECK(code.rank_distribution[1] > 0);
}

TEST_CASE("psi context for the worked example") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra a = make_petit(tw, t2c(tw, tw.generator()));
    PsiContext ctx = make_psi_context(a);
    CHECK(ctx.k == 2);
    CHECK(ctx.b_order == 4);
    CHECK(ctx.h.deg() == 4);
    CHECK(print_skew(tw, ctx.h) == "t^4 + t^2 + 1");
    // psi(1) = identity, psi(h) = 0
    BMat id = psi_matrix(ctx, sp_one(tw));
    for (long long i = 0; i < ctx.k; ++i)
        for (long long j = 0; j < ctx.k; ++j)
            CHECK(id.at(i, j) == (i == j ? sp_one(tw) : sp_zero()));
    BMat zero = psi_matrix(ctx, ctx.h);
    for (const SPoly& e : zero.e) CHECK(e.is_zero());
    CHECK(bmat_rank(ctx, id) == 2);
    // context requires gcrd(f, t) = 1
    PetitAlgebra bad = make_petit(tw, sp_monomial(tw, tw.one(), 2));
    CHECK_THROWS_AS(make_psi_context(bad), std::invalid_argument);
}

TEST_CASE("psi is a ring homomorphism") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra alg = make_petit(tw, t2c(tw, tw.generator()));
    PsiContext ctx = make_psi_context(alg);
    // full residue enumeration mod h (degree < 4 over F_4)
    auto residue = [&](long long o) {
        SPoly z;
        z.coeffs.assign(4, tw.zero());
        for (int i = 0; i < 4; ++i) {
            z.coeffs[i] = tw.from_ordinal(o % tw.order());
            o /= tw.order();
        }
        return sp_trim(std::move(z));
    };
    for (long long i = 0; i < 256; i += 7)
        for (long long j = 0; j < 256; j += 5) {
            SPoly x = residue(i), y = residue(j);
            BMat lhs = bmat_mul(ctx, psi_matrix(ctx, x), psi_matrix(ctx, y));
            BMat rhs = psi_matrix(ctx, sp_mod(tw, sp_mul(tw, x, y), ctx.h));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("rank formula over all nonzero residues") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra alg = make_petit(tw, t2c(tw, tw.generator()));
    PsiContext ctx = make_psi_context(alg);
    for (long long o = 1; o < 256; ++o) {
        SPoly z;
        z.coeffs.assign(4, tw.zero());
        long long oo = o;
        for (int i = 0; i < 4; ++i) {
            z.coeffs[i] = tw.from_ordinal(oo % tw.order());
            oo /= tw.order();
        }
        z = sp_trim(std::move(z));
        CHECK(bmat_rank(ctx, psi_matrix(ctx, z)) == rank_via_gcrd(ctx, z));
    }
    // worked values: rank(psi(f)) = k - 1, rank(psi(t)) = k
    CHECK(rank_via_gcrd(ctx, alg.f) == 1);
    CHECK(rank_via_gcrd(ctx, sp_t(tw)) == 2);
    CHECK(rank_via_gcrd(ctx, ctx.h) == 0);
}

TEST_CASE("companion matrix and similarity") {
    FieldTower tw(2, 1, 2, 1);
    Felem w = tw.generator();
    SPoly f = t2c(tw, w);
    SPoly g = t2c(tw, tw.mul(w, w));
    KMat Af = companion_matrix(tw, f);
    CHECK(Af.at(1, 0) == tw.one());
    CHECK(Af.at(0, 1) == w);  // -(-w) over characteristic 2
    // f = g: identity solves the system
    auto Bid = companion_similarity(tw, f, f);
    REQUIRE(Bid.has_value());
    CHECK(Bid->invertible(tw));
    // similar pair: a solution exists and satisfies A_f B = B^sigma A_g
    auto B = companion_similarity(tw, f, g);
    REQUIRE(B.has_value());
    KMat Ag = companion_matrix(tw, g);
    int sig = tw.h() * tw.sigma_exp() % tw.ext_degree();
    CHECK(Af.mul(tw, *B) == B->frob(tw, sig).mul(tw, Ag));
    CHECK_THROWS_AS(companion_similarity(tw, f, sp_t(tw)), std::invalid_argument);
}

TEST_CASE("companion solvability agrees with similarity") {
    FieldTower tw(2, 1, 2, 1);
    std::vector<SPoly> irr = irreducible_monic(tw, 2);
    int sig = tw.h() * tw.sigma_exp() % tw.ext_degree();
    for (const SPoly& f : irr)
        for (const SPoly& g : irr) {
            auto B = companion_similarity(tw, f, g);
            auto u = similar(tw, f, g);
            CHECK(B.has_value() == u.has_value());
            if (B)
                CHECK(companion_matrix(tw, f).mul(tw, *B) ==
                      B->frob(tw, sig).mul(tw, companion_matrix(tw, g)));
        }
}

TEST_CASE("codeword membership test") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra a = make_petit(tw, t2c(tw, tw.generator()));
    for (long long o = 0; o < a.size(); ++o)
        CHECK(codeword_of(a, right_mult_matrix(a, petit_element(a, o))));
    KMat notword(tw, 2, 2);
    notword.at(0, 0) = tw.one();  // E_11 is not a right multiplication
    CHECK(!codeword_of(a, notword));
}

TEST_CASE("equivalence certificate for a trivial path") {
    FieldTower tw(2, 1, 2, 1);
    PetitAlgebra a = make_petit(tw, t2c(tw, tw.generator()));
    EquivalenceResult res = equivalence_certificate(a, a, EquivalencePath{});
    CHECK(res.verified);
    CHECK(!res.sampled);
    CHECK(res.rank_distribution_match);
    CHECK(res.cert.r == 0);
    CHECK(res.cert.X == KMat::identity(tw, 2));
    CHECK(res.cert.Y == KMat::identity(tw, 2));
}

TEST_CASE("equivalence certificate for a similarity step") {
    FieldTower tw(2, 1, 2, 1);
    Felem w = tw.generator();
    PetitAlgebra af = make_petit(tw, t2c(tw, w));
    PetitAlgebra ag = make_petit(tw, t2c(tw, tw.mul(w, w)));
    EquivalencePath path;
    path.witness = *similar(tw, af.f, ag.f);
    EquivalenceResult res = equivalence_certificate(af, ag, path);
    CHECK(res.verified);
    CHECK(res.rank_distribution_match);
    // every image is a codeword of C(A_f)
    for (long long o = 0; o < ag.size(); ++o) {
        KMat M = right_mult_matrix(ag, petit_element(ag, o));
        CHECK(codeword_of(af, res.cert.apply(tw, M)));
    }
    // invalid path rejected
    EquivalencePath bad;
    bad.witness = sp_one(tw);
    CHECK_THROWS_AS(equivalence_certificate(af, ag, bad), std::invalid_argument);
    CHECK_THROWS_AS(equivalence_certificate(af, ag, EquivalencePath{}), std::invalid_argument);
}

TEST_CASE("equivalence certificate for transport plus witness") {
    FieldTower tw(3, 1, 2, 1);
    ClassificationReport rep = classify(tw, 2);
    REQUIRE(rep.ok);
    REQUIRE(rep.orbits.size() == 2);
    const OrbitRecord& orb = rep.orbits[1];
    REQUIRE(orb.members.size() == 2);
    PetitAlgebra af = make_petit(tw, orb.rep_f);
    PetitAlgebra ag = make_petit(tw, orb.member_factors[1]);
    EquivalencePath path;
    Felem alpha = tw.norm_preimage(orb.reach[1].lambda);
    path.transport = {alpha, orb.reach[1].r};
    SPoly fprime = g_transport(tw, af.f, alpha, orb.reach[1].r);
    path.witness = *similar(tw, fprime, ag.f);
    EquivalenceResult res = equivalence_certificate(af, ag, path);
    CHECK(res.verified);
    CHECK(res.rank_distribution_match);
}
