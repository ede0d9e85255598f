#include <catch_amalgamated.hpp>

#include "petitlab.hpp"

using namespace petitlab;

namespace {

CPoly P(const FieldTower& tw, std::initializer_list<int> cs) {
    std::vector<Felem> v;
    for (int c : cs) v.push_back(tw.from_int(c));
    return cp_make(tw, std::move(v));
}

}  // namespace

TEST_CASE("group law and inverses") {
    FieldTower tw(3, 1, 2, 1);
    std::vector<GroupElement> G = group_elements(tw);
    CHECK(static_cast<long long>(G.size()) == group_order(tw));
    CHECK(group_order(tw) == (tw.q() - 1) * tw.h() * tw.n());
    GroupElement e = group_identity(tw);
    auto eq = [](const GroupElement& a, const GroupElement& b) {
        return a.lambda == b.lambda && a.r == b.r;
    };
    for (const GroupElement& g : G) {
        CHECK(eq(group_mul(tw, g, e), g));
        CHECK(eq(group_mul(tw, e, g), g));
        CHECK(eq(group_mul(tw, g, group_inv(tw, g)), e));
        CHECK(eq(group_mul(tw, group_inv(tw, g), g), e));
        for (const GroupElement& h : G)
            for (const GroupElement& k : G)
                CHECK(eq(group_mul(tw, group_mul(tw, g, h), k),
                         group_mul(tw, g, group_mul(tw, h, k))));
    }
}

TEST_CASE("the action is a right action") {
    FieldTower tw(3, 1, 2, 1);
    std::vector<GroupElement> G = group_elements(tw);
    std::vector<CPoly> polys = irreducible_polys(tw, 2);
    for (const CPoly& f : polys) {
        CHECK(act(tw, f, group_identity(tw)) == f);
        for (const GroupElement& g1 : G)
            for (const GroupElement& g2 : G)
                CHECK(act(tw, act(tw, f, g1), g2) == act(tw, f, group_compose(tw, g1, g2)));
    }
}

TEST_CASE("action preserves monic irreducible of fixed degree") {
    FieldTower tw(2, 2, 2, 1);  // q = 4
    for (const CPoly& f : irreducible_polys(tw, 2))
        for (const GroupElement& g : group_elements(tw)) {
            CPoly img = act(tw, f, g);
            CHECK(cp_is_monic(img));
            CHECK(img.deg() == 2);
            CHECK(cp_irreducible(tw, img));
        }
    CHECK_THROWS_AS(act(tw, irreducible_polys(tw, 2)[0], GroupElement{tw.zero(), 0}),
                    std::domain_error);
}

TEST_CASE("worked action example over F_3") {
    FieldTower tw(3, 1, 2, 1);
    // (lambda = 2, r = 0): x^2 + x + 2 -> x^2 + 2x + 2
    CPoly f = P(tw, {2, 1, 1});
    CPoly img = act(tw, f, GroupElement{tw.from_int(2), 0});
    CHECK(img == P(tw, {2, 2, 1}));
    // applying again returns (lambda^2 = 1)
    CHECK(act(tw, img, GroupElement{tw.from_int(2), 0}) == f);
}

TEST_CASE("moebius counting") {
    CHECK(moebius_mu(1) == 1);
    CHECK(moebius_mu(2) == -1);
    CHECK(moebius_mu(4) == 0);
    CHECK(moebius_mu(6) == 1);
    CHECK(moebius_count(2, 1) == 2);
    CHECK(moebius_count(2, 2) == 1);
    CHECK(moebius_count(2, 3) == 2);
    CHECK(moebius_count(3, 2) == 3);
    CHECK(moebius_count(4, 3) == 20);
    CHECK(moebius_count(5, 2) == 10);
    CHECK_THROWS_AS(moebius_count(2, 0), std::invalid_argument);
}

TEST_CASE("orbit decomposition over F_3") {
    FieldTower tw(3, 1, 2, 1);
    OrbitReport rep = orbit_decomposition(tw, 2);
    CHECK(rep.total == 3);
    REQUIRE(rep.orbits.size() == 2);
    CHECK(rep.orbits[0].canonical == P(tw, {1, 0, 1}));  // x^2 + 1
    CHECK(rep.orbits[0].size == 1);
    CHECK(rep.orbits[0].stabilizer_order == group_order(tw));
    CHECK(rep.orbits[1].canonical == P(tw, {2, 1, 1}));  // x^2 + x + 2
    CHECK(rep.orbits[1].size == 2);
    REQUIRE(rep.orbits[1].members.size() == 2);
    CHECK(rep.orbits[1].members[0] == P(tw, {2, 1, 1}));
    CHECK(rep.orbits[1].members[1] == P(tw, {2, 2, 1}));
    // transport bookkeeping
    for (const Orbit& orb : rep.orbits)
        for (size_t i = 0; i < orb.members.size(); ++i)
            CHECK(act(tw, orb.canonical, orb.reach[i]) == orb.members[i]);
}

TEST_CASE("orbit sizes divide the group order and sum to N") {
    for (auto [p, h, n, m] : {std::tuple{2, 1, 2, 2}, {2, 1, 2, 3}, {3, 1, 2, 2},
                              {3, 1, 3, 2}, {2, 2, 2, 2}, {5, 1, 2, 2}}) {
        FieldTower tw(p, h, n, 1);
        OrbitReport rep = orbit_decomposition(tw, m);
        long long sum = 0;
        for (const Orbit& orb : rep.orbits) {
            CHECK(group_order(tw) % orb.size == 0);
            CHECK(orb.stabilizer_order * orb.size == group_order(tw));
            sum += orb.size;
        }
        CHECK(sum == moebius_count(tw.q(), m));
    }
}

TEST_CASE("fixed point formula matches brute force") {
    for (auto [p, h, n, m] : {std::tuple{2, 1, 2, 2}, {2, 1, 2, 3}, {3, 1, 2, 2},
                              {3, 1, 3, 2}, {2, 2, 2, 2}, {5, 1, 2, 2}}) {
        FieldTower tw(p, h, n, 1);
        for (const GroupElement& g : group_elements(tw))
            CHECK(fix_count_formula(tw, g.lambda, g.r, m) ==
                  fix_count_brute(tw, g.lambda, g.r, m));
    }
    FieldTower tw(3, 1, 2, 1);
    CHECK_THROWS_AS(fix_count_formula(tw, tw.zero(), 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(fix_count_formula(tw, tw.generator(), 0, 2), std::invalid_argument);
}

TEST_CASE("worked fixed point values over F_3") {
    FieldTower tw(3, 1, 2, 1);
    CHECK(fix_count_formula(tw, tw.one(), 0, 2) == 3);
    CHECK(fix_count_formula(tw, tw.from_int(2), 0, 2) == 1);
}

TEST_CASE("closed form orbit count") {
    FieldTower t3(3, 1, 2, 1);
    CHECK(m_formula(t3, 2) == 2);
    FieldTower t2(2, 1, 2, 1);
    CHECK(m_formula(t2, 2) == 1);
    CHECK(m_formula(t2, 3) == 2);
    FieldTower t5(5, 1, 2, 1);
    CHECK(m_formula(t5, 2) == 3);
}

TEST_CASE("euler phi and the isotopy bound") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(6) == 2);
    CHECK(euler_phi(12) == 4);
    FieldTower tw(3, 1, 2, 1);
    IsotopyBound b = isotopy_class_bound(tw, 2);
    CHECK(b.m_count == 2);
    CHECK(b.bound_num == 1);  // phi(2)/2 * 2 = 1
    CHECK(b.bound_den == 1);
    FieldTower t2(2, 1, 2, 1);
    IsotopyBound b2 = isotopy_class_bound(t2, 2);
    CHECK(b2.bound_num == 1);
    CHECK(b2.bound_den == 2);  // exact rational 1/2, not rounded
}

TEST_CASE("count report cross checks") {
    FieldTower tw(3, 1, 2, 1);
    CountReport r = count_report(tw, 2);
    CHECK(r.total == 3);
    CHECK(r.m_formula == 2);
    CHECK(r.m_burnside == 2);
    CHECK(r.m_orbits == 2);
    CHECK(r.agree);
    // sandwich (q^m - theta)/(m h (q-1)) <= M <= (q^m - theta)/m
    CHECK(r.lower_num * 1 <= r.m_formula * r.lower_den);
    CHECK(r.m_formula * r.upper_den <= r.upper_num);
}
