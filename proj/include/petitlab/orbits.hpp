#ifndef PETITLAB_ORBITS_HPP
#define PETITLAB_ORBITS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "cpoly.hpp"
#include "field.hpp"

namespace petitlab {

/// (lambda, r) in N_{K/F}(K^x) x| Aut(K)_sigma; over finite fields the norm
/// group is all of F^x and tau_r is the p^r-power Frobenius, r < h*n.
struct GroupElement {
    Felem lambda;
    int r = 0;
};

inline GroupElement group_identity(const FieldTower& tw) { return GroupElement{tw.one(), 0}; }

/// Semidirect product law (l1, t1)(l2, t2) = (l1 * t1(l2), t1 t2).
inline GroupElement group_mul(const FieldTower& tw, const GroupElement& a, const GroupElement& b) {
    return GroupElement{tw.mul(a.lambda, tw.frob(b.lambda, a.r)),
                        (a.r + b.r) % tw.ext_degree()};
}

inline GroupElement group_inv(const FieldTower& tw, const GroupElement& a) {
    int rinv = (tw.ext_degree() - a.r) % tw.ext_degree();
    return GroupElement{tw.frob(tw.inv(a.lambda), rinv), rinv};
}

/// "g1 then g2" in the action order: act(act(h, g1), g2) = act(h, compose(g1, g2)).
inline GroupElement group_compose(const FieldTower& tw, const GroupElement& g1,
                                  const GroupElement& g2) {
    return group_mul(tw, g2, g1);
}

inline long long group_order(const FieldTower& tw) {
    return (tw.q() - 1) * tw.h() * tw.n();
}

inline std::vector<GroupElement> group_elements(const FieldTower& tw) {
    std::vector<GroupElement> out;
    for (const Felem& lam : tw.subfield_F()) {
        if (lam.is_zero()) continue;
        for (int r = 0; r < tw.ext_degree(); ++r) out.push_back(GroupElement{lam, r});
    }
    return out;
}

/// hhat^(lambda,tau)(x) = lambda^(-m0) hhat^tau(lambda x); monic, degree and
/// irreducibility preserved.
inline CPoly act(const FieldTower& tw, const CPoly& hhat, const GroupElement& g) {
    if (g.lambda.is_zero()) throw std::domain_error("action with lambda = 0");
    int m0 = hhat.deg();
    if (m0 < 0 || !cp_is_monic(hhat)) throw std::invalid_argument("action requires a monic polynomial");
    CPoly out;
    out.coeffs.assign(m0 + 1, tw.zero());
    for (int i = 0; i <= m0; ++i) {
        if (hhat.coeffs[i].is_zero()) continue;
        // coefficient c_i -> lambda^(i - m0) tau(c_i)
        Felem c = tw.mul(tw.pow(g.lambda, i - m0), tw.frob(hhat.coeffs[i], g.r));
        out.coeffs[i] = c;
    }
    return cp_make(tw, std::move(out.coeffs));
}

inline int moebius_mu(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

inline long long ipow_ll(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

/// N(q,m) = (1/m) sum_{s|m} mu(s) q^(m/s).
inline long long moebius_count(long long q, int m) {
    if (m < 1) throw std::invalid_argument("moebius_count: m >= 1 required");
    long long acc = 0;
    for (int s = 1; s <= m; ++s) {
        if (m % s) continue;
        acc += moebius_mu(s) * ipow_ll(q, m / s);
    }
    if (acc % m != 0) throw std::logic_error("moebius sum not divisible by m");
    return acc / m;
}

struct Orbit {
    CPoly canonical;                  // lexicographically least member
    std::vector<CPoly> members;       // sorted
    std::vector<GroupElement> reach;  // reach[i] maps canonical to members[i]
    long long size = 0;
    long long stabilizer_order = 0;
};

struct OrbitReport {
    int m0 = 0;
    long long total = 0;  // N(q, m0)
    std::vector<Orbit> orbits;
};

/// Partition of I(F, m0) under the G-action, with deterministic canonical
/// representatives and transport elements. Checks the zero-pattern invariant
/// (orbit members share the support of their coefficient vectors).
inline OrbitReport orbit_decomposition(const FieldTower& tw, int m0) {
    std::vector<CPoly> all = irreducible_polys(tw, m0);
    std::map<std::vector<long long>, size_t> index;
    auto keyof = [&](const CPoly& f) {
        std::vector<long long> k;
        for (const Felem& c : f.coeffs) k.push_back(tw.ordinal(c));
        return k;
    };
    for (size_t i = 0; i < all.size(); ++i) index[keyof(all[i])] = i;

    std::vector<GroupElement> gens = group_elements(tw);
    std::vector<bool> seen(all.size(), false);
    OrbitReport rep;
    rep.m0 = m0;
    rep.total = static_cast<long long>(all.size());
    long long gsize = group_order(tw);

    for (size_t start = 0; start < all.size(); ++start) {
        if (seen[start]) continue;
        // BFS collecting the orbit together with transport elements from `start`
        std::vector<size_t> members{start};
        std::vector<GroupElement> from_start{group_identity(tw)};
        seen[start] = true;
        for (size_t head = 0; head < members.size(); ++head) {
            for (const GroupElement& g : gens) {
                CPoly img = act(tw, all[members[head]], g);
                size_t idx = index.at(keyof(img));
                if (seen[idx]) continue;
                seen[idx] = true;
                members.push_back(idx);
                from_start.push_back(group_compose(tw, from_start[head], g));
            }
        }
        // canonical representative: lexicographically least member
        size_t canon_pos = 0;
        for (size_t i = 1; i < members.size(); ++i)
            if (cp_lex_less(tw, all[members[i]], all[members[canon_pos]])) canon_pos = i;
        GroupElement to_canon = from_start[canon_pos];
        Orbit orb;
        orb.canonical = all[members[canon_pos]];
        std::vector<std::pair<std::vector<long long>, size_t>> sorted;
        for (size_t i = 0; i < members.size(); ++i) sorted.push_back({keyof(all[members[i]]), i});
        std::sort(sorted.begin(), sorted.end());
        for (auto& [k, i] : sorted) {
            orb.members.push_back(all[members[i]]);
            // canonical --(inv to_canon)--> start --(from_start[i])--> member
            GroupElement gmove =
                group_compose(tw, group_inv(tw, to_canon), from_start[i]);
            if (act(tw, orb.canonical, gmove) != all[members[i]])
                throw std::logic_error("orbit transport bookkeeping failed");
            orb.reach.push_back(gmove);
            // zero-pattern invariant against the canonical representative
            for (int ci = 0; ci < m0; ++ci)
                if (orb.canonical.coeffs[ci].is_zero() != all[members[i]].coeffs[ci].is_zero())
                    throw std::logic_error("zero-pattern invariant violated across an orbit");
        }
        orb.size = static_cast<long long>(members.size());
        if (gsize % orb.size != 0) throw std::logic_error("orbit size does not divide |G|");
        orb.stabilizer_order = gsize / orb.size;
        rep.orbits.push_back(std::move(orb));
    }
    std::sort(rep.orbits.begin(), rep.orbits.end(), [&tw](const Orbit& a, const Orbit& b) {
        return cp_lex_less(tw, a.canonical, b.canonical);
    });
    long long sum = 0;
    for (const Orbit& o : rep.orbits) sum += o.size;
    if (sum != rep.total) throw std::logic_error("orbit sizes do not sum to N(q, m0)");
    return rep;
}

/// |Fix(lambda, tau_r)| by the closed formula. Conventions: e is reduced into
/// [0, q^s - 1) in the unit group, gcd(q^s - 1, 0) = q^s - 1, and the
/// solvability condition is lambda^((q^s-1)/gcd) = 1.
inline long long fix_count_formula(const FieldTower& tw, const Felem& lambda, int r, int m) {
    if (lambda.is_zero() || !tw.in_F(lambda))
        throw std::invalid_argument("fix_count_formula: lambda must lie in F^x");
    long long q = tw.q();
    long long pr = ipow_ll(tw.p(), static_cast<int>(((r % tw.ext_degree()) + tw.ext_degree()) %
                                                    tw.ext_degree()));
    long long total = 0;
    for (int j = 0; j < m; ++j) {
        long long e_rj = pr - ipow_ll(q, j);
        long long s_rj = 0;
        for (int d = 1; d <= m; ++d) {
            if (m % d) continue;
            int s = m / d;
            long long qs1 = ipow_ll(q, s) - 1;
            long long e = ((e_rj % qs1) + qs1) % qs1;
            long long g = (e == 0) ? qs1 : std::gcd(qs1, e);
            long long count = (tw.pow(lambda, qs1 / g) == tw.one()) ? g : 0;
            s_rj += moebius_mu(d) * count;
        }
        total += s_rj;
    }
    if (total % m != 0) throw std::logic_error("fix count not divisible by m");
    return total / m;
}

/// Brute-force |Fix(lambda, tau_r)| over the full enumeration of I(F, m).
inline long long fix_count_brute(const FieldTower& tw, const Felem& lambda, int r, int m) {
    GroupElement g{lambda, r};
    long long count = 0;
    for (const CPoly& f : irreducible_polys(tw, m))
        if (act(tw, f, g) == f) ++count;
    return count;
}

/// M(q,m) via the full hn-term Burnside sum of the closed formula. Asserts
/// agreement with the reduced h-term form and the sandwich bounds.
inline long long m_formula(const FieldTower& tw, int m) {
    long long q = tw.q();
    long long acc_hn = 0, acc_h = 0;
    for (const Felem& lam : tw.subfield_F()) {
        if (lam.is_zero()) continue;
        for (int r = 0; r < tw.ext_degree(); ++r) acc_hn += fix_count_formula(tw, lam, r, m);
        for (int k = 0; k < tw.h(); ++k) acc_h += fix_count_formula(tw, lam, k, m);
    }
    long long ghn = (q - 1) * tw.h() * tw.n();
    if (acc_hn % ghn != 0) throw std::logic_error("Burnside sum not divisible by |G|");
    long long M = acc_hn / ghn;
    long long gh = (q - 1) * tw.h();
    if (acc_h % gh != 0 || acc_h / gh != M)
        throw std::logic_error("h-term and hn-term orbit counts disagree");
    // sandwich: (q^m - theta)/(m h (q-1)) <= M <= (q^m - theta)/m
    long long N = moebius_count(q, m);
    long long num = N * m;  // = q^m - theta
    if (M * m * tw.h() * (q - 1) < num || M * m > num)
        throw std::logic_error("sandwich bounds violated");
    return M;
}

struct IsotopyBound {
    long long m_count;      // M(q, m)
    long long bound_num;    // phi(n) * M
    long long bound_den;    // 2, reduced
};

inline long long euler_phi(int n) {
    long long r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

/// M(q,m) together with the exact rational phi(n)/2 * M(q,m).
inline IsotopyBound isotopy_class_bound(const FieldTower& tw, int m) {
    long long M = m_formula(tw, m);
    long long num = euler_phi(tw.n()) * M;
    long long den = 2;
    long long g = std::gcd(num, den);
    return IsotopyBound{M, num / g, den / g};
}

}  // namespace petitlab

#endif
