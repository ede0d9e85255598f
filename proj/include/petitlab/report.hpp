#ifndef PETITLAB_REPORT_HPP
#define PETITLAB_REPORT_HPP

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrd.hpp"
#include "orbits.hpp"
#include "parse.hpp"
#include "util.hpp"

namespace petitlab {

/// q^(nm) above this needs an explicit sampling opt-in.
inline constexpr long long kEnvelopeLimit = 1LL << 16;
inline constexpr long long kSampleCap = 1LL << 12;

struct EnvelopeError : std::runtime_error {
    explicit EnvelopeError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CodeSummary {
    long long size = 0;
    int k = 0;
    int min_rank = 0;                          // minimum nonzero-codeword rank
    std::vector<long long> rank_distribution;  // over the checked codewords
    bool mrd = false;
    bool sampled = false;
};

/// Rank statistics of the spread code, optionally on a strided sample.
inline CodeSummary code_summary(const PetitAlgebra& a, long long sample_cap = 0) {
    const FieldTower& tw = *a.tower;
    CodeSummary s;
    s.size = a.size();
    s.k = a.m;
    s.rank_distribution.assign(a.m + 1, 0);
    long long stride = 1;
    if (sample_cap > 0 && s.size > sample_cap) {
        stride = (s.size + sample_cap - 1) / sample_cap;
        s.sampled = true;
    }
    long long checked = (s.size + stride - 1) / stride;
    std::vector<int> ranks(checked, 0);
    parallel_for(checked, [&](long long i) {
        ranks[i] = right_mult_matrix(a, petit_element(a, i * stride)).rank(tw);
    });
    for (long long i = 0; i < checked; ++i) ++s.rank_distribution[ranks[i]];
    s.min_rank = 0;
    bool mrd = true;
    for (int r = 1; r <= a.m; ++r) {
        if (s.rank_distribution[r] == 0) continue;
        if (s.min_rank == 0) s.min_rank = r;
        if (r != a.m) mrd = false;
    }
    s.mrd = mrd;
    return s;
}

struct OrbitRecord {
    CPoly canonical;
    std::vector<CPoly> members;
    std::vector<GroupElement> reach;
    long long size = 0;
    long long stabilizer_order = 0;
    long long k = 0;           // factors of canonical(t^n) in R
    SPoly rep_f;               // one irreducible right factor of canonical(t^n)
    std::vector<SPoly> member_factors;
    bool division = false;
    bool associative = false;
    bool right_invariant = false;
    int nucleus_dim_F = 0;
    CodeSummary code;
    std::vector<std::string> certificate_hashes;  // canonical -> member i, i >= 1
    bool certificates_verified = true;
    bool certificates_sampled = false;
    bool rank_distributions_match = true;
};

struct ClassificationReport {
    int p = 0, h = 0, n = 0, m = 0, sigma_exp = 1;
    std::vector<int> modulus;
    long long q = 0;
    long long total = 0;        // N(q, m)
    long long m_formula = 0;    // closed-form orbit count
    long long orbit_count = 0;  // direct enumeration
    IsotopyBound bound{0, 0, 1};
    bool sampled = false;
    bool ok = false;            // formula agrees with the enumeration and all
                                // certificates verified
    std::vector<OrbitRecord> orbits;
};

/// Full pipeline: orbits of I(F, m), one irreducible right factor per member,
/// algebra structure, code summaries, and canonical-to-member equivalence
/// certificates. Throws EnvelopeError when q^(nm) exceeds the envelope and
/// sampling was not requested.
inline ClassificationReport classify(const FieldTower& tw, int m, bool allow_sampling = false) {
    if (m < 2) throw std::invalid_argument("classify requires m >= 2");
    ClassificationReport rep;
    rep.p = tw.p();
    rep.h = tw.h();
    rep.n = tw.n();
    rep.m = m;
    rep.sigma_exp = tw.sigma_exp();
    rep.modulus = tw.modulus();
    rep.q = tw.q();

    long long alg_size = 1;
    for (int i = 0; i < m; ++i) {
        alg_size *= tw.order();
        if (alg_size > kEnvelopeLimit) {
            if (!allow_sampling)
                throw EnvelopeError("q^(n*m) exceeds 2^16; rerun with sampling enabled");
            rep.sampled = true;
        }
    }
    long long cap = rep.sampled ? kSampleCap : 0;

    OrbitReport orbits = orbit_decomposition(tw, m);
    rep.total = orbits.total;
    rep.orbit_count = static_cast<long long>(orbits.orbits.size());
    rep.m_formula = m_formula(tw, m);
    rep.bound = isotopy_class_bound(tw, m);

    bool all_ok = rep.m_formula == rep.orbit_count;
    for (const Orbit& orb : orbits.orbits) {
        OrbitRecord rec;
        rec.canonical = orb.canonical;
        rec.members = orb.members;
        rec.reach = orb.reach;
        rec.size = orb.size;
        rec.stabilizer_order = orb.stabilizer_order;

        FactorCount fc = factor_count(tw, orb.canonical);
        rec.k = fc.k;
        rec.rep_f = fc.factor;
        for (const CPoly& mem : orb.members) rec.member_factors.push_back(factor_count(tw, mem).factor);

        PetitAlgebra a = make_petit(tw, rec.rep_f);
        rec.division = a.is_division;
        rec.right_invariant = a.is_right_invariant;
        RightNucleus nuc = right_nucleus(a);
        rec.nucleus_dim_F = nuc.dim_F;
        rec.associative = nuc.associative;
        rec.code = code_summary(a, cap);

        for (size_t i = 0; i < orb.members.size(); ++i) {
            if (orb.members[i] == orb.canonical) continue;
            PetitAlgebra ag = make_petit(tw, rec.member_factors[i]);
            EquivalencePath path;
            const GroupElement& g = orb.reach[i];
            Felem alpha = tw.norm_preimage(g.lambda);
            path.transport = {alpha, g.r};
            SPoly fprime = g_transport(tw, a.f, alpha, g.r);
            auto u = similar(tw, fprime, ag.f);
            if (!u) throw std::logic_error("classify: same-orbit pair has no similarity witness");
            path.witness = *u;
            EquivalenceResult er = equivalence_certificate(a, ag, path, cap);
            if (!er.verified) rec.certificates_verified = false;
            if (er.sampled) rec.certificates_sampled = true;
            if (!er.rank_distribution_match) rec.rank_distributions_match = false;
            std::ostringstream os;
            os << er.cert.X.key(tw) << '|' << er.cert.r << '|' << er.cert.Y.key(tw);
            rec.certificate_hashes.push_back(fnv1a_hex(os.str()));
        }
        if (!rec.certificates_verified || !rec.rank_distributions_match) all_ok = false;
        rep.orbits.push_back(std::move(rec));
    }
    rep.ok = all_ok;
    return rep;
}

struct CountReport {
    long long q = 0;
    int m = 0;
    long long total = 0;         // N(q, m)
    long long m_formula = 0;
    long long m_burnside = 0;    // brute-force fixed-point average
    long long m_orbits = 0;      // direct enumeration
    long long lower_num = 0, lower_den = 1;  // (q^m - theta) / (m h (q-1))
    long long upper_num = 0, upper_den = 1;  // (q^m - theta) / m
    IsotopyBound bound{0, 0, 1};
    bool agree = false;
};

inline CountReport count_report(const FieldTower& tw, int m) {
    CountReport r;
    r.q = tw.q();
    r.m = m;
    r.total = moebius_count(tw.q(), m);
    r.m_formula = m_formula(tw, m);
    long long acc = 0;
    for (const GroupElement& g : group_elements(tw)) acc += fix_count_brute(tw, g.lambda, g.r, m);
    long long gsize = group_order(tw);
    r.m_burnside = (acc % gsize == 0) ? acc / gsize : -1;
    r.m_orbits = static_cast<long long>(orbit_decomposition(tw, m).orbits.size());
    long long num = r.total * m;  // q^m - theta
    r.lower_num = num;
    r.lower_den = static_cast<long long>(m) * tw.h() * (tw.q() - 1);
    long long g1 = std::gcd(r.lower_num, r.lower_den);
    r.lower_num /= g1;
    r.lower_den /= g1;
    r.upper_num = num;
    r.upper_den = m;
    long long g2 = std::gcd(r.upper_num, r.upper_den);
    r.upper_num /= g2;
    r.upper_den /= g2;
    r.bound = isotopy_class_bound(tw, m);
    r.agree = r.m_formula == r.m_burnside && r.m_formula == r.m_orbits;
    return r;
}

inline nlohmann::json field_json(const FieldTower& tw) {
    return nlohmann::json{{"p", tw.p()},
                          {"h", tw.h()},
                          {"n", tw.n()},
                          {"q", tw.q()},
                          {"sigma_exp", tw.sigma_exp()},
                          {"modulus", tw.modulus()}};
}

inline nlohmann::json orbit_json(const FieldTower& tw, const OrbitRecord& rec) {
    nlohmann::json members = nlohmann::json::array();
    for (size_t i = 0; i < rec.members.size(); ++i) {
        members.push_back(nlohmann::json{
            {"hhat", print_central(tw, rec.members[i])},
            {"factor", print_skew(tw, rec.member_factors[i])},
            {"reach_lambda", print_felem(tw, rec.reach[i].lambda)},
            {"reach_r", rec.reach[i].r}});
    }
    return nlohmann::json{
        {"canonical", print_central(tw, rec.canonical)},
        {"members", std::move(members)},
        {"size", rec.size},
        {"stabilizer_order", rec.stabilizer_order},
        {"k", rec.k},
        {"representative", print_skew(tw, rec.rep_f)},
        {"division", rec.division},
        {"associative", rec.associative},
        {"right_invariant", rec.right_invariant},
        {"right_nucleus_dim_F", rec.nucleus_dim_F},
        {"code",
         nlohmann::json{{"size", rec.code.size},
                        {"k", rec.code.k},
                        {"min_rank", rec.code.min_rank},
                        {"rank_distribution", rec.code.rank_distribution},
                        {"mrd", rec.code.mrd},
                        {"sampled", rec.code.sampled}}},
        {"certificate_hashes", rec.certificate_hashes},
        {"certificates_verified", rec.certificates_verified},
        {"certificates_sampled", rec.certificates_sampled},
        {"rank_distributions_match", rec.rank_distributions_match}};
}

inline nlohmann::json classification_json(const FieldTower& tw, const ClassificationReport& rep) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const OrbitRecord& rec : rep.orbits) orbits.push_back(orbit_json(tw, rec));
    return nlohmann::json{
        {"field", field_json(tw)},
        {"m", rep.m},
        {"N", rep.total},
        {"M_formula", rep.m_formula},
        {"orbit_count", rep.orbit_count},
        {"isotopy_bound", {{"num", rep.bound.bound_num}, {"den", rep.bound.bound_den}}},
        {"sampled", rep.sampled},
        {"ok", rep.ok},
        {"orbits", std::move(orbits)}};
}

inline std::string classification_csv(const FieldTower& tw, const ClassificationReport& rep) {
    std::ostringstream os;
    os << "canonical,orbit_size,stabilizer_order,k,representative,division,associative,"
          "right_nucleus_dim_F,code_size,min_rank,rank_distribution,certificates_verified\n";
    auto quote = [](const std::string& s) { return '"' + s + '"'; };
    for (const OrbitRecord& rec : rep.orbits) {
        std::ostringstream rd;
        for (size_t i = 0; i < rec.code.rank_distribution.size(); ++i) {
            if (i) rd << ';';
            rd << rec.code.rank_distribution[i];
        }
        os << quote(print_central(tw, rec.canonical)) << ',' << rec.size << ','
           << rec.stabilizer_order << ',' << rec.k << ',' << quote(print_skew(tw, rec.rep_f))
           << ',' << (rec.division ? 1 : 0) << ',' << (rec.associative ? 1 : 0) << ','
           << rec.nucleus_dim_F << ',' << rec.code.size << ',' << rec.code.min_rank << ','
           << rd.str() << ',' << (rec.certificates_verified ? 1 : 0) << '\n';
    }
    return os.str();
}

inline nlohmann::json count_json(const FieldTower& tw, const CountReport& r) {
    return nlohmann::json{
        {"field", field_json(tw)},
        {"m", r.m},
        {"N", r.total},
        {"M_formula", r.m_formula},
        {"M_burnside", r.m_burnside},
        {"M_orbits", r.m_orbits},
        {"sandwich_lower", {{"num", r.lower_num}, {"den", r.lower_den}}},
        {"sandwich_upper", {{"num", r.upper_num}, {"den", r.upper_den}}},
        {"isotopy_bound", {{"num", r.bound.bound_num}, {"den", r.bound.bound_den}}},
        {"agree", r.agree}};
}

inline nlohmann::json orbits_json(const FieldTower& tw, const OrbitReport& rep) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const Orbit& orb : rep.orbits) {
        nlohmann::json members = nlohmann::json::array();
        for (size_t i = 0; i < orb.members.size(); ++i) {
            members.push_back(nlohmann::json{{"hhat", print_central(tw, orb.members[i])},
                                             {"reach_lambda", print_felem(tw, orb.reach[i].lambda)},
                                             {"reach_r", orb.reach[i].r}});
        }
        orbits.push_back(nlohmann::json{{"canonical", print_central(tw, orb.canonical)},
                                        {"members", std::move(members)},
                                        {"size", orb.size},
                                        {"stabilizer_order", orb.stabilizer_order}});
    }
    return nlohmann::json{{"field", field_json(tw)},
                          {"m", rep.m0},
                          {"N", rep.total},
                          {"orbit_count", orbits.size()},
                          {"orbits", std::move(orbits)}};
}

/// {"field": {...}, "k": m, "codewords": [[row-major entries]]}, codewords
/// ordered by the indexing element ordinal.
inline nlohmann::json code_json(const PetitAlgebra& a, const RankCode& code) {
    const FieldTower& tw = *a.tower;
    nlohmann::json words = nlohmann::json::array();
    for (const KMat& M : code.codewords) {
        nlohmann::json entries = nlohmann::json::array();
        for (int i = 0; i < M.rows(); ++i)
            for (int j = 0; j < M.cols(); ++j) entries.push_back(print_felem(tw, M.at(i, j)));
        words.push_back(std::move(entries));
    }
    return nlohmann::json{{"field", field_json(tw)},
                          {"f", print_skew(tw, a.f)},
                          {"k", code.k},
                          {"mrd", code.mrd},
                          {"rank_distribution", code.rank_distribution},
                          {"codewords", std::move(words)}};
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

}  // namespace petitlab

#endif
