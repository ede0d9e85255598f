#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "petitlab.hpp"

namespace {

using namespace petitlab;

struct TowerOpts {
    long long p = 0;
    int h = 1;
    int n = 0;
    int sigma_exp = 1;
    std::string conway_table;
};

void add_tower_options(CLI::App* cmd, TowerOpts& o) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--p", o.p, "characteristic p (prime)")->required();
    cmd->add_option("--h", o.h, "degree of F over F_p (q = p^h)");
    cmd->add_option("--n", o.n, "degree of K over F (K = F_{q^n})")->required();
    cmd->add_option("--sigma-exp", o.sigma_exp, "s with sigma(c) = c^(q^s), gcd(s, n) = 1");
    cmd->add_option("--conway-table", o.conway_table,
                    "modulus table file with lines: p degree c0 c1 ... (low degree first)");
}

std::vector<int> lookup_modulus(const std::string& path, long long p, int degree) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open modulus table: " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        long long lp;
        int ld;
        if (!(ls >> lp >> ld)) continue;
        if (lp != p || ld != degree) continue;
        std::vector<int> coeffs;
        int c;
        while (ls >> c) coeffs.push_back(c);
        if (static_cast<int>(coeffs.size()) != degree + 1)
            throw std::runtime_error("modulus table entry has wrong coefficient count");
        return coeffs;
    }
    throw std::runtime_error("no modulus table entry for the requested field");
}

FieldTower make_tower(const TowerOpts& o) {
    std::vector<int> modulus;
    if (!o.conway_table.empty()) modulus = lookup_modulus(o.conway_table, o.p, o.h * o.n);
    return FieldTower(o.p, o.h, o.n, o.sigma_exp, std::move(modulus));
}

void emit(const std::string& path, const nlohmann::json& j) {
    if (path.empty()) return;
    write_text_file(path, j.dump(2) + "\n");
}

std::string rational(long long num, long long den) {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

int run_classify(const TowerOpts& o, int m, bool sample, const std::string& out,
                 const std::string& csv) {
    FieldTower tw = make_tower(o);
    ClassificationReport rep = classify(tw, m, sample);
    std::cout << "q = " << rep.q << ", n = " << rep.n << ", m = " << rep.m << "\n"
              << "N(q,m)     = " << rep.total << "\n"
              << "M(q,m)     = " << rep.m_formula << " (formula), " << rep.orbit_count
              << " (orbits)\n"
              << "bound      = " << rational(rep.bound.bound_num, rep.bound.bound_den)
              << " isotopy classes at most\n";
    if (rep.sampled) std::cout << "verification: sampled\n";
    for (const OrbitRecord& rec : rep.orbits) {
        std::cout << "orbit " << print_central(tw, rec.canonical) << ": size " << rec.size
                  << ", k = " << rec.k << ", f = " << print_skew(tw, rec.rep_f)
                  << (rec.division ? ", division" : ", not division")
                  << (rec.associative ? ", associative" : "")
                  << ", Nuc_r dim_F = " << rec.nucleus_dim_F << ", code "
                  << rec.code.size << " words, min rank " << rec.code.min_rank
                  << (rec.code.mrd ? " (MRD)" : "") << "\n";
    }
    emit(out, classification_json(tw, rep));
    if (!csv.empty()) write_text_file(csv, classification_csv(tw, rep));
    if (!rep.ok) {
        std::cerr << "cross-check failed: formula/oracle disagreement or unverified certificate\n";
        return 2;
    }
    return 0;
}

int run_count(const TowerOpts& o, int m, const std::string& out) {
    FieldTower tw = make_tower(o);
    CountReport r = count_report(tw, m);
    std::cout << "N(q,m)        = " << r.total << "\n"
              << "M formula     = " << r.m_formula << "\n"
              << "M burnside    = " << r.m_burnside << "\n"
              << "M orbits      = " << r.m_orbits << "\n"
              << "sandwich      = [" << rational(r.lower_num, r.lower_den) << ", "
              << rational(r.upper_num, r.upper_den) << "]\n"
              << "phi(n)/2 * M  = " << rational(r.bound.bound_num, r.bound.bound_den) << "\n";
    emit(out, count_json(tw, r));
    if (!r.agree) {
        std::cerr << "cross-check failed: orbit counts disagree\n";
        return 2;
    }
    return 0;
}

int run_orbits(const TowerOpts& o, int m, const std::string& out) {
    FieldTower tw = make_tower(o);
    OrbitReport rep = orbit_decomposition(tw, m);
    std::cout << "N(q,m) = " << rep.total << ", orbits = " << rep.orbits.size() << "\n";
    for (const Orbit& orb : rep.orbits) {
        std::cout << print_central(tw, orb.canonical) << " (size " << orb.size << "):";
        for (const CPoly& mem : orb.members) std::cout << "  " << print_central(tw, mem);
        std::cout << "\n";
    }
    emit(out, orbits_json(tw, rep));
    return 0;
}

int run_mclm(const TowerOpts& o, const std::string& ftext) {
    FieldTower tw = make_tower(o);
    SPoly f = parse_skew(tw, ftext);
    CPoly hhat = mclm(tw, f);
    std::cout << print_central(tw, hhat) << "\n";
    return 0;
}

int run_similar(const TowerOpts& o, const std::string& ftext, const std::string& gtext) {
    FieldTower tw = make_tower(o);
    SPoly f = parse_skew(tw, ftext);
    SPoly g = parse_skew(tw, gtext);
    auto u = similar(tw, f, g);
    if (!u) {
        std::cout << "none\n";
        return 0;
    }
    if (sp_mod(tw, sp_mul(tw, g, *u), f).is_zero())
        std::cout << "u = " << print_skew(tw, *u) << "\n";
    else {
        std::cerr << "internal error: witness failed verification\n";
        return 2;
    }
    return 0;
}

int run_code(const TowerOpts& o, const std::string& ftext, const std::string& out) {
    FieldTower tw = make_tower(o);
    SPoly f = parse_skew(tw, ftext);
    PetitAlgebra a = make_petit(tw, f);
    if (a.size() > kEnvelopeLimit) {
        std::cerr << "envelope exceeded: q^(n*m) > 2^16\n";
        return 3;
    }
    RankCode code = spread_code(a);
    std::cout << "|C| = " << code.codewords.size() << ", k = " << code.k
              << (code.mrd ? ", MRD" : ", not MRD") << "\nrank distribution:";
    for (size_t r = 0; r < code.rank_distribution.size(); ++r)
        std::cout << " " << r << ":" << code.rank_distribution[r];
    std::cout << "\n";
    emit(out, code_json(a, code));
    return 0;
}

int run_sandler(const TowerOpts& o, const std::string& ctext, const std::string& dtext, int m) {
    FieldTower tw = make_tower(o);
    Felem c = parse_field_elem(tw, ctext);
    Felem d = parse_field_elem(tw, dtext);
    SandlerResult res = sandler_isomorphic(tw, c, d, m);
    switch (res.status) {
        case SandlerStatus::Found:
            std::cout << "alpha = " << print_felem(tw, res.alpha) << ", r = " << res.r << "\n";
            return 0;
        case SandlerStatus::NotFound:
            std::cout << "none\n";
            return 0;
        case SandlerStatus::HypothesisError:
            std::cerr << "hypothesis error: " << res.reason << "\n";
            return 1;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Petit algebras over finite field towers: classification, orbit counting, "
                 "and rank-metric codes"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    TowerOpts topts;
    int m = 0;
    bool sample = false;
    std::string out, csv, ftext, gtext, ctext, dtext;

    CLI::App* c_classify = app.add_subcommand("classify", "full classification pipeline");
    add_tower_options(c_classify, topts);
    c_classify->add_option("--m", m, "degree of the polynomials f")->required();
    c_classify->add_flag("--sample", sample, "allow sampled verification beyond the envelope");
    c_classify->add_option("--out", out, "JSON report file");
    c_classify->add_option("--csv", csv, "CSV report file");

    CLI::App* c_count = app.add_subcommand("count", "orbit-count cross-check table");
    add_tower_options(c_count, topts);
    c_count->add_option("--m", m, "degree m")->required();
    c_count->add_option("--out", out, "JSON report file");

    CLI::App* c_orbits = app.add_subcommand("orbits", "orbit decomposition of I(F, m)");
    add_tower_options(c_orbits, topts);
    c_orbits->add_option("--m", m, "degree m")->required();
    c_orbits->add_option("--out", out, "JSON report file");

    CLI::App* c_mclm = app.add_subcommand("mclm", "minimal central left multiple of f");
    add_tower_options(c_mclm, topts);
    c_mclm->add_option("--f", ftext, "skew polynomial in t")->required();

    CLI::App* c_similar = app.add_subcommand("similar", "similarity witness for (f, g)");
    add_tower_options(c_similar, topts);
    c_similar->add_option("--f", ftext, "skew polynomial in t")->required();
    c_similar->add_option("--g", gtext, "skew polynomial in t")->required();

    CLI::App* c_code = app.add_subcommand("code", "spread code of S_f");
    add_tower_options(c_code, topts);
    c_code->add_option("--f", ftext, "skew polynomial in t")->required();
    c_code->add_option("--out", out, "JSON code export file");

    CLI::App* c_sandler = app.add_subcommand("sandler", "isomorphism certificate for t^m - c, t^m - d");
    add_tower_options(c_sandler, topts);
    c_sandler->add_option("--c", ctext, "field element c")->required();
    c_sandler->add_option("--d", dtext, "field element d")->required();
    c_sandler->add_option("--m", m, "degree m")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_classify->parsed()) return run_classify(topts, m, sample, out, csv);
        if (c_count->parsed()) return run_count(topts, m, out);
        if (c_orbits->parsed()) return run_orbits(topts, m, out);
        if (c_mclm->parsed()) return run_mclm(topts, ftext);
        if (c_similar->parsed()) return run_similar(topts, ftext, gtext);
        if (c_code->parsed()) return run_code(topts, ftext, out);
        if (c_sandler->parsed()) return run_sandler(topts, ctext, dtext, m);
    } catch (const EnvelopeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "cross-check failed: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
