#ifndef PETITLAB_PARSE_HPP
#define PETITLAB_PARSE_HPP

#include <cctype>
#include <stdexcept>
#include <string>

#include "cpoly.hpp"
#include "field.hpp"
#include "skew.hpp"

namespace petitlab {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

class PolyParser {
  public:
    PolyParser(const FieldTower& tw, const std::string& text, char var)
        : tw_(tw), var_(var) {
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c))) s_.push_back(c);
    }

    /// Parses a polynomial in var_ with field-element coefficients in w.
    /// With var_ = 0 only a bare field element is accepted.
    std::vector<Felem> parse() {
        std::vector<Felem> coeffs;
        parse_term(coeffs);
        while (!done()) {
            expect('+');
            parse_term(coeffs);
        }
        return coeffs;
    }

  private:
    bool done() const { return pos_ >= s_.size(); }
    char peek() const { return done() ? '\0' : s_[pos_]; }
    void expect(char c) {
        if (peek() != c) throw ParseError(std::string("expected '") + c + "' in polynomial");
        ++pos_;
    }

    long long parse_int() {
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("expected an integer");
        long long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (s_[pos_] - '0');
            ++pos_;
            if (v > (1LL << 40)) throw ParseError("integer literal too large");
        }
        return v;
    }

    void parse_term(std::vector<Felem>& coeffs) {
        Felem coef = tw_.one();
        bool have_coef = false;
        bool var_next = false;
        while (true) {
            char c = peek();
            if (c == var_ && var_ != 0) {
                var_next = true;
                break;
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef = tw_.mul(coef, tw_.from_int(parse_int()));
                have_coef = true;
            } else if (c == 'w') {
                ++pos_;
                long long e = 1;
                if (peek() == '^') {
                    ++pos_;
                    e = parse_int();
                }
                coef = tw_.mul(coef, tw_.pow(tw_.generator(), e));
                have_coef = true;
            } else if (c == '(') {
                ++pos_;
                Felem inner = parse_field_sum();
                expect(')');
                coef = tw_.mul(coef, inner);
                have_coef = true;
            } else {
                break;
            }
            if (peek() == '*') ++pos_;
        }
        int exp = 0;
        if (var_next) {
            ++pos_;
            exp = 1;
            if (peek() == '^') {
                ++pos_;
                exp = static_cast<int>(parse_int());
                if (exp < 0 || exp > 1000) throw ParseError("exponent out of range");
            }
        } else if (!have_coef) {
            throw ParseError("empty term");
        }
        if (static_cast<int>(coeffs.size()) <= exp) coeffs.resize(exp + 1, tw_.zero());
        coeffs[exp] = tw_.add(coeffs[exp], coef);
    }

    /// field element sum inside parentheses (no t/x inside)
    Felem parse_field_sum() {
        Felem acc = parse_field_product();
        while (peek() == '+') {
            ++pos_;
            acc = tw_.add(acc, parse_field_product());
        }
        return acc;
    }

    Felem parse_field_product() {
        Felem coef = tw_.one();
        bool any = false;
        while (true) {
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef = tw_.mul(coef, tw_.from_int(parse_int()));
                any = true;
            } else if (c == 'w') {
                ++pos_;
                long long e = 1;
                if (peek() == '^') {
                    ++pos_;
                    e = parse_int();
                }
                coef = tw_.mul(coef, tw_.pow(tw_.generator(), e));
                any = true;
            } else {
                break;
            }
            if (peek() == '*') ++pos_;
        }
        if (!any) throw ParseError("empty field element");
        return coef;
    }

    const FieldTower& tw_;
    char var_;
    std::string s_;
    size_t pos_ = 0;
};

}  // namespace detail

inline Felem parse_field_elem(const FieldTower& tw, const std::string& text) {
    detail::PolyParser p(tw, text, 0);
    std::vector<Felem> cs = p.parse();
    if (cs.size() != 1) throw ParseError("expected a field element");
    return cs[0];
}

inline SPoly parse_skew(const FieldTower& tw, const std::string& text) {
    detail::PolyParser p(tw, text, 't');
    return sp_trim(SPoly{p.parse()});
}

inline CPoly parse_central(const FieldTower& tw, const std::string& text) {
    detail::PolyParser p(tw, text, 'x');
    return cp_make(tw, p.parse());
}

inline std::string print_felem(const FieldTower& tw, const Felem& a) {
    std::string out;
    for (int i = tw.ext_degree() - 1; i >= 0; --i) {
        int c = a.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) out += std::to_string(c) + "*";
            out += 'w';
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

namespace detail {

/// true iff the element prints as a single product term (at most one nonzero
/// coordinate), so it can prefix t^i without parentheses
inline bool felem_is_single_term(const Felem& a) {
    int nonzero = 0;
    for (int c : a.coeffs)
        if (c != 0) ++nonzero;
    return nonzero <= 1;
}

inline std::string print_poly_generic(const FieldTower& tw, const std::vector<Felem>& coeffs,
                                      char var) {
    std::string out;
    for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
        const Felem& c = coeffs[i];
        if (c.is_zero()) continue;
        if (!out.empty()) out += " + ";
        std::string cs = print_felem(tw, c);
        if (i == 0) {
            out += cs;
            continue;
        }
        std::string vpart(1, var);
        if (i > 1) vpart += "^" + std::to_string(i);
        if (cs == "1") {
            out += vpart;
        } else if (felem_is_single_term(c)) {
            out += cs + "*" + vpart;
        } else {
            out += "(" + cs + ")*" + vpart;
        }
    }
    return out.empty() ? "0" : out;
}

}  // namespace detail

inline std::string print_skew(const FieldTower& tw, const SPoly& f) {
    return detail::print_poly_generic(tw, f.coeffs, 't');
}

inline std::string print_central(const FieldTower& tw, const CPoly& f) {
    return detail::print_poly_generic(tw, f.coeffs, 'x');
}

}  // namespace petitlab

#endif
