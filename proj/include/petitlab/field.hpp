#ifndef PETITLAB_FIELD_HPP
#define PETITLAB_FIELD_HPP

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "fp_linalg.hpp"

namespace petitlab {

/// Element of the ambient field K = F_p[y]/(modulus). coeffs[i] is the
/// coordinate of y^i; length is always h*n.
struct Felem {
    std::vector<int> coeffs;

    bool operator==(const Felem& o) const { return coeffs == o.coeffs; }
    bool operator!=(const Felem& o) const { return coeffs != o.coeffs; }
    bool is_zero() const {
        for (int c : coeffs)
            if (c != 0) return false;
        return true;
    }
};

inline bool is_prime_int(long long v) {
    if (v < 2) return false;
    for (long long d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

namespace detail {

// Arithmetic on F_p[y] with plain int coefficient vectors (low degree first),
// used only for modulus selection and validation.
inline std::vector<int> zp_trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<int> zp_mulmod(const std::vector<int>& a, const std::vector<int>& b,
                                  const std::vector<int>& mod, int p) {
    std::vector<int> prod(a.size() + b.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
    // reduce mod the monic polynomial `mod`
    int d = static_cast<int>(mod.size()) - 1;
    for (int i = static_cast<int>(prod.size()) - 1; i >= d; --i) {
        int c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < d; ++j)
            prod[i - d + j] = ((prod[i - d + j] - c * mod[j]) % p + p) % p;
    }
    prod.resize(d);
    return prod;
}

inline std::vector<int> zp_powmod(std::vector<int> base, long long e,
                                  const std::vector<int>& mod, int p) {
    std::vector<int> r(mod.size() - 1, 0);
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = zp_mulmod(r, base, mod, p);
        base = zp_mulmod(base, base, mod, p);
        e >>= 1;
    }
    return r;
}

inline std::vector<int> zp_gcd(std::vector<int> a, std::vector<int> b, int p) {
    a = zp_trim(std::move(a));
    b = zp_trim(std::move(b));
    while (!b.empty()) {
        // a mod b
        int db = static_cast<int>(b.size()) - 1;
        int lead_inv = inv_mod_prime(b.back(), p);
        while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
            int da = static_cast<int>(a.size()) - 1;
            int c = a.back() * lead_inv % p;
            for (int j = 0; j <= db; ++j)
                a[da - db + j] = ((a[da - db + j] - c * b[j]) % p + p) % p;
            a = zp_trim(std::move(a));
        }
        std::swap(a, b);
    }
    return a;
}

/// Rabin irreducibility test for a monic polynomial over F_p.
inline bool zp_irreducible(const std::vector<int>& f, int p) {
    int d = static_cast<int>(f.size()) - 1;
    if (d <= 0) return false;
    if (d == 1) return true;
    std::vector<int> y(static_cast<size_t>(d), 0);
    if (d >= 2) y[1] = 1;
    // y^(p^d) == y mod f
    std::vector<int> acc = y;
    for (int i = 0; i < d; ++i) acc = zp_powmod(acc, p, f, p);
    std::vector<int> diff = acc;
    for (size_t i = 0; i < y.size(); ++i) diff[i] = ((diff[i] - y[i]) % p + p) % p;
    if (!zp_trim(diff).empty()) return false;
    // gcd(y^(p^(d/l)) - y, f) == 1 for every prime l | d
    int dd = d;
    for (int l = 2; l * l <= dd; ++l) {
        if (dd % l) continue;
        while (dd % l == 0) dd /= l;
        std::vector<int> t = y;
        for (int i = 0; i < d / l; ++i) t = zp_powmod(t, p, f, p);
        for (size_t i = 0; i < y.size(); ++i) t[i] = ((t[i] - y[i]) % p + p) % p;
        std::vector<int> g = zp_gcd(t, f, p);
        if (g.size() != 1) return false;
    }
    if (dd > 1) {
        std::vector<int> t = y;
        for (int i = 0; i < d / dd; ++i) t = zp_powmod(t, p, f, p);
        for (size_t i = 0; i < y.size(); ++i) t[i] = ((t[i] - y[i]) % p + p) % p;
        std::vector<int> g = zp_gcd(t, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

}  // namespace detail

/// The tower F_p < F_q < K = F_{q^n} with q = p^h, K realized once as
/// F_p[y]/(modulus) of degree h*n. The subfield F is the fixed field of
/// sigma(c) = c^(q^s); all Frobenius powers are precomputed as F_p-matrices.
class FieldTower {
  public:
    FieldTower(long long p, int h, int n, int sigma_exp, std::vector<int> modulus = {}) {
        if (!is_prime_int(p)) throw std::invalid_argument("p must be prime");
        if (h < 1 || n < 2) throw std::invalid_argument("need h >= 1 and n >= 2");
        if (std::gcd(sigma_exp, n) != 1)
            throw std::invalid_argument("sigma_exp must be coprime to n");
        p_ = static_cast<int>(p);
        h_ = h;
        n_ = n;
        s_ = ((sigma_exp % n) + n) % n;
        deg_ = h * n;
        double bits = deg_ * std::log2(static_cast<double>(p_));
        if (bits > 20.5) throw std::invalid_argument("field too large: q^n > 2^20");
        if (modulus.empty()) {
            modulus_ = smallest_irreducible(p_, deg_);
        } else {
            if (static_cast<int>(modulus.size()) != deg_ + 1 || modulus.back() != 1)
                throw std::invalid_argument("modulus must be monic of degree h*n");
            for (int& c : modulus) c = ((c % p_) + p_) % p_;
            if (!detail::zp_irreducible(modulus, p_))
                throw std::invalid_argument("modulus is reducible over F_p");
            modulus_ = std::move(modulus);
        }
        build_tables();
    }

    int p() const { return p_; }
    int h() const { return h_; }
    int n() const { return n_; }
    int sigma_exp() const { return s_; }
    int ext_degree() const { return deg_; }  // [K : F_p] = h*n
    long long q() const { return q_; }
    long long order() const { return order_; }  // |K|
    const std::vector<int>& modulus() const { return modulus_; }

    Felem zero() const { return Felem{std::vector<int>(deg_, 0)}; }
    Felem one() const {
        Felem e = zero();
        e.coeffs[0] = 1;
        return e;
    }
    Felem generator() const {
        Felem e = zero();
        if (deg_ >= 2) e.coeffs[1] = 1;
        else e.coeffs[0] = 1;  // degenerate, not reachable with n >= 2
        return e;
    }
    Felem from_int(long long v) const {
        Felem e = zero();
        e.coeffs[0] = static_cast<int>(((v % p_) + p_) % p_);
        return e;
    }

    /// Canonical element ordering: ordinal(c) = sum coeffs[i] * p^i.
    long long ordinal(const Felem& a) const {
        long long o = 0;
        for (int i = deg_ - 1; i >= 0; --i) o = o * p_ + a.coeffs[i];
        return o;
    }
    Felem from_ordinal(long long o) const {
        Felem e = zero();
        for (int i = 0; i < deg_; ++i) {
            e.coeffs[i] = static_cast<int>(o % p_);
            o /= p_;
        }
        return e;
    }

    Felem add(const Felem& a, const Felem& b) const {
        Felem r = a;
        for (int i = 0; i < deg_; ++i) r.coeffs[i] = (r.coeffs[i] + b.coeffs[i]) % p_;
        return r;
    }
    Felem sub(const Felem& a, const Felem& b) const {
        Felem r = a;
        for (int i = 0; i < deg_; ++i)
            r.coeffs[i] = ((r.coeffs[i] - b.coeffs[i]) % p_ + p_) % p_;
        return r;
    }
    Felem neg(const Felem& a) const { return sub(zero(), a); }

    Felem mul(const Felem& a, const Felem& b) const {
        std::vector<int> prod = detail::zp_mulmod(a.coeffs, b.coeffs, modulus_, p_);
        return Felem{std::move(prod)};
    }

    Felem pow(const Felem& a, long long e) const {
        if (e < 0) return pow(inv(a), -e);
        Felem r = one(), base = a;
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Felem inv(const Felem& a) const {
        if (a.is_zero()) throw std::domain_error("inversion of zero");
        return pow(a, order_ - 2);
    }

    /// c -> c^(p^r), r taken mod h*n.
    Felem frob(const Felem& a, long long r) const {
        int rr = static_cast<int>(((r % deg_) + deg_) % deg_);
        return Felem{frob_[rr].apply(a.coeffs)};
    }

    /// sigma^j with sigma(c) = c^(q^s).
    Felem sigma(const Felem& a, long long j = 1) const {
        long long jj = ((j % n_) + n_) % n_;
        return frob(a, (static_cast<long long>(h_) * s_ % deg_) * jj);
    }

    bool in_F(const Felem& a) const { return frob(a, h_) == a; }

    /// True iff c lies in the proper subfield F_{p^d} of K (d a proper divisor of h*n).
    bool in_proper_subfield(const Felem& a) const {
        for (int d = 1; d < deg_; ++d)
            if (deg_ % d == 0 && frob(a, d) == a) return true;
        return false;
    }

    /// N_{K/F}(c) = prod_{j<n} sigma^j(c).
    Felem norm_K_F(const Felem& a) const {
        Felem r = one();
        for (int j = 0; j < n_; ++j) r = mul(r, sigma(a, j));
        return r;
    }

    /// Partial sigma-norm N^sigma_i(a) = prod_{j<i} sigma^j(a).
    Felem partial_sigma_norm(const Felem& a, int i) const {
        if (i < 0) throw std::invalid_argument("partial norm index must be >= 0");
        Felem r = one();
        for (int j = 0; j < i; ++j) r = mul(r, sigma(a, j));
        return r;
    }

    /// Smallest alpha (in ordinal order) with N_{K/F}(alpha) = lambda.
    Felem norm_preimage(const Felem& lambda) const {
        if (lambda.is_zero()) throw std::domain_error("norm preimage of zero");
        if (!in_F(lambda)) throw std::domain_error("lambda not in F");
        for (long long o = 1; o < order_; ++o) {
            Felem a = from_ordinal(o);
            if (norm_K_F(a) == lambda) return a;
        }
        throw std::domain_error("lambda outside the norm group");  // impossible over finite fields
    }

    /// All q elements of F = Fix(sigma), sorted by ordinal.
    const std::vector<Felem>& subfield_F() const { return f_elems_; }
    /// F_p-basis of F.
    const std::vector<Felem>& F_basis() const { return f_basis_; }

    /// Coordinates of c in the F-basis {1, y, ..., y^(n-1)} of K over F.
    std::vector<Felem> F_coords(const Felem& a) const {
        std::vector<int> raw = gamma_inv_.apply(a.coeffs);
        std::vector<Felem> out(n_, zero());
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < h_; ++j) {
                if (raw[i * h_ + j] == 0) continue;
                Felem term = f_basis_[j];
                for (int& c : term.coeffs) c = c * raw[i * h_ + j] % p_;
                out[i] = add(out[i], term);
            }
        return out;
    }

    static std::vector<int> smallest_irreducible(int p, int d) {
        // low-degree-first lexicographic scan over monic degree-d polynomials
        std::vector<int> f(d + 1, 0);
        f[d] = 1;
        while (true) {
            if (detail::zp_irreducible(f, p)) return f;
            int i = d - 1;
            while (i >= 0 && f[i] == p - 1) f[i--] = 0;
            if (i < 0) throw std::logic_error("no irreducible polynomial found");
            ++f[i];
        }
    }

  private:
    void build_tables() {
        q_ = 1;
        for (int i = 0; i < h_; ++i) q_ *= p_;
        order_ = 1;
        for (int i = 0; i < deg_; ++i) order_ *= p_;

        // frob_[1]: columns are (y^i)^p; frob_[r] = frob_[1]^r
        frob_.assign(deg_, FpMat::identity(p_, deg_));
        Felem y = generator();
        Felem yp = pow_raw(y, p_);
        FpMat f1(p_, deg_, deg_);
        Felem col = one();
        for (int i = 0; i < deg_; ++i) {
            for (int r = 0; r < deg_; ++r) f1.at(r, i) = col.coeffs[r];
            col = mul(col, yp);
        }
        frob_[1 % deg_] = f1;
        for (int r = 2; r < deg_; ++r) frob_[r] = f1 * frob_[r - 1];

        // F = Fix(c -> c^q) = kernel of frob^h - id
        FpMat fix(p_, deg_, deg_);
        const FpMat& fh = frob_[h_ % deg_];
        for (int i = 0; i < deg_; ++i)
            for (int j = 0; j < deg_; ++j)
                fix.at(i, j) = ((fh.at(i, j) - (i == j ? 1 : 0)) % p_ + p_) % p_;
        std::vector<std::vector<int>> kb = fix.kernel_basis();
        if (static_cast<int>(kb.size()) != h_)
            throw std::logic_error("unexpected dimension of the fixed field");
        f_basis_.clear();
        for (auto& v : kb) f_basis_.push_back(Felem{v});

        f_elems_.clear();
        std::vector<int> digits(h_, 0);
        while (true) {
            Felem e = zero();
            for (int j = 0; j < h_; ++j)
                for (int i = 0; i < deg_; ++i)
                    e.coeffs[i] = (e.coeffs[i] + digits[j] * f_basis_[j].coeffs[i]) % p_;
            f_elems_.push_back(e);
            int j = 0;
            while (j < h_ && digits[j] == p_ - 1) digits[j++] = 0;
            if (j == h_) break;
            ++digits[j];
        }
        std::sort(f_elems_.begin(), f_elems_.end(),
                  [this](const Felem& a, const Felem& b) { return ordinal(a) < ordinal(b); });

        // change of basis for F-coordinates: column i*h+j holds y^i * f_j
        FpMat g(p_, deg_, deg_);
        Felem ypow = one();
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < h_; ++j) {
                Felem prod = mul(ypow, f_basis_[j]);
                for (int r = 0; r < deg_; ++r) g.at(r, i * h_ + j) = prod.coeffs[r];
            }
            ypow = mul(ypow, y);
        }
        auto inv = g.inverse();
        if (!inv) throw std::logic_error("gamma-power F-basis is singular");
        gamma_inv_ = *inv;
    }

    Felem pow_raw(Felem base, long long e) const {
        Felem r = one();
        while (e > 0) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    int p_, h_, n_, s_, deg_;
    long long q_, order_;
    std::vector<int> modulus_;
    std::vector<FpMat> frob_;
    std::vector<Felem> f_basis_, f_elems_;
    FpMat gamma_inv_;
};

}  // namespace petitlab

#endif
