#ifndef PETITLAB_FP_LINALG_HPP
#define PETITLAB_FP_LINALG_HPP

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace petitlab {

inline long long mod_pow_ll(long long base, long long exp, long long mod) {
    long long r = 1 % mod;
    base %= mod;
    if (base < 0) base += mod;
    while (exp > 0) {
        if (exp & 1) r = r * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return r;
}

inline int inv_mod_prime(int a, int p) {
    a %= p;
    if (a < 0) a += p;
    if (a == 0) throw std::domain_error("inverse of zero mod p");
    return static_cast<int>(mod_pow_ll(a, p - 2, p));
}

/// Dense matrix over the prime field F_p. Entries are ints in [0, p).
class FpMat {
  public:
    FpMat() : p_(2), rows_(0), cols_(0) {}
    FpMat(int p, int rows, int cols)
        : p_(p), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0) {}

    static FpMat identity(int p, int n) {
        FpMat m(p, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    int p() const { return p_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    int& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const FpMat& o) const {
        return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    FpMat operator*(const FpMat& o) const {
        assert(cols_ == o.rows_ && p_ == o.p_);
        FpMat r(p_, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                int v = at(i, k);
                if (v == 0) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = (r.at(i, j) + v * o.at(k, j)) % p_;
            }
        return r;
    }

    std::vector<int> apply(const std::vector<int>& v) const {
        assert(static_cast<int>(v.size()) == cols_);
        std::vector<int> out(rows_, 0);
        for (int i = 0; i < rows_; ++i) {
            long long acc = 0;
            for (int j = 0; j < cols_; ++j) acc += static_cast<long long>(at(i, j)) * v[j];
            out[i] = static_cast<int>(acc % p_);
        }
        return out;
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int sel = -1;
            for (int i = r; i < rows_; ++i)
                if (at(i, c) != 0) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != r)
                for (int j = 0; j < cols_; ++j) std::swap(at(sel, j), at(r, j));
            int inv = inv_mod_prime(at(r, c), p_);
            for (int j = 0; j < cols_; ++j) at(r, j) = at(r, j) * inv % p_;
            for (int i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                int f = at(i, c);
                for (int j = 0; j < cols_; ++j)
                    at(i, j) = ((at(i, j) - f * at(r, j)) % p_ + p_) % p_;
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    int rank() const {
        FpMat m = *this;
        return static_cast<int>(m.rref().size());
    }

    /// Basis of the right kernel {v : A v = 0}, one vector per free column.
    std::vector<std::vector<int>> kernel_basis() const {
        FpMat m = *this;
        std::vector<int> pivots = m.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivots) is_pivot[c] = true;
        std::vector<std::vector<int>> basis;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            std::vector<int> v(cols_, 0);
            v[c] = 1;
            for (size_t i = 0; i < pivots.size(); ++i)
                v[pivots[i]] = (p_ - m.at(static_cast<int>(i), c)) % p_;
            basis.push_back(std::move(v));
        }
        return basis;
    }

    std::optional<FpMat> inverse() const {
        assert(rows_ == cols_);
        FpMat aug(p_, rows_, 2 * cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = 1;
        }
        std::vector<int> piv = aug.rref();
        if (static_cast<int>(piv.size()) != rows_ || piv.back() >= cols_ ||
            piv[static_cast<size_t>(rows_) - 1] != rows_ - 1)
            return std::nullopt;
        FpMat inv(p_, rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    /// One solution of A x = b, if any.
    std::optional<std::vector<int>> solve(const std::vector<int>& b) const {
        FpMat aug(p_, rows_, cols_ + 1);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_) = b[i];
        }
        std::vector<int> piv = aug.rref();
        if (!piv.empty() && piv.back() == cols_) return std::nullopt;
        std::vector<int> x(cols_, 0);
        for (size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug.at(static_cast<int>(i), cols_);
        return x;
    }

  private:
    int p_, rows_, cols_;
    std::vector<int> a_;
};

/// Incremental F_p span tracker; used by greedy basis constructions.
class FpSpan {
  public:
    FpSpan(int p, int dim) : p_(p), dim_(dim) {}

    int dim() const { return static_cast<int>(rows_.size()); }

    bool contains(const std::vector<int>& v) const {
        std::vector<int> r = reduce(v);
        for (int x : r)
            if (x != 0) return false;
        return true;
    }

    /// Adds v to the span; returns false if it was already contained.
    bool add(const std::vector<int>& v) {
        std::vector<int> r = reduce(v);
        int lead = -1;
        for (int j = 0; j < dim_; ++j)
            if (r[j] != 0) { lead = j; break; }
        if (lead < 0) return false;
        int inv = inv_mod_prime(r[lead], p_);
        for (int j = 0; j < dim_; ++j) r[j] = r[j] * inv % p_;
        rows_.push_back(std::move(r));
        leads_.push_back(lead);
        return true;
    }

  private:
    std::vector<int> reduce(std::vector<int> v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            int f = v[leads_[i]];
            if (f == 0) continue;
            for (int j = 0; j < dim_; ++j) v[j] = ((v[j] - f * rows_[i][j]) % p_ + p_) % p_;
        }
        return v;
    }

    int p_, dim_;
    std::vector<std::vector<int>> rows_;
    std::vector<int> leads_;
};

}  // namespace petitlab

#endif
