#ifndef PETITLAB_KMAT_HPP
#define PETITLAB_KMAT_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace petitlab {

/// Dense square-or-rectangular matrix over K.
class KMat {
  public:
    KMat() : rows_(0), cols_(0) {}
    KMat(const FieldTower& tw, int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, tw.zero()) {}

    static KMat identity(const FieldTower& tw, int n) {
        KMat m(tw, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = tw.one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Felem& at(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const Felem& at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    bool operator==(const KMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    KMat mul(const FieldTower& tw, const KMat& o) const {
        KMat r(tw, rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                if (at(i, k).is_zero()) continue;
                for (int j = 0; j < o.cols_; ++j)
                    r.at(i, j) = tw.add(r.at(i, j), tw.mul(at(i, k), o.at(k, j)));
            }
        return r;
    }

    std::vector<Felem> apply(const FieldTower& tw, const std::vector<Felem>& v) const {
        std::vector<Felem> out(rows_, tw.zero());
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                out[i] = tw.add(out[i], tw.mul(at(i, j), v[j]));
        return out;
    }

    /// Entrywise p^r-power Frobenius.
    KMat frob(const FieldTower& tw, int r) const {
        KMat m = *this;
        for (Felem& x : m.a_) x = tw.frob(x, r);
        return m;
    }

    int rank(const FieldTower& tw) const {
        KMat m = *this;
        int r = 0;
        for (int c = 0; c < cols_ && r < rows_; ++c) {
            int sel = -1;
            for (int i = r; i < rows_; ++i)
                if (!m.at(i, c).is_zero()) { sel = i; break; }
            if (sel < 0) continue;
            for (int j = 0; j < cols_; ++j) std::swap(m.at(sel, j), m.at(r, j));
            Felem inv = tw.inv(m.at(r, c));
            for (int j = 0; j < cols_; ++j) m.at(r, j) = tw.mul(inv, m.at(r, j));
            for (int i = 0; i < rows_; ++i) {
                if (i == r || m.at(i, c).is_zero()) continue;
                Felem fct = m.at(i, c);
                for (int j = 0; j < cols_; ++j)
                    m.at(i, j) = tw.sub(m.at(i, j), tw.mul(fct, m.at(r, j)));
            }
            ++r;
        }
        return r;
    }

    std::optional<KMat> inverse(const FieldTower& tw) const {
        if (rows_ != cols_) return std::nullopt;
        KMat m = *this;
        KMat inv = identity(tw, rows_);
        for (int c = 0; c < cols_; ++c) {
            int sel = -1;
            for (int i = c; i < rows_; ++i)
                if (!m.at(i, c).is_zero()) { sel = i; break; }
            if (sel < 0) return std::nullopt;
            for (int j = 0; j < cols_; ++j) {
                std::swap(m.at(sel, j), m.at(c, j));
                std::swap(inv.at(sel, j), inv.at(c, j));
            }
            Felem iv = tw.inv(m.at(c, c));
            for (int j = 0; j < cols_; ++j) {
                m.at(c, j) = tw.mul(iv, m.at(c, j));
                inv.at(c, j) = tw.mul(iv, inv.at(c, j));
            }
            for (int i = 0; i < rows_; ++i) {
                if (i == c || m.at(i, c).is_zero()) continue;
                Felem fct = m.at(i, c);
                for (int j = 0; j < cols_; ++j) {
                    m.at(i, j) = tw.sub(m.at(i, j), tw.mul(fct, m.at(c, j)));
                    inv.at(i, j) = tw.sub(inv.at(i, j), tw.mul(fct, inv.at(c, j)));
                }
            }
        }
        return inv;
    }

    bool invertible(const FieldTower& tw) const { return rows_ == cols_ && rank(tw) == rows_; }

    /// Row-major ordinal string, usable as a deterministic set key.
    std::string key(const FieldTower& tw) const {
        std::ostringstream os;
        for (const Felem& x : a_) os << tw.ordinal(x) << ',';
        return os.str();
    }

  private:
    int rows_, cols_;
    std::vector<Felem> a_;
};

}  // namespace petitlab

#endif
