#ifndef KGT_LINALG_HPP
#define KGT_LINALG_HPP

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "kgt/rational.hpp"

namespace kgt {

// Small dense matrix over an exact ring (Int or Rational).
template <typename T>
class Mat {
public:
    Mat() : rows_(0), cols_(0) {}
    Mat(std::size_t r, std::size_t c, T fill = T(0)) : rows_(r), cols_(c), a_(r * c, fill) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    Mat transpose() const {
        Mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("Mat: dimension mismatch");
        Mat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& v = (*this)(i, k);
                if (v == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }

    Mat operator+(const Mat& o) const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
        return r;
    }

    Mat operator-(const Mat& o) const {
        Mat r(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
        return r;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    void swap_rows(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
    // row[i] += c * row[j]
    void add_row(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
    }
    void add_col(std::size_t i, std::size_t j, const T& c) {
        for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
    }
    void scale_row(std::size_t i, const T& c) {
        for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) *= c;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> a_;
};

using IMat = Mat<Int>;
using RMat = Mat<Rational>;

inline RMat to_rational(const IMat& m) {
    RMat r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
    return r;
}

// Fraction-free determinant (Bareiss).
inline Int det(const IMat& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("det: not square");
    std::size_t n = m0.rows();
    if (n == 0) return 1;
    IMat m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

inline Rational det(const RMat& m0) {
    if (m0.rows() != m0.cols()) throw std::invalid_argument("det: not square");
    std::size_t n = m0.rows();
    RMat m = m0;
    Rational d(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return Rational(0);
        if (p != k) { m.swap_rows(k, p); d = -d; }
        d *= m(k, k);
        Rational inv = Rational(1) / m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = m(i, k) * inv;
            if (f == 0) continue;
            for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

// Solve A x = b over the rationals; throws if A is singular.
inline std::vector<Rational> solve(const RMat& a0, const std::vector<Rational>& b0) {
    std::size_t n = a0.rows();
    if (a0.cols() != n || b0.size() != n) throw std::invalid_argument("solve: shape");
    RMat m(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a0(i, j);
        m(i, n) = b0[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) throw std::domain_error("solve: singular system");
        if (p != k) m.swap_rows(k, p);
        Rational inv = Rational(1) / m(k, k);
        for (std::size_t j = k; j <= n; ++j) m(k, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = m(i, k);
            for (std::size_t j = k; j <= n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n);
    return x;
}

inline RMat inverse(const RMat& a) {
    std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse: not square");
    RMat m(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
        m(i, n + i) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < 2 * n && p < n && m(p, k) == 0) ++p;
        if (p == n || m(p, k) == 0) throw std::domain_error("inverse: singular matrix");
        if (p != k) m.swap_rows(k, p);
        Rational inv = Rational(1) / m(k, k);
        for (std::size_t j = 0; j < 2 * n; ++j) m(k, j) *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m(i, k) == 0) continue;
            Rational f = m(i, k);
            for (std::size_t j = 0; j < 2 * n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    RMat out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, n + j);
    return out;
}

inline RMat inverse(const IMat& a) { return inverse(to_rational(a)); }

struct SmithForm {
    IMat s;  // diagonal, nonnegative, s(i,i) | s(i+1,i+1)
    IMat u;  // unimodular: u * a * v == s
    IMat v;
};

// Smith normal form with transform tracking.
inline SmithForm smith_normal_form(const IMat& a0) {
    std::size_t n = a0.rows(), m = a0.cols();
    SmithForm f{a0, IMat::identity(n), IMat::identity(m)};
    IMat& s = f.s;
    auto nonzero_at = [&](std::size_t t, std::size_t& pi, std::size_t& pj) {
        Int best = 0;
        bool found = false;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < m; ++j) {
                if (s(i, j) == 0) continue;
                Int v = abs(s(i, j));
                if (!found || v < best) { best = v; pi = i; pj = j; found = true; }
            }
        return found;
    };
    std::size_t r = std::min(n, m);
    for (std::size_t t = 0; t < r; ++t) {
        std::size_t pi = t, pj = t;
        if (!nonzero_at(t, pi, pj)) break;
        if (pi != t) { s.swap_rows(t, pi); f.u.swap_rows(t, pi); }
        if (pj != t) { s.swap_cols(t, pj); f.v.swap_cols(t, pj); }
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                if (s(i, t) == 0) continue;
                Int q = floor_div(s(i, t), s(t, t));
                s.add_row(i, t, -q);
                f.u.add_row(i, t, -q);
                if (s(i, t) != 0) {  // remainder smaller than pivot: swap up and retry
                    s.swap_rows(t, i);
                    f.u.swap_rows(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                if (s(t, j) == 0) continue;
                Int q = floor_div(s(t, j), s(t, t));
                s.add_col(j, t, -q);
                f.v.add_col(j, t, -q);
                if (s(t, j) != 0) {
                    s.swap_cols(t, j);
                    f.v.swap_cols(t, j);
                    clean = false;
                }
            }
        }
        // divisibility: pivot must divide the rest of the block
        for (std::size_t i = t + 1; i < n && s(t, t) != 0; ++i) {
            bool bad = false;
            for (std::size_t j = t + 1; j < m; ++j)
                if (s(i, j) % s(t, t) != 0) { bad = true; break; }
            if (bad) {
                s.add_row(t, i, 1);
                f.u.add_row(t, i, 1);
                --t;  // redo this pivot
                break;
            }
        }
    }
    for (std::size_t t = 0; t < r; ++t) {
        if (s(t, t) < 0) {
            s.scale_row(t, Int(-1));
            f.u.scale_row(t, Int(-1));
        }
    }
    return f;
}

// Row-style Hermite normal form: returns H with the same row span over Z,
// rows echelonized left-to-right, positive pivots, entries above a pivot
// reduced into [0, pivot). Zero rows dropped.
inline IMat hermite_normal_form(const IMat& a0) {
    IMat h = a0;
    std::size_t n = h.rows(), m = h.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        // gcd-reduce the column below `row`
        while (true) {
            std::size_t p = n;
            Int best = 0;
            for (std::size_t i = row; i < n; ++i) {
                if (h(i, col) == 0) continue;
                Int v = abs(h(i, col));
                if (p == n || v < best) { p = i; best = v; }
            }
            if (p == n) break;  // column clear
            if (p != row) h.swap_rows(row, p);
            bool done = true;
            for (std::size_t i = row + 1; i < n; ++i) {
                if (h(i, col) == 0) continue;
                Int q = floor_div(h(i, col), h(row, col));
                h.add_row(i, row, -q);
                if (h(i, col) != 0) done = false;
            }
            if (done) break;
        }
        if (h(row, col) == 0) continue;
        if (h(row, col) < 0) h.scale_row(row, Int(-1));
        for (std::size_t i = 0; i < row; ++i) {
            Int q = floor_div(h(i, col), h(row, col));
            if (q != 0) h.add_row(i, row, -q);
        }
        ++row;
    }
    IMat out(row, m);
    for (std::size_t i = 0; i < row; ++i)
        for (std::size_t j = 0; j < m; ++j) out(i, j) = h(i, j);
    return out;
}

// Signature of a symmetric rational matrix: (positive, negative, zero)
// inertia counts via symmetric (congruence) diagonalization.
inline std::tuple<int, int, int> signature(const RMat& a0) {
    if (!a0.is_symmetric()) throw std::invalid_argument("signature: not symmetric");
    RMat a = a0;
    std::size_t n = a.rows();
    int pos = 0, neg = 0, zero = 0;
    std::vector<bool> used(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t p = n;
        for (std::size_t i = 0; i < n; ++i)
            if (!used[i] && a(i, i) != 0) { p = i; break; }
        if (p == n) {
            // all remaining diagonal entries vanish; find an off-diagonal entry
            std::size_t bi = n, bj = n;
            for (std::size_t i = 0; i < n && bi == n; ++i) {
                if (used[i]) continue;
                for (std::size_t j = i + 1; j < n; ++j)
                    if (!used[j] && a(i, j) != 0) { bi = i; bj = j; break; }
            }
            if (bi == n) { zero += static_cast<int>(n - step); break; }
            // rows/cols bi,bj span a hyperbolic-type block; v = e_bi + e_bj gets
            // a nonzero diagonal after the congruence a += shift
            for (std::size_t k = 0; k < n; ++k) a(bi, k) += a(bj, k);
            for (std::size_t k = 0; k < n; ++k) a(k, bi) += a(k, bj);
            p = bi;
        }
        if (a(p, p) > 0) ++pos; else ++neg;
        Rational piv = a(p, p);
        used[p] = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i] || a(i, p) == 0) continue;
            Rational f = a(i, p) / piv;
            for (std::size_t k = 0; k < n; ++k) a(i, k) -= f * a(p, k);
            for (std::size_t k = 0; k < n; ++k) a(k, i) -= f * a(k, p);
        }
    }
    return {pos, neg, zero};
}

}  // namespace kgt

#endif
