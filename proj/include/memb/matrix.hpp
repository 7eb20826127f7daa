#pragma once

#include <optional>
#include <vector>

#include "ratfunc.hpp"

namespace memb {

template <class T>
struct Mat {
    int rows = 0, cols = 0;
    std::vector<T> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a((size_t)r * c) {}
    Mat(int r, int c, T fill) : rows(r), cols(c), a((size_t)r * c, fill) {}

    T& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const T& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

    static Mat identity(int n, const T& one, const T& zero) {
        Mat m(n, n, zero);
        for (int i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::vector<T> col(int j) const {
        std::vector<T> v(rows);
        for (int i = 0; i < rows; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(int j, const std::vector<T>& v) {
        for (int i = 0; i < rows; ++i) (*this)(i, j) = v[i];
    }
    Mat transpose() const {
        Mat m(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(j, i) = (*this)(i, j);
        return m;
    }
    friend Mat operator*(const Mat& x, const Mat& y) {
        Mat m(x.rows, y.cols);
        for (int i = 0; i < x.rows; ++i)
            for (int j = 0; j < y.cols; ++j) {
                T acc = x(i, 0) * y(0, j);
                for (int k = 1; k < x.cols; ++k) acc += x(i, k) * y(k, j);
                m(i, j) = acc;
            }
        return m;
    }
    friend bool operator==(const Mat& x, const Mat& y) {
        return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
    }
    friend bool operator!=(const Mat& x, const Mat& y) { return !(x == y); }
};

template <class T>
int mat_cmp(const Mat<T>& x, const Mat<T>& y) {
    if (x.rows != y.rows) return x.rows < y.rows ? -1 : 1;
    if (x.cols != y.cols) return x.cols < y.cols ? -1 : 1;
    for (size_t i = 0; i < x.a.size(); ++i)
        if (int s = FieldTraits<T>::cmp(x.a[i], y.a[i]); s != 0) return s;
    return 0;
}

// --------------------------------------------------------------------------
// generic Gaussian elimination over a field

template <class F>
int rank(Mat<F> m) {
    if (m.rows == 0 || m.cols == 0) return 0;
    int rk = 0;
    for (int col = 0; col < m.cols && rk < m.rows; ++col) {
        int piv = -1;
        for (int i = rk; i < m.rows; ++i)
            if (!FieldTraits<F>::is_zero(m(i, col))) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rk, j));
        F inv = FieldTraits<F>::inv(m(rk, col));
        for (int i = rk + 1; i < m.rows; ++i) {
            if (FieldTraits<F>::is_zero(m(i, col))) continue;
            F f = m(i, col) * inv;
            for (int j = col; j < m.cols; ++j) m(i, j) -= f * m(rk, j);
        }
        ++rk;
    }
    return rk;
}

// reduced row echelon form; returns pivot columns
template <class F>
std::vector<int> rref(Mat<F>& m) {
    std::vector<int> pivots;
    int rk = 0;
    for (int col = 0; col < m.cols && rk < m.rows; ++col) {
        int piv = -1;
        for (int i = rk; i < m.rows; ++i)
            if (!FieldTraits<F>::is_zero(m(i, col))) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m(piv, j), m(rk, j));
        F inv = FieldTraits<F>::inv(m(rk, col));
        for (int j = col; j < m.cols; ++j) m(rk, j) *= inv;
        for (int i = 0; i < m.rows; ++i) {
            if (i == rk || FieldTraits<F>::is_zero(m(i, col))) continue;
            F f = m(i, col);
            for (int j = col; j < m.cols; ++j) m(i, j) -= f * m(rk, j);
        }
        pivots.push_back(col);
        ++rk;
    }
    m.rows = rk;
    m.a.resize((size_t)rk * m.cols);
    return pivots;
}

// exact solution of A x = b for square nonsingular A
template <class F>
std::vector<F> solve_linear(Mat<F> m, std::vector<F> b) {
    if (m.rows != m.cols || (int)b.size() != m.rows)
        fail(errc::bad_input, "solve_linear needs square A and matching b");
    int n = m.rows;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!FieldTraits<F>::is_zero(m(i, k))) { piv = i; break; }
        if (piv < 0) fail(errc::singular_matrix, "singular matrix in solve_linear");
        for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
        std::swap(b[piv], b[k]);
        F inv = FieldTraits<F>::inv(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (FieldTraits<F>::is_zero(m(i, k))) continue;
            F f = m(i, k) * inv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
            b[i] -= f * b[k];
        }
    }
    std::vector<F> x(b);
    for (int i = n - 1; i >= 0; --i) {
        F acc = x[i];
        for (int j = i + 1; j < n; ++j) acc -= m(i, j) * x[j];
        x[i] = acc * FieldTraits<F>::inv(m(i, i));
    }
    return x;
}

template <class F>
Mat<F> inverse(const Mat<F>& m) {
    if (m.rows != m.cols) fail(errc::bad_input, "inverse of non-square matrix");
    int n = m.rows;
    if (n == 0) return m;
    F one = FieldTraits<F>::one(m(0, 0)), zero = FieldTraits<F>::zero(m(0, 0));
    Mat<F> aug(n, 2 * n, zero);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one;
    }
    auto piv = rref(aug);
    if ((int)piv.size() != n || piv[n - 1] != n - 1)
        fail(errc::singular_matrix, "matrix not invertible");
    Mat<F> r(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

// basis of the right kernel, one column per basis vector
template <class F>
Mat<F> kernel(Mat<F> m) {
    int nc = m.cols;
    auto pivots = rref(m);
    std::vector<bool> is_piv(nc, false);
    for (int p : pivots) is_piv[p] = true;
    F one = m.a.empty() ? F{} : FieldTraits<F>::one(m.a[0]);
    F zero = m.a.empty() ? F{} : FieldTraits<F>::zero(m.a[0]);
    int free = nc - (int)pivots.size();
    Mat<F> K(nc, free, zero);
    int kcol = 0;
    for (int j = 0; j < nc; ++j) {
        if (is_piv[j]) continue;
        K(j, kcol) = one;
        for (int i = 0; i < (int)pivots.size(); ++i) K(pivots[i], kcol) = -m(i, j);
        ++kcol;
    }
    return K;
}

// determinant over a plain field by Gaussian elimination
template <class F>
F det_field(Mat<F> m) {
    if (m.rows != m.cols) fail(errc::bad_input, "det of non-square matrix");
    int n = m.rows;
    if (n == 0) fail(errc::bad_input, "det of empty matrix");
    F d = FieldTraits<F>::one(m(0, 0));
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!FieldTraits<F>::is_zero(m(i, k))) { piv = i; break; }
        if (piv < 0) return FieldTraits<F>::zero(m(0, 0));
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        F inv = FieldTraits<F>::inv(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            if (FieldTraits<F>::is_zero(m(i, k))) continue;
            F f = m(i, k) * inv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

// --------------------------------------------------------------------------
// fraction-free (Bareiss) determinant over K: rows are cleared of
// denominators first, elimination then stays inside k[z] with exact division.

template <class F>
RatFunc<F> det(const Mat<RatFunc<F>>& m) {
    if (m.rows != m.cols) fail(errc::bad_input, "det of non-square matrix");
    int n = m.rows;
    if (n == 0) return RatFunc<F>(Poly<F>(RatFunc<F>::mk_one()));
    using P = Poly<F>;
    F one = RatFunc<F>::mk_one();
    Mat<P> b(n, n, P{});
    P scale(one); // det(m) = det(b) / scale
    for (int i = 0; i < n; ++i) {
        P lcm(one);
        for (int j = 0; j < n; ++j) {
            const P& d = m(i, j).den;
            lcm = lcm * (d / poly_gcd(lcm, d));
        }
        for (int j = 0; j < n; ++j)
            b(i, j) = m(i, j).num * (lcm / m(i, j).den);
        scale = scale * lcm;
    }
    P prev(one);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (b(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!b(i, k).is_zero()) { piv = i; break; }
            if (piv < 0) return RatFunc<F>{};
            for (int j = 0; j < n; ++j) std::swap(b(piv, j), b(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                P t = b(i, j) * b(k, k) - b(i, k) * b(k, j);
                b(i, j) = t / prev; // exact by the Bareiss identity
            }
            b(i, k) = P{};
        }
        prev = b(k, k);
    }
    P d = b(n - 1, n - 1);
    if (sign < 0) d = -d;
    return RatFunc<F>(d, scale);
}

template <class F>
RatFunc<F> det_gauss(Mat<RatFunc<F>> m) { // independent route, used as oracle
    if (m.rows != m.cols) fail(errc::bad_input, "det of non-square matrix");
    int n = m.rows;
    RatFunc<F> d(Poly<F>(RatFunc<F>::mk_one()));
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n; ++i)
            if (!m(i, k).is_zero()) { piv = i; break; }
        if (piv < 0) return RatFunc<F>{};
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            d = -d;
        }
        d *= m(k, k);
        RatFunc<F> inv = RatFunc<F>(Poly<F>(RatFunc<F>::mk_one())) / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            RatFunc<F> f = m(i, k) * inv;
            for (int j = k; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return d;
}

// --------------------------------------------------------------------------
// valuation helpers and Smith normal form over the DVR R = k[[z]] cap K

using MatK = Mat<Scalar>;
using VecK = std::vector<Scalar>;

inline long min_val(const MatK& m) {
    long v = VAL_INF;
    for (auto& x : m.a) v = std::min(v, x.val());
    return v;
}

inline Scalar zpow(long k) { return Scalar::z_power(k, mpq_class(1)); }

inline MatK scale_mat(const MatK& m, const Scalar& c) {
    MatK r = m;
    for (auto& x : r.a) x *= c;
    return r;
}

// exponents of the elementary divisors of a nonsingular matrix over R,
// ascending (pivot at each step is a global minimum-valuation entry)
inline std::vector<long> dvr_smith_exponents(MatK b) {
    int n = b.rows;
    std::vector<long> exps;
    for (int t = 0; t < n; ++t) {
        long best = VAL_INF;
        int bi = -1, bj = -1;
        for (int i = t; i < n; ++i)
            for (int j = t; j < n; ++j) {
                long v = b(i, j).val();
                if (v < best) { best = v; bi = i; bj = j; }
            }
        if (bi < 0) fail(errc::singular_matrix, "singular matrix in Smith form");
        for (int j = 0; j < n; ++j) std::swap(b(bi, j), b(t, j));
        for (int i = 0; i < n; ++i) std::swap(b(i, bj), b(i, t));
        Scalar p = b(t, t);
        for (int i = t + 1; i < n; ++i) {
            if (b(i, t).is_zero()) continue;
            Scalar f = b(i, t) / p;
            for (int j = t; j < n; ++j) b(i, j) -= f * b(t, j);
        }
        for (int j = t + 1; j < n; ++j) {
            if (b(t, j).is_zero()) continue;
            Scalar f = b(t, j) / p;
            for (int i = t; i < n; ++i) b(i, j) -= f * b(i, t);
        }
        exps.push_back(best);
    }
    std::sort(exps.begin(), exps.end());
    return exps;
}

} // namespace memb
