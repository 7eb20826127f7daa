#pragma once

#include <gmpxx.h>

#include <vector>

#include "errors.hpp"

namespace memb {

// Integer (mpz) matrices: rank, Hermite row basis, Smith normal form.
// Everything here is exact; sizes stay at desk scale.
struct ZMat {
    int rows = 0, cols = 0;
    std::vector<mpz_class> a;

    ZMat() = default;
    ZMat(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0) {}

    mpz_class& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const mpz_class& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < rows; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
};

inline int zrank(ZMat m) {
    int rk = 0;
    for (int col = 0; col < m.cols && rk < m.rows; ++col) {
        int piv = -1;
        for (int i = rk; i < m.rows; ++i)
            if (m(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        m.swap_rows(piv, rk);
        for (int i = rk + 1; i < m.rows; ++i) {
            if (m(i, col) == 0) continue;
            // fraction-free row elimination
            mpz_class g = gcd(m(rk, col), m(i, col));
            mpz_class fa = m(i, col) / g, fb = m(rk, col) / g;
            for (int j = col; j < m.cols; ++j)
                m(i, j) = fb * m(i, j) - fa * m(rk, j);
        }
        ++rk;
    }
    return rk;
}

// Hermite-style row basis of the row lattice; returns a matrix whose rows are
// a Z-basis of the lattice generated by the input rows.
inline ZMat z_row_basis(ZMat m) {
    int r = 0;
    for (int col = 0; col < m.cols && r < m.rows; ++col) {
        // reduce column below r to a single nonzero via gcd steps
        while (true) {
            int piv = -1;
            for (int i = r; i < m.rows; ++i)
                if (m(i, col) != 0 && (piv < 0 || abs(m(i, col)) < abs(m(piv, col)))) piv = i;
            if (piv < 0) break;
            m.swap_rows(piv, r);
            bool clean = true;
            for (int i = r + 1; i < m.rows; ++i) {
                if (m(i, col) == 0) continue;
                mpz_class q = m(i, col) / m(r, col); // truncated division
                if (q != 0)
                    for (int j = 0; j < m.cols; ++j) m(i, j) -= q * m(r, j);
                if (m(i, col) != 0) clean = false;
            }
            if (clean) break;
        }
        if (m(r, col) != 0) {
            if (m(r, col) < 0)
                for (int j = 0; j < m.cols; ++j) m(r, j) = -m(r, j);
            ++r;
        }
    }
    m.rows = r;
    m.a.resize((size_t)r * m.cols);
    return m;
}

// invariant factors d_1 | d_2 | ... (nonzero ones only)
inline std::vector<mpz_class> smith_invariants(ZMat m) {
    std::vector<mpz_class> divs;
    int t = 0;
    while (t < m.rows && t < m.cols) {
        int bi = -1, bj = -1;
        for (int i = t; i < m.rows; ++i)
            for (int j = t; j < m.cols; ++j)
                if (m(i, j) != 0 && (bi < 0 || abs(m(i, j)) < abs(m(bi, bj)))) { bi = i; bj = j; }
        if (bi < 0) break;
        m.swap_rows(bi, t);
        m.swap_cols(bj, t);
        bool again = false;
        for (int i = t + 1; i < m.rows; ++i) {
            if (m(i, t) == 0) continue;
            mpz_class q = m(i, t) / m(t, t);
            for (int j = t; j < m.cols; ++j) m(i, j) -= q * m(t, j);
            if (m(i, t) != 0) again = true;
        }
        for (int j = t + 1; j < m.cols; ++j) {
            if (m(t, j) == 0) continue;
            mpz_class q = m(t, j) / m(t, t);
            for (int i = t; i < m.rows; ++i) m(i, j) -= q * m(i, t);
            if (m(t, j) != 0) again = true;
        }
        if (again) continue;
        // pivot must divide the rest of the submatrix
        bool fixed = false;
        for (int i = t + 1; i < m.rows && !fixed; ++i)
            for (int j = t + 1; j < m.cols && !fixed; ++j)
                if (m(i, j) % m(t, t) != 0) {
                    for (int k = t; k < m.cols; ++k) m(t, k) += m(i, k);
                    fixed = true;
                }
        if (fixed) continue;
        divs.push_back(abs(m(t, t)));
        ++t;
    }
    return divs;
}

// true iff the lattice spanned by the rows is saturated in Z^cols
inline bool rows_saturated(const ZMat& m) {
    for (auto& d : smith_invariants(m))
        if (d != 1) return false;
    return true;
}

// basis (as rows) of the integer kernel {x : A x = 0}; saturated by nature
inline ZMat z_kernel_basis(const ZMat& a) {
    int n = a.cols;
    ZMat h = a;
    ZMat u(n, n);
    for (int i = 0; i < n; ++i) u(i, i) = 1;
    int piv_col = 0;
    for (int row = 0; row < h.rows && piv_col < n; ++row) {
        while (true) {
            int best = -1;
            for (int j = piv_col; j < n; ++j)
                if (h(row, j) != 0 && (best < 0 || abs(h(row, j)) < abs(h(row, best)))) best = j;
            if (best < 0) break;
            h.swap_cols(best, piv_col);
            u.swap_cols(best, piv_col);
            bool clean = true;
            for (int j = piv_col + 1; j < n; ++j) {
                if (h(row, j) == 0) continue;
                mpz_class q = h(row, j) / h(row, piv_col);
                if (q != 0)
                    for (int t = 0; t < h.rows; ++t) h(t, j) -= q * h(t, piv_col);
                if (q != 0)
                    for (int t = 0; t < n; ++t) u(t, j) -= q * u(t, piv_col);
                if (h(row, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h(row, piv_col) != 0) ++piv_col;
    }
    // columns of u whose h-column vanished form the kernel basis
    ZMat k(0, n);
    std::vector<std::vector<mpz_class>> rows;
    for (int j = piv_col; j < n; ++j) {
        bool zero = true;
        for (int t = 0; t < h.rows; ++t) zero = zero && h(t, j) == 0;
        if (!zero) continue;
        std::vector<mpz_class> r(n);
        for (int t = 0; t < n; ++t) r[t] = u(t, j);
        rows.push_back(std::move(r));
    }
    k.rows = (int)rows.size();
    k.a.resize((size_t)k.rows * n);
    for (int i = 0; i < k.rows; ++i)
        for (int j = 0; j < n; ++j) k(i, j) = rows[i][j];
    return k;
}

// rows spanning the saturation of the row lattice of m inside Z^cols
inline ZMat saturated_row_basis(const ZMat& m) { return z_kernel_basis(z_kernel_basis(m)); }

} // namespace memb
