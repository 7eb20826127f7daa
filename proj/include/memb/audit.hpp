#pragma once

#include "matroid.hpp"

namespace memb {

// Tangent-space dimension audit for a realized central configuration.
// The witness supplies exact covectors over k and
// the index sets I_alpha of the multiplicity >= r points.

template <class F>
struct AuditInput {
    int r = 0, n = 0;
    Mat<F> cov;                  // columns: hyperplane covectors
    std::vector<Subset> points;  // I_alpha, |I_alpha| >= r
};

struct AuditResult {
    long dim_xc = 0;
    long lhs = 0, rhs = 0;
    bool violates = false;
};

namespace auditdetail {

// the multiple point of an index set: the unique projective common zero
template <class F>
std::vector<F> common_point(const Mat<F>& cov, int r, Subset I) {
    std::vector<int> idx;
    for (int j = 0; j < 32; ++j)
        if (I & (1u << j)) idx.push_back(j);
    Mat<F> rows((int)idx.size(), r);
    for (size_t t = 0; t < idx.size(); ++t)
        for (int i = 0; i < r; ++i) rows((int)t, i) = cov(i, idx[t]);
    if (rank(rows) != r - 1)
        fail(errc::witness_invalid, "index set is not concurrent at a single point");
    Mat<F> K = kernel(rows);
    std::vector<F> p(r);
    for (int i = 0; i < r; ++i) p[i] = K(i, 0);
    return p;
}

} // namespace auditdetail

template <class F>
void validate_witness(const AuditInput<F>& in) {
    check_central_data(in.points, in.r, in.n);
    // resolved multiple points, with exact multiplicity |I_alpha|
    for (Subset I : in.points) {
        auto p = auditdetail::common_point(in.cov, in.r, I);
        for (int j = 0; j < in.n; ++j) {
            if (I & (1u << j)) continue;
            F dot = FieldTraits<F>::zero(p[0]);
            for (int i = 0; i < in.r; ++i) dot += in.cov(i, j) * p[i];
            if (FieldTraits<F>::is_zero(dot))
                fail(errc::witness_invalid, "hyperplane through a point it is not listed on");
        }
    }
    // central off the listed points: any subset not inside an I_alpha is
    // independent, and subsets inside one are never too degenerate
    std::vector<int> pick;
    std::function<void(int)> go = [&](int start) {
        if (pick.size() >= 2) {
            Subset s = 0;
            for (int x : pick) s |= (1u << x);
            Mat<F> rows((int)pick.size(), in.r);
            for (size_t t = 0; t < pick.size(); ++t)
                for (int i = 0; i < in.r; ++i) rows((int)t, i) = in.cov(i, pick[t]);
            int rk = rank(rows);
            bool inside = false;
            for (Subset I : in.points) inside = inside || ((s & ~I) == 0);
            if (inside) {
                if (rk < std::min((int)pick.size(), in.r - 1))
                    fail(errc::witness_invalid, "degenerate subset at a multiple point");
            } else if (rk < std::min((int)pick.size(), in.r)) {
                fail(errc::witness_invalid, "unlisted degenerate subset");
            }
        }
        if ((int)pick.size() == in.r) return;
        for (int c = start; c < in.n; ++c) {
            pick.push_back(c);
            go(c + 1);
            pick.pop_back();
        }
    };
    go(0);
}

// first-order dimension of the incidence-constrained configuration space at
// the witness, minus the projective gauges and PGL_r
template <class F>
AuditResult dimension_audit(const AuditInput<F>& in) {
    validate_witness(in);
    int r = in.r, n = in.n;
    int np = (int)in.points.size();
    std::vector<std::vector<F>> pts;
    for (Subset I : in.points) pts.push_back(auditdetail::common_point(in.cov, r, I));

    // unknowns: perturbations of the n covectors, then of the np points
    int vars = n * r + np * r;
    long rows = 0;
    for (Subset I : in.points) rows += popcount(I);
    Mat<F> sys((int)rows, vars, FieldTraits<F>::zero(in.cov(0, 0)));
    int row = 0;
    for (int a = 0; a < np; ++a) {
        Subset I = in.points[a];
        for (int j = 0; j < n; ++j) {
            if (!(I & (1u << j))) continue;
            // d(v_j . p_a) = dv_j . p_a + v_j . dp_a = 0
            for (int i = 0; i < r; ++i) {
                sys(row, j * r + i) = pts[a][i];
                sys(row, n * r + a * r + i) = in.cov(i, j);
            }
            ++row;
        }
    }
    long tangent = vars - rank(sys);
    AuditResult res;
    // subtract covector scalings, point scalings, and pgl_r
    res.dim_xc = tangent - n - np - ((long)r * r - 1);
    res.lhs = res.dim_xc;
    for (Subset I : in.points) res.lhs += popcount(I) - r + 1;
    res.rhs = (long)n * (r - 1) - (long)r * r + 1;
    res.violates = res.lhs > res.rhs;
    return res;
}

} // namespace memb
