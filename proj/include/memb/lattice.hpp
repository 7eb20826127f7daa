#pragma once

#include <algorithm>
#include <optional>
#include <set>

#include "matrix.hpp"

namespace memb {

// Class [M] of a rank-r free R-submodule of K^r.  The stored basis matrix is
// the column Hermite form over R: lower triangular, diagonal z^{d_i} with
// d_i >= 0 and min_i d_i = 0, and every below-diagonal entry equal to its own
// Laurent expansion truncated below the pivot exponent of its row.  Two
// values are the same class iff the matrices are identical.
struct LatticeClass {
    int r = 0;
    MatK basis;

    friend bool operator==(const LatticeClass& x, const LatticeClass& y) {
        return x.r == y.r && x.basis == y.basis;
    }
    friend bool operator!=(const LatticeClass& x, const LatticeClass& y) { return !(x == y); }
    friend bool operator<(const LatticeClass& x, const LatticeClass& y) {
        return mat_cmp(x.basis, y.basis) < 0;
    }

    std::vector<long> diag_exponents() const {
        std::vector<long> d(r);
        for (int i = 0; i < r; ++i) d[i] = basis(i, i).val();
        return d;
    }
};

// R-span of the columns; canonical form as documented on LatticeClass.
inline LatticeClass lattice_from_generators(MatK g) {
    int r = g.rows, m = g.cols;
    if (m < r) fail(errc::degenerate_span, "fewer generators than rank");
    for (int i = 0; i < r; ++i) {
        // pivot = minimal valuation entry of row i among the free columns
        long best = VAL_INF;
        int bj = -1;
        for (int j = i; j < m; ++j) {
            long v = g(i, j).val();
            if (v < best) { best = v; bj = j; }
        }
        if (bj < 0 || best == VAL_INF)
            fail(errc::degenerate_span, "generators do not span K^r");
        if (bj != i)
            for (int t = 0; t < r; ++t) std::swap(g(t, bj), g(t, i));
        const Scalar piv = g(i, i);
        for (int j = i + 1; j < m; ++j) {
            if (g(i, j).is_zero()) continue;
            Scalar f = g(i, j) / piv; // valuation >= 0, so an element of R
            for (int t = i; t < r; ++t) g(t, j) -= f * g(t, i);
        }
    }
    MatK t(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) t(i, j) = g(i, j);
    // unit column scalings make the pivots plain powers of z
    std::vector<long> d(r);
    for (int j = 0; j < r; ++j) {
        d[j] = t(j, j).val();
        Scalar u = zpow(d[j]) / t(j, j);
        for (int i = 0; i < r; ++i) t(i, j) *= u;
    }
    long s = *std::min_element(d.begin(), d.end());
    if (s != 0) {
        t = scale_mat(t, zpow(-s));
        for (auto& x : d) x -= s;
    }
    // reduce below-diagonal entries modulo the pivot power of their row
    for (int j = 0; j < r; ++j)
        for (int i = j + 1; i < r; ++i) {
            if (t(i, j).is_zero()) continue;
            Scalar rem = t(i, j).truncate_below(d[i]);
            Scalar q = (t(i, j) - rem) / zpow(d[i]);
            if (q.is_zero()) continue;
            for (int k = i; k < r; ++k) t(k, j) -= q * t(k, i);
        }
    return LatticeClass{r, std::move(t)};
}

inline LatticeClass standard_lattice(int r) {
    MatK m(r, r, Scalar{});
    for (int i = 0; i < r; ++i) m(i, i) = Scalar(mpq_class(1));
    return LatticeClass{r, std::move(m)};
}

// B contained in A, as R-spans of the columns
inline bool lattice_contains(const MatK& a, const MatK& b) {
    return min_val(inverse(a) * b) >= 0;
}

// Sorted exponent vector describing the relative position of [M] and [N]:
// elementary-divisor exponents of N^-1 M over R, shifted so the smallest is 0.
inline std::vector<long> relative_position(const LatticeClass& m, const LatticeClass& n) {
    if (m.r != n.r) fail(errc::bad_input, "relative_position: rank mismatch");
    auto e = dvr_smith_exponents(inverse(m.basis) * n.basis);
    std::vector<long> out;
    for (auto it = e.rbegin(); it != e.rend(); ++it) out.push_back(-*it);
    long mn = *std::min_element(out.begin(), out.end());
    for (auto& x : out) x -= mn;
    return out;
}

inline long position_spread(const LatticeClass& m, const LatticeClass& n) {
    auto e = relative_position(m, n);
    return e.back();
}

inline bool equivalent(const LatticeClass& m, const LatticeClass& n) { return m == n; }

inline bool incident(const LatticeClass& m, const LatticeClass& n) {
    if (m == n) fail(errc::same_class, "incidence is for distinct classes");
    return position_spread(m, n) == 1;
}

// Flag of representatives M_0 c M_1 c ... c M_m with M_0 = z M_m.
struct BuildingSimplex {
    std::vector<MatK> flag;
    int dim() const { return (int)flag.size() - 2; }
};

// Distinct pairwise incident classes order into a flag.  The
// class whose canonical matrix is lexicographically least is placed on top.
inline std::optional<BuildingSimplex> simplex_of(std::vector<LatticeClass> classes) {
    std::sort(classes.begin(), classes.end());
    classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
    if (classes.empty()) return std::nullopt;
    for (size_t i = 0; i < classes.size(); ++i)
        for (size_t j = i + 1; j < classes.size(); ++j)
            if (position_spread(classes[i], classes[j]) != 1) return std::nullopt;
    const LatticeClass& top = classes.front(); // least canonical matrix
    MatK top_inv = inverse(top.basis);
    std::vector<MatK> reps;
    for (auto& c : classes) {
        long a = -min_val(top_inv * c.basis);
        reps.push_back(scale_mat(c.basis, zpow(a)));
    }
    std::sort(reps.begin(), reps.end(),
              [](const MatK& x, const MatK& y) { return lattice_contains(y, x) && !(x == y); });
    BuildingSimplex s;
    s.flag.push_back(scale_mat(top.basis, zpow(1)));
    for (auto& m : reps) s.flag.push_back(std::move(m));
    // sanity: strict chain ending at the top representative
    for (size_t i = 0; i + 1 < s.flag.size(); ++i)
        if (!lattice_contains(s.flag[i + 1], s.flag[i]))
            fail(errc::bad_input, "simplex flag ordering failed");
    return s;
}

// z^a Theta with z^a Theta in M \ zM; returns the scaled value and a
inline std::pair<VecK, long> theta_limit(const LatticeClass& m, const VecK& v) {
    MatK col((int)v.size(), 1);
    for (int i = 0; i < col.rows; ++i) col(i, 0) = v[i];
    MatK coords = inverse(m.basis) * col;
    long a = -min_val(coords);
    if (a == -VAL_INF || min_val(coords) == VAL_INF)
        fail(errc::bad_input, "theta_limit of zero vector");
    VecK out(v.size());
    Scalar f = zpow(a);
    for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] * f;
    return {out, a};
}

inline std::pair<MatK, long> theta_limit(const LatticeClass& m, const MatK& theta) {
    MatK coords = inverse(m.basis) * theta;
    long a = -min_val(coords);
    return {scale_mat(theta, zpow(a)), a};
}

// class of M + N for explicitly scaled representatives
inline LatticeClass lattice_sum(const MatK& m, const MatK& n) {
    MatK g(m.rows, m.cols + n.cols);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) g(i, j) = m(i, j);
        for (int j = 0; j < n.cols; ++j) g(i, m.cols + j) = n(i, j);
    }
    return lattice_from_generators(g);
}

// Fixpoint closure under pairwise scaled sums [z^a M + N].  The window W
// starts at the largest pairwise spread and keeps growing until a widened
// sweep adds nothing; finiteness of the hull ends the loop.
inline std::vector<LatticeClass> convex_hull(const std::vector<LatticeClass>& input) {
    if (input.empty()) fail(errc::bad_input, "convex hull of empty set");
    std::set<LatticeClass> s(input.begin(), input.end());
    long w = 1;
    for (auto i = s.begin(); i != s.end(); ++i)
        for (auto j = std::next(i); j != s.end(); ++j)
            w = std::max(w, position_spread(*i, *j));
    int quiet_rounds = 0;
    while (quiet_rounds < 2) {
        bool added = false;
        std::vector<LatticeClass> cur(s.begin(), s.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = 0; j < cur.size(); ++j) {
                if (i == j) continue;
                for (long a = -w; a <= w; ++a) {
                    LatticeClass c =
                        lattice_sum(scale_mat(cur[i].basis, zpow(a)), cur[j].basis);
                    if (s.insert(c).second) added = true;
                }
            }
        if (added) {
            quiet_rounds = 0;
            for (auto i = s.begin(); i != s.end(); ++i)
                for (auto j = std::next(i); j != s.end(); ++j)
                    w = std::max(w, position_spread(*i, *j));
        } else {
            ++quiet_rounds;
            ++w;
        }
    }
    return {s.begin(), s.end()};
}

// --------------------------------------------------------------------------
// residues in the special fibre of a lattice

using MatQ = Mat<mpq_class>;

// k-subspace of Lambda/z Lambda, rows of `span` = RREF basis in the
// coordinates of Lambda's canonical basis
struct ResidueSubspace {
    LatticeClass ambient;
    MatQ span;

    int dim() const { return span.rows; }
    friend bool operator==(const ResidueSubspace& a, const ResidueSubspace& b) {
        return a.ambient == b.ambient && a.span == b.span;
    }
    friend bool operator<(const ResidueSubspace& a, const ResidueSubspace& b) {
        if (a.ambient != b.ambient) return a.ambient < b.ambient;
        return mat_cmp(a.span, b.span) < 0;
    }
};

inline MatQ rref_rows(MatQ m) {
    rref(m);
    // drop zero rows already handled by rref's rank trim
    return m;
}

inline bool subspace_leq(const MatQ& a, const MatQ& b) { // rowspan(a) <= rowspan(b)
    MatQ stack(a.rows + b.rows, a.cols, mpq_class(0));
    for (int i = 0; i < b.rows; ++i)
        for (int j = 0; j < a.cols; ++j) stack(i, j) = b(i, j);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) stack(b.rows + i, j) = a(i, j);
    return rank(stack) == b.rows;
}

// image of Theta^Lambda in Lambda/z Lambda
inline ResidueSubspace residue(const LatticeClass& lam, const MatK& theta) {
    MatK coords = inverse(lam.basis) * theta;
    long a = -min_val(coords);
    MatQ red(coords.cols, lam.r, mpq_class(0));
    for (int j = 0; j < coords.cols; ++j)
        for (int i = 0; i < lam.r; ++i)
            red(j, i) = (coords(i, j) * zpow(a)).at_zero();
    return ResidueSubspace{lam, rref_rows(std::move(red))};
}

// residue of a single vector, as a nonzero element of k^r (projectively
// normalised so the first nonzero coordinate is 1 when `projective`)
inline std::vector<mpq_class> residue_vector(const LatticeClass& lam, const VecK& v,
                                             bool projective = false) {
    auto [w, a] = theta_limit(lam, v);
    MatK col((int)w.size(), 1);
    for (int i = 0; i < col.rows; ++i) col(i, 0) = w[i];
    MatK coords = inverse(lam.basis) * col;
    std::vector<mpq_class> out(lam.r);
    for (int i = 0; i < lam.r; ++i) out[i] = coords(i, 0).at_zero();
    if (projective) {
        for (auto& x : out)
            if (sgn(x) != 0) {
                mpq_class inv = 1 / x;
                for (auto& y : out) y *= inv;
                break;
            }
    }
    return out;
}

// Star residue data of [N] relative to the flag of sigma: N^(M_m) + M_i with
// i maximal such that N^(M_m) is not inside M_i; the subspace is recorded
// inside M_(i+1)/z-coordinates together with its level.
struct StarResidue {
    int level;  // subspace sits in M_(level+1)/M_level
    MatQ span;  // rows span (N^(M_m) + M_level)/zM_(level+1)-ish, in M_(level+1) coords
};

inline StarResidue star_residue(const BuildingSimplex& sig, const LatticeClass& n) {
    const MatK& top = sig.flag.back();
    auto [nc, a] = theta_limit(LatticeClass{top.rows, top}, n.basis);
    (void)a;
    int i = 0;
    for (int t = (int)sig.flag.size() - 2; t >= 0; --t) {
        if (!lattice_contains(sig.flag[t], nc)) { i = t; break; }
    }
    const MatK& mi1 = sig.flag[i + 1];
    MatK gens(top.rows, nc.cols + sig.flag[i].cols);
    for (int r = 0; r < top.rows; ++r) {
        for (int j = 0; j < nc.cols; ++j) gens(r, j) = nc(r, j);
        for (int j = 0; j < sig.flag[i].cols; ++j) gens(r, nc.cols + j) = sig.flag[i](r, j);
    }
    MatK coords = inverse(mi1) * gens;
    MatQ red(coords.cols, top.rows, mpq_class(0));
    for (int j = 0; j < coords.cols; ++j)
        for (int r = 0; r < top.rows; ++r) red(j, r) = coords(r, j).at_zero();
    return StarResidue{i, rref_rows(std::move(red))};
}

// --------------------------------------------------------------------------
// uniformizer extension, via the substitution z -> t^m

inline Scalar substitute_z_power(const Scalar& s, int m) {
    auto stretch = [&](const Poly<mpq_class>& p) {
        Poly<mpq_class> q;
        if (p.is_zero()) return q;
        q.c.assign((size_t)p.deg() * m + 1, mpq_class(0));
        for (int i = 0; i <= p.deg(); ++i) q.c[(size_t)i * m] = p.c[i];
        q.trim();
        return q;
    };
    return Scalar(stretch(s.num), stretch(s.den));
}

struct UniformizerExtension {
    LatticeClass result;   // lattice over k(t), t^m = z
    int m;
    int residue_rank;      // rank of the assembled residue map; r iff iso
};

inline UniformizerExtension extend_uniformizer(const BuildingSimplex& sig, int m) {
    int r = sig.flag.back().rows;
    if (m < r) fail(errc::bad_input, "extend_uniformizer needs m >= r");
    int k = (int)sig.flag.size() - 1; // number of classes in the flag
    MatK gens(r, k * r);
    for (int i = 1; i <= k; ++i) {
        Scalar om = zpow(i - 1); // omega^(i-1) in the t-variable
        for (int row = 0; row < r; ++row)
            for (int col = 0; col < r; ++col)
                gens(row, (i - 1) * r + col) = substitute_z_power(sig.flag[i](row, col), m) * om;
    }
    LatticeClass n = lattice_from_generators(gens);
    MatK ninv = inverse(n.basis);
    MatQ red(k * r, r, mpq_class(0));
    for (int j = 0; j < k * r; ++j) {
        MatK col(r, 1);
        for (int row = 0; row < r; ++row) col(row, 0) = gens(row, j);
        MatK coords = ninv * col;
        for (int row = 0; row < r; ++row) red(j, row) = coords(row, 0).at_zero();
    }
    return UniformizerExtension{n, m, rank(red)};
}

} // namespace memb
