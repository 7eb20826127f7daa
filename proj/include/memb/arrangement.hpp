#pragma once

#include <functional>
#include <map>

#include "lattice.hpp"

namespace memb {

struct BaseField {
    enum class Kind { Q, Fp } kind = Kind::Q;
    long p = 0;
};

// The input family F = {f_1, ..., f_n} in K^r.
struct Arrangement {
    int r = 0, n = 0;
    BaseField field;
    MatK f; // r x n, columns are the f_i

    VecK vec(int i) const { return f.col(i); } // 0-based

    static Arrangement make(int r, int n, MatK cols, BaseField bf = {}) {
        Arrangement a{r, n, bf, std::move(cols)};
        if (a.f.rows != r || a.f.cols != n) fail(errc::bad_input, "arrangement shape mismatch");
        for (int j = 0; j < n; ++j) {
            bool nz = false;
            for (int i = 0; i < r; ++i) nz = nz || !a.f(i, j).is_zero();
            if (!nz) fail(errc::bad_input, "arrangement vector " + std::to_string(j + 1) + " is zero");
        }
        if (rank_over_K(a.f) < r) fail(errc::degenerate_span, "arrangement does not span K^r");
        return a;
    }

    static int rank_over_K(const MatK& m) {
        Mat<Scalar> c = m;
        return rank(c);
    }

    MatK columns(const std::vector<int>& idx) const {
        MatK m(r, (int)idx.size());
        for (size_t j = 0; j < idx.size(); ++j)
            for (int i = 0; i < r; ++i) m(i, (int)j) = f(i, idx[j]);
        return m;
    }
};

// limiting hyperplane configuration C_M, projectively normalised covectors in
// the canonical basis of M/zM
struct LimitConfiguration {
    int r = 0, n = 0;
    std::vector<std::vector<mpq_class>> covectors;
    std::vector<std::vector<int>> coincident; // groups of indices with equal covectors

    Mat<mpq_class> matrix() const {
        Mat<mpq_class> m(r, n, mpq_class(0));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < r; ++i) m(i, j) = covectors[j][i];
        return m;
    }
};

inline LimitConfiguration limit_configuration(const Arrangement& F, const LatticeClass& lam) {
    LimitConfiguration c;
    c.r = F.r;
    c.n = F.n;
    MatK inv = inverse(lam.basis);
    for (int j = 0; j < F.n; ++j) {
        MatK col(F.r, 1);
        for (int i = 0; i < F.r; ++i) col(i, 0) = F.f(i, j);
        MatK coords = inv * col;
        long a = -min_val(coords);
        std::vector<mpq_class> v(F.r);
        for (int i = 0; i < F.r; ++i) v[i] = (coords(i, 0) * zpow(a)).at_zero();
        for (auto& x : v)
            if (sgn(x) != 0) {
                mpq_class s = 1 / x;
                for (auto& y : v) y *= s;
                break;
            }
        c.covectors.push_back(std::move(v));
    }
    std::map<std::vector<mpq_class>, std::vector<int>> groups;
    for (int j = 0; j < F.n; ++j) groups[c.covectors[j]].push_back(j);
    for (auto& [_, g] : groups)
        if (g.size() > 1) c.coincident.push_back(g);
    return c;
}

// --------------------------------------------------------------------------
// stability notions

template <class F>
bool has_general_position_subset(const Mat<F>& cov, int r, int need) {
    int n = cov.cols;
    if (need > n) return false;
    std::vector<int> pick;
    // search for `need` columns, every r of which are independent
    std::function<bool(int)> go = [&](int start) -> bool {
        if ((int)pick.size() == need) return true;
        for (int c = start; c < n; ++c) {
            bool ok = true;
            if ((int)pick.size() >= r - 1) {
                std::vector<int> sub((int)pick.size() + 1);
                // test all r-subsets of pick+{c} that include c
                std::vector<int> comb(r - 1);
                std::function<bool(int, int)> chk = [&](int s, int d) -> bool {
                    if (d == r - 1) {
                        Mat<F> m(r, r);
                        for (int i = 0; i < r - 1; ++i)
                            for (int t = 0; t < r; ++t) m(t, i) = cov(t, pick[comb[i]]);
                        for (int t = 0; t < r; ++t) m(t, r - 1) = cov(t, c);
                        return rank(m) == r;
                    }
                    for (int i = s; i < (int)pick.size(); ++i) {
                        comb[d] = i;
                        if (!chk(i + 1, d + 1)) return false;
                    }
                    return true;
                };
                ok = chk(0, 0);
            }
            if (!ok) continue;
            pick.push_back(c);
            if (go(c + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return go(0);
}

inline bool is_stable_configuration(const LimitConfiguration& c) {
    return has_general_position_subset(c.matrix(), c.r, c.r + 1);
}

// dimension of the stabiliser Lie algebra {A : A^T v_i in span(v_i)};
// GIT stable iff only scalars survive
inline int stabilizer_dimension(const LimitConfiguration& c) {
    int r = c.r, n = c.n;
    int vars = r * r + n;
    Mat<mpq_class> sys(n * r, vars, mpq_class(0));
    for (int i = 0; i < n; ++i)
        for (int row = 0; row < r; ++row) {
            // (A^T v_i)_row - lambda_i (v_i)_row = 0, unknowns A then lambda
            for (int t = 0; t < r; ++t) sys(i * r + row, t * r + row) = c.covectors[i][t];
            sys(i * r + row, r * r + i) = -c.covectors[i][row];
        }
    return vars - rank(sys);
}

inline bool is_git_stable_configuration(const LimitConfiguration& c) {
    return stabilizer_dimension(c) == 1;
}

inline bool is_stable(const Arrangement& F, const LatticeClass& lam) {
    return is_stable_configuration(limit_configuration(F, lam));
}
inline bool is_git_stable(const Arrangement& F, const LatticeClass& lam) {
    return is_git_stable_configuration(limit_configuration(F, lam));
}

inline bool in_membrane(const Arrangement& F, const LatticeClass& lam) {
    auto c = limit_configuration(F, lam);
    return rank(c.matrix()) == F.r;
}

// --------------------------------------------------------------------------
// stable lattices

struct StableResult {
    std::vector<LatticeClass> classes;
    std::vector<std::vector<int>> degenerate_subsets; // (r+1)-subsets skipped, 0-based
    long val_min = 0, val_max = 0;                    // over all solve coefficients
};

inline StableResult stable_lattices(const Arrangement& F) {
    int r = F.r, n = F.n;
    StableResult out;
    std::set<LatticeClass> seen;
    std::vector<int> z(r + 1);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == r + 1) {
            // every r-subset of Z must be independent over K
            for (int skip = 0; skip <= r; ++skip) {
                std::vector<int> sub;
                for (int i = 0; i <= r; ++i)
                    if (i != skip) sub.push_back(z[i]);
                if (det(F.columns(sub)).is_zero()) {
                    out.degenerate_subsets.push_back(z);
                    return;
                }
            }
            std::vector<int> basis(z.begin() + 1, z.end());
            auto x = solve_linear(F.columns(basis), F.vec(z[0]));
            MatK gens(r, r);
            for (int j = 0; j < r; ++j) {
                long a = x[j].val();
                out.val_min = std::min(out.val_min, a);
                out.val_max = std::max(out.val_max, a);
                Scalar s = zpow(a);
                for (int i = 0; i < r; ++i) gens(i, j) = F.f(i, basis[j]) * s;
            }
            LatticeClass lam = lattice_from_generators(gens);
            if (seen.insert(lam).second) out.classes.push_back(lam);
            return;
        }
        for (int c = start; c + (r - d) < n; ++c) {
            z[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    if (out.classes.empty())
        fail(errc::no_stable_lattice, "every (r+1)-subset is degenerate");
    std::sort(out.classes.begin(), out.classes.end());
    return out;
}

inline long default_window(const StableResult& s) { return s.val_max - s.val_min + 1; }

// --------------------------------------------------------------------------
// Psi embedding: additive-norm values on f_1..f_n, first
// coordinate normalised to 0

inline std::vector<long> psi(const Arrangement& F, const LatticeClass& lam) {
    std::vector<long> w(F.n);
    MatK inv = inverse(lam.basis);
    for (int j = 0; j < F.n; ++j) {
        MatK col(F.r, 1);
        for (int i = 0; i < F.r; ++i) col(i, 0) = F.f(i, j);
        long a = -min_val(inv * col); // z^a f_j in M \ zM
        w[j] = -a;
    }
    long base = w[0];
    for (auto& x : w) x -= base;
    return w;
}

// --------------------------------------------------------------------------
// GIT-stable classes by windowed apartment enumeration

inline std::vector<std::vector<int>> independent_r_subsets(const Arrangement& F) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(F.r);
    std::function<void(int, int)> go = [&](int start, int d) {
        if (d == F.r) {
            if (!det(F.columns(t)).is_zero()) out.push_back(t);
            return;
        }
        for (int c = start; c + (F.r - d) <= F.n; ++c) {
            t[d] = c;
            go(c + 1, d + 1);
        }
    };
    go(0, 0);
    return out;
}

namespace detail {

inline std::set<LatticeClass> git_sweep(const Arrangement& F,
                                        const std::vector<std::vector<int>>& subsets,
                                        long window) {
    std::set<LatticeClass> classes;
    for (auto& t : subsets) {
        MatK cols = F.columns(t);
        std::vector<long> b(F.r, 0);
        std::function<void(int)> go = [&](int d) {
            if (d == F.r) {
                MatK gens = cols;
                for (int j = 0; j < F.r; ++j) {
                    Scalar s = zpow(b[j]);
                    for (int i = 0; i < F.r; ++i) gens(i, j) = cols(i, j) * s;
                }
                classes.insert(lattice_from_generators(gens));
                return;
            }
            for (long v = -2 * window; v <= 2 * window; ++v) {
                bool ok = true; // stay inside [-w,w]^r modulo the diagonal
                for (int t = 1; t < d; ++t)
                    ok = ok && std::abs(v - b[t]) <= 2 * window;
                if (!ok) continue;
                b[d] = v;
                go(d + 1);
            }
        };
        b[0] = 0;
        go(1); // b_1 = 0: classes only depend on b modulo the diagonal
    }
    return classes;
}

} // namespace detail

inline std::vector<LatticeClass> git_stable_classes(const Arrangement& F, long window) {
    if (window < 1) fail(errc::bad_input, "window must be >= 1");
    auto subsets = independent_r_subsets(F);
    auto keep_git = [&](const std::set<LatticeClass>& all) {
        std::vector<LatticeClass> g;
        for (auto& lam : all)
            if (is_git_stable(F, lam)) g.push_back(lam);
        return g;
    };
    auto g0 = keep_git(detail::git_sweep(F, subsets, window));
    auto g1 = keep_git(detail::git_sweep(F, subsets, window + 1));
    if (g0 != g1)
        fail(errc::window_unstable,
             "GIT-stable set changed when enlarging window " + std::to_string(window));
    return g0;
}

inline std::vector<LatticeClass> git_stable_classes(const Arrangement& F) {
    return git_stable_classes(F, default_window(stable_lattices(F)));
}

} // namespace memb
